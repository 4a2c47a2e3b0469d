#include "assouad/cloud_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "assouad/error.hpp"

namespace assouad {
namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Io, source + ":" + std::to_string(line) + ": " + what);
}

std::string header_value(const std::string& header, const std::string& key) {
  const std::string needle = key + "=";
  const auto pos = header.find(needle);
  if (pos == std::string::npos) return {};
  const auto start = pos + needle.size();
  const auto end = header.find_first_of(" \t\r", start);
  return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

PointCloud read_cloud_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  Real resolution = 0;
  bool have_header = false;
  std::vector<Real> coords;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!have_header) {
      if (line.rfind('#', 0) != 0) fail(source, line_no, "expected header '# dim=<d> resolution=<delta>'");
      const std::string d = header_value(line, "dim");
      const std::string r = header_value(line, "resolution");
      if (d.empty() || r.empty()) fail(source, line_no, "header must name dim and resolution");
      try {
        dim = std::stoul(d);
      } catch (const std::exception&) {
        fail(source, line_no, "bad dim '" + d + "'");
      }
      if (dim == 0) fail(source, line_no, "dim must be positive");
      try {
        resolution = parse_real(r);
      } catch (const Error&) {
        fail(source, line_no, "bad resolution '" + r + "'");
      }
      have_header = true;
      continue;
    }
    if (line.rfind('#', 0) == 0) continue;

    std::size_t fields = 0;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        coords.push_back(parse_real(cell));
      } catch (const Error&) {
        fail(source, line_no, "bad coordinate '" + cell + "'");
      }
      ++fields;
    }
    if (fields != dim) {
      fail(source, line_no, "row has " + std::to_string(fields) + " coordinates but header says dim=" +
                                std::to_string(dim));
    }
  }
  if (!have_header) fail(source, line_no, "missing header");
  if (coords.empty()) fail(source, line_no, "no points");
  return PointCloud(dim, std::move(coords), resolution);
}

PointCloud read_cloud_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_cloud_csv(in, path.string());
}

void write_cloud_csv(std::ostream& out, const PointCloud& f) {
  out << "# dim=" << f.dim() << " resolution=" << format_sig12(f.resolution()) << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto p = f.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << format_sig12(p[k]);
    }
    out << '\n';
  }
}

void write_cloud_csv(const std::filesystem::path& path, const PointCloud& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_cloud_csv(out, f);
}

}  // namespace assouad
