#include "lsr/io.hpp"

#include "lsr/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lsr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  if (sep == ' ') {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
  } else {
    std::string tok;
    std::istringstream ss(line);
    while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

class CloudBuilder {
 public:
  void add(const std::vector<double>& row, long line) {
    if (row.size() != 2 && row.size() != 3)
      throw ParseError("expected 2 or 3 coordinates, got " + std::to_string(row.size()), line);
    if (dim_ == 0) dim_ = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != dim_)
      throw ParseError("dimension mismatch: expected " + std::to_string(dim_) +
                           " coordinates, got " + std::to_string(row.size()),
                       line);
    coords_.insert(coords_.end(), row.begin(), row.end());
  }

  PointCloud build() const {
    const int dim = dim_ == 0 ? 2 : dim_;
    const Eigen::Index n = static_cast<Eigen::Index>(coords_.size()) / dim;
    return PointCloud(Eigen::Map<const Eigen::MatrixXd>(coords_.data(), dim, n));
  }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

PointCloud parse_delimited(std::istream& in, char sep, bool allow_header) {
  CloudBuilder b;
  std::string line;
  long lineno = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto toks = split(t, sep);
    std::vector<double> row(toks.size());
    bool numeric = true;
    for (std::size_t i = 0; i < toks.size(); ++i) numeric = numeric && parse_number(toks[i], row[i]);
    if (!numeric) {
      if (allow_header && !seen_record) {
        seen_record = true;
        continue;
      }
      throw ParseError("malformed record '" + t + "'", lineno);
    }
    seen_record = true;
    b.add(row, lineno);
  }
  return b.build();
}

PointCloud parse_ply(std::istream& in) {
  struct Element {
    std::string name;
    long count = 0;
    std::vector<std::string> props;
  };
  std::vector<Element> elements;
  std::string line;
  long lineno = 0;

  auto next = [&](std::string& out) {
    if (!std::getline(in, out)) return false;
    ++lineno;
    out = trim(out);
    return true;
  };

  if (!next(line) || line != "ply") throw ParseError("missing 'ply' magic", lineno ? lineno : 1);
  bool ended = false;
  while (next(line)) {
    const auto toks = split(line, ' ');
    if (toks.empty() || toks[0] == "comment" || toks[0] == "obj_info") continue;
    if (toks[0] == "format") {
      if (toks.size() < 2 || toks[1] != "ascii")
        throw ParseError("only ascii PLY is supported", lineno);
    } else if (toks[0] == "element") {
      if (toks.size() != 3) throw ParseError("malformed element line", lineno);
      double n = 0;
      if (!parse_number(toks[2], n) || n < 0) throw ParseError("bad element count", lineno);
      elements.push_back({toks[1], static_cast<long>(n), {}});
    } else if (toks[0] == "property") {
      if (elements.empty() || toks.size() < 3) throw ParseError("malformed property line", lineno);
      elements.back().props.push_back(toks.back());
    } else if (toks[0] == "end_header") {
      ended = true;
      break;
    } else {
      throw ParseError("unknown header keyword '" + toks[0] + "'", lineno);
    }
  }
  if (!ended) throw ParseError("missing end_header", lineno);

  CloudBuilder b;
  bool have_vertices = false;
  for (const auto& el : elements) {
    const bool is_vertex = el.name == "vertex";
    std::vector<int> axes;
    if (is_vertex) {
      have_vertices = true;
      for (const char* ax : {"x", "y", "z"}) {
        const auto it = std::find(el.props.begin(), el.props.end(), ax);
        if (it != el.props.end()) axes.push_back(static_cast<int>(it - el.props.begin()));
      }
      if (axes.size() < 2) throw ParseError("vertex element lacks x/y properties", lineno);
    }
    for (long k = 0; k < el.count; ++k) {
      if (!next(line)) throw ParseError("unexpected end of file in '" + el.name + "'", lineno + 1);
      if (!is_vertex) continue;
      const auto toks = split(line, ' ');
      if (toks.size() != el.props.size())
        throw ParseError("expected " + std::to_string(el.props.size()) + " values", lineno);
      std::vector<double> row;
      for (int ax : axes) {
        double v = 0;
        if (!parse_number(toks[static_cast<std::size_t>(ax)], v))
          throw ParseError("malformed number '" + toks[static_cast<std::size_t>(ax)] + "'", lineno);
        row.push_back(v);
      }
      b.add(row, lineno);
    }
  }
  if (!have_vertices) throw ParseError("no vertex element");
  return b.build();
}

}  // namespace

CloudFormat parse_cloud_format(const std::string& name) {
  if (name == "xyz") return CloudFormat::xyz;
  if (name == "csv") return CloudFormat::csv;
  if (name == "ply" || name == "ply_ascii") return CloudFormat::ply_ascii;
  throw std::invalid_argument("unknown point cloud format '" + name + "'");
}

CloudFormat cloud_format_for(const std::string& path) {
  const auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == "csv") return CloudFormat::csv;
  if (ext == "ply") return CloudFormat::ply_ascii;
  return CloudFormat::xyz;
}

PointCloud parse_point_cloud(std::istream& in, CloudFormat format) {
  PointCloud cloud;
  switch (format) {
    case CloudFormat::xyz: cloud = parse_delimited(in, ' ', false); break;
    case CloudFormat::csv: cloud = parse_delimited(in, ',', true); break;
    case CloudFormat::ply_ascii: cloud = parse_ply(in); break;
    default: throw std::invalid_argument("bad cloud format");
  }
  if (cloud.empty()) throw ParseError("no points found");
  return cloud;
}

PointCloud read_point_cloud(const std::string& path, CloudFormat format) {
  auto in = open_in(path);
  return parse_point_cloud(in, format);
}

PointCloud read_point_cloud(const std::string& path) {
  return read_point_cloud(path, cloud_format_for(path));
}

void write_point_cloud(std::ostream& out, const PointCloud& cloud, CloudFormat format) {
  const int dim = cloud.dim();
  if (format == CloudFormat::csv) out << (dim == 2 ? "x,y\n" : "x,y,z\n");
  if (format == CloudFormat::ply_ascii) {
    out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size() << "\n";
    for (int a = 0; a < dim; ++a) out << "property double " << "xyz"[a] << "\n";
    out << "end_header\n";
  }
  const char sep = format == CloudFormat::csv ? ',' : ' ';
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    for (int a = 0; a < dim; ++a) {
      if (a) out << sep;
      out << fmt(cloud.matrix()(a, i));
    }
    out << "\n";
  }
}

void write_point_cloud(const std::string& path, const PointCloud& cloud, CloudFormat format) {
  auto out = open_out(path);
  write_point_cloud(out, cloud, format);
  finish(out, path);
}

void write_field(std::ostream& out, const ScalarField& field, const std::string& name) {
  const Grid& g = field.grid();
  out << "# vtk DataFile Version 3.0\n"
      << "lsr field\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << g.dim(0) << " " << g.dim(1) << " " << (g.axes() == 3 ? g.dim(2) : 1)
      << "\n"
      << "ORIGIN 0 0 0\n"
      << "SPACING 1 1 1\n"
      << "POINT_DATA " << g.size() << "\n"
      << "SCALARS " << name << " double 1\n"
      << "LOOKUP_TABLE default\n";
  for (Eigen::Index i = 0; i < field.size(); ++i) out << fmt(field[i]) << "\n";
}

void write_field(const std::string& path, const ScalarField& field, const std::string& name) {
  auto out = open_out(path);
  write_field(out, field, name);
  finish(out, path);
}

void write_field(const std::string& path, const Field<bool>& mask, const std::string& name) {
  write_field(path, ScalarField(mask.grid(), mask.values().cast<double>()), name);
}

ScalarField read_field(std::istream& in) {
  std::string line;
  long lineno = 0;
  auto next = [&]() {
    if (!std::getline(in, line)) throw ParseError("unexpected end of file", lineno + 1);
    ++lineno;
    line = trim(line);
  };
  next();
  if (line.rfind("# vtk DataFile", 0) != 0) throw ParseError("not a legacy VTK file", lineno);
  next();  // title
  next();
  if (line != "ASCII") throw ParseError("only ASCII VTK is supported", lineno);

  int dims[3] = {0, 0, 0};
  long npoints = -1;
  bool data = false;
  while (!data) {
    next();
    const auto toks = split(line, ' ');
    if (toks.empty()) continue;
    if (toks[0] == "DATASET") {
      if (toks.size() != 2 || toks[1] != "STRUCTURED_POINTS")
        throw ParseError("expected STRUCTURED_POINTS", lineno);
    } else if (toks[0] == "DIMENSIONS") {
      if (toks.size() != 4) throw ParseError("malformed DIMENSIONS", lineno);
      for (int a = 0; a < 3; ++a) {
        double v = 0;
        if (!parse_number(toks[static_cast<std::size_t>(a + 1)], v) || v < 1)
          throw ParseError("malformed DIMENSIONS", lineno);
        dims[a] = static_cast<int>(v);
      }
    } else if (toks[0] == "POINT_DATA") {
      double v = 0;
      if (toks.size() != 2 || !parse_number(toks[1], v)) throw ParseError("malformed POINT_DATA", lineno);
      npoints = static_cast<long>(v);
    } else if (toks[0] == "LOOKUP_TABLE") {
      data = true;
    } else if (toks[0] != "ORIGIN" && toks[0] != "SPACING" && toks[0] != "SCALARS") {
      throw ParseError("unknown keyword '" + toks[0] + "'", lineno);
    }
  }
  if (dims[0] == 0) throw ParseError("missing DIMENSIONS", lineno);
  const Grid g = dims[2] == 1 ? Grid(dims[0], dims[1]) : Grid(dims[0], dims[1], dims[2]);
  if (npoints != g.size()) throw ParseError("POINT_DATA does not match DIMENSIONS", lineno);

  ScalarField f(g);
  Eigen::Index i = 0;
  while (i < g.size() && std::getline(in, line)) {
    ++lineno;
    for (const auto& tok : split(line, ' ')) {
      if (i == g.size()) throw ParseError("too many values", lineno);
      double v = 0;
      if (!parse_number(tok, v)) throw ParseError("malformed value '" + tok + "'", lineno);
      f[i++] = v;
    }
  }
  if (i != g.size()) throw ParseError("expected " + std::to_string(g.size()) + " values", lineno);
  return f;
}

ScalarField read_field(const std::string& path) {
  auto in = open_in(path);
  return read_field(in);
}

void write_obj(std::ostream& out, const ZeroSet& z) {
  for (const auto& v : z.vertices) out << "v " << fmt(v.x()) << " " << fmt(v.y()) << " " << fmt(v.z()) << "\n";
  for (const auto& s : z.segments) out << "l " << s[0] + 1 << " " << s[1] + 1 << "\n";
  for (const auto& t : z.triangles) out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
}

void write_obj(const std::string& path, const ZeroSet& z) {
  auto out = open_out(path);
  write_obj(out, z);
  finish(out, path);
}

void write_history_csv(const std::string& path, const std::vector<double>& history) {
  auto out = open_out(path);
  out << "iteration,energy\n";
  for (std::size_t i = 0; i < history.size(); ++i) out << i + 1 << "," << fmt(history[i]) << "\n";
  finish(out, path);
}

void write_report_json(std::ostream& out, const RunReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["wall_seconds"] = r.wall_seconds;
  j["energy_history"] = r.energy_history;
  j["failure"] = r.failure;
  if (r.hausdorff_to_cloud >= 0.0)
    j["hausdorff_to_cloud"] = r.hausdorff_to_cloud;
  else
    j["hausdorff_to_cloud"] = nullptr;
  if (r.phi.size() > 0) {
    std::vector<int> dims;
    for (int a = 0; a < r.phi.grid().axes(); ++a) dims.push_back(r.phi.grid().dim(a));
    j["grid"] = dims;
  }
  out << j.dump(2) << "\n";
}

void write_report_json(const std::string& path, const RunReport& report) {
  auto out = open_out(path);
  write_report_json(out, report);
  finish(out, path);
}

}  // namespace lsr
