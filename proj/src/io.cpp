#include "trilasso/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace trilasso::io {

namespace {

std::ifstream open_in(const Path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const Path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Strict full-string parse.
std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "NaN" || cell == "nan"; }

Index parse_index(const std::string& tok, const std::string& source, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(source, line, "expected a vertex index, got '" + tok + "'");
  }
  if (used != tok.size() || v < 0) throw ParseError(source, line, "expected a vertex index, got '" + tok + "'");
  return static_cast<Index>(v);
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "NaN";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Dataset read_data_csv(std::istream& in, const std::string& source, const std::optional<std::string>& response_column) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split_csv(line);
      break;
    }
  }
  if (header.empty()) throw ParseError(source, std::max<std::size_t>(lineno, 1), "missing header row");
  std::optional<std::size_t> ycol;
  if (response_column) {
    const auto it = std::find(header.begin(), header.end(), *response_column);
    if (it == header.end()) throw ParseError(source, lineno, "no column named '" + *response_column + "'");
    ycol = static_cast<std::size_t>(it - header.begin());
  }
  const std::size_t width = header.size();
  const std::size_t d = width - (ycol ? 1 : 0);
  if (d == 0) throw ParseError(source, lineno, "no feature columns");

  std::vector<std::vector<double>> rows;
  std::vector<double> ys;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != width)
      throw ParseError(source, lineno, "expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(d);
    for (std::size_t c = 0; c < width; ++c) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!is_missing(cells[c])) {
        const auto parsed = parse_double(cells[c]);
        if (!parsed || !std::isfinite(*parsed))
          throw ParseError(source, lineno, "column '" + header[c] + "': not a number: '" + cells[c] + "'");
        v = *parsed;
      }
      if (ycol && c == *ycol) {
        if (std::isnan(v)) throw ParseError(source, lineno, "missing response value");
        ys.push_back(v);
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source, lineno, "no data rows");
  Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(d));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) a(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  std::optional<Vector> y;
  if (ycol) y = Eigen::Map<Vector>(ys.data(), static_cast<Index>(ys.size()));
  return make_dataset(std::move(a), std::move(y));
}

Dataset read_data_csv(const Path& path, const std::optional<std::string>& response_column) {
  auto in = open_in(path);
  return read_data_csv(in, path.string(), response_column);
}

void write_data_csv(const Path& path, const Dataset& data) {
  auto out = open_out(path);
  const Index d = data.cols();
  for (Index c = 0; c < d; ++c) out << (c ? "," : "") << "x" << c + 1;
  if (data.responses) out << ",y";
  out << '\n';
  for (Index r = 0; r < data.rows(); ++r) {
    for (Index c = 0; c < d; ++c) {
      if (c) out << ',';
      const bool missing = data.has_missing() && data.missing(r, c);
      if (!missing) out << format_number(data.instances(r, c));
    }
    if (data.responses) out << ',' << format_number((*data.responses)(r));
    out << '\n';
  }
}

Graph read_graph(std::istream& in, const std::string& source, std::optional<Index> num_vertices) {
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::optional<Index> declared;
  bool has_tq = false, lacks_tq = false;
  Index max_index = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream cs(line.substr(hash + 1));
      std::string key;
      Index n = 0;
      if (cs >> key && key == "vertices") {
        if (!(cs >> n) || n < 0) throw ParseError(source, lineno, "bad vertex-count line");
        declared = n;
      }
      line.resize(hash);
    }
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2 && tok.size() != 3 && tok.size() != 5)
      throw ParseError(source, lineno, "expected 'i j [w [t q]]', found " + std::to_string(tok.size()) + " fields");
    Edge e;
    e.i = parse_index(tok[0], source, lineno);
    e.j = parse_index(tok[1], source, lineno);
    if (e.i == e.j) throw ParseError(source, lineno, "self-loop on vertex " + tok[0]);
    if (tok.size() >= 3) {
      const auto w = parse_double(tok[2]);
      if (!w || !std::isfinite(*w) || *w < 0) throw ParseError(source, lineno, "bad weight '" + tok[2] + "'");
      e.w = *w;
    }
    if (tok.size() == 5) {
      e.t = static_cast<int>(parse_index(tok[3], source, lineno));
      e.q = static_cast<int>(parse_index(tok[4], source, lineno));
      if (e.q < 1) throw ParseError(source, lineno, "multiplicity must be positive");
      has_tq = true;
    } else {
      lacks_tq = true;
    }
    max_index = std::max({max_index, e.i, e.j});
    edges.push_back(e);
    edge_lines.push_back(lineno);
  }
  const Index n = num_vertices ? *num_vertices : declared ? *declared : max_index + 1;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (std::max(edges[k].i, edges[k].j) >= n)
      throw ParseError(source, edge_lines[k], "vertex index out of range for " + std::to_string(n) + " vertices");
  if (has_tq && lacks_tq) throw ParseError(source, lineno, "mixed rows with and without t q columns");
  Graph graph(n, std::move(edges));
  return has_tq ? graph : count_triangles(std::move(graph));
}

Graph read_graph(const Path& path, std::optional<Index> num_vertices) {
  auto in = open_in(path);
  return read_graph(in, path.string(), num_vertices);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << "# vertices " << graph.num_vertices() << '\n';
  out << "# i j w t q\n";
  for (const Edge& e : graph.edges())
    out << e.i << ' ' << e.j << ' ' << format_number(e.w) << ' ' << e.t << ' ' << e.q << '\n';
}

void write_graph(const Path& path, const Graph& graph) {
  auto out = open_out(path);
  write_graph(out, graph);
}

Matrix read_matrix_csv(const Path& path) {
  auto in = open_in(path);
  const std::string source = path.string();
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& c : cells) {
      if (c == "NaN") {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      const auto v = parse_double(c);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ParseError(source, lineno, "non-numeric cell");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError(source, lineno, "ragged row");
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  return m;
}

void write_matrix_csv(const Path& path, const Matrix& m, const std::string& column_prefix) {
  auto out = open_out(path);
  for (Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << column_prefix << c + 1;
  out << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_number(m(r, c));
    out << '\n';
  }
}

Communities read_communities(const Path& path) {
  auto in = open_in(path);
  Communities out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<Index> members;
    for (std::string t; ss >> t;) members.push_back(parse_index(t, path.string(), lineno));
    if (!members.empty()) out.push_back(std::move(members));
  }
  return out;
}

void write_communities(const Path& path, const Communities& communities) {
  auto out = open_out(path);
  for (const auto& c : communities) {
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << c[k];
    out << '\n';
  }
}

void write_cluster_path(const Path& path, const ClusterPath& cluster_path) {
  auto out = open_out(path);
  const Index d = cluster_path.points.empty() ? 0 : cluster_path.points.front().x.cols();
  out << "alpha,vertex,label";
  for (Index c = 0; c < d; ++c) out << ",x" << c + 1;
  out << '\n';
  for (const auto& p : cluster_path.points) {
    for (Index v = 0; v < p.x.rows(); ++v) {
      out << format_number(p.alpha) << ',' << v << ',' << p.assignment.labels[v];
      for (Index c = 0; c < d; ++c) out << ',' << format_number(p.x(v, c));
      out << '\n';
    }
  }
}

ClusterPath read_cluster_path(const Path& path) {
  const Matrix table = read_matrix_csv(path);
  ClusterPath out;
  const Index d = table.cols() - 3;
  if (table.rows() > 0 && d < 1) throw Error(path.string() + ": cluster path needs alpha, vertex, label and x columns");
  for (Index r = 0; r < table.rows();) {
    const double alpha = table(r, 0);
    Index end = r;
    while (end < table.rows() && table(end, 0) == alpha) ++end;
    PathPoint p;
    p.alpha = alpha;
    p.x = table.block(r, 3, end - r, d);
    for (Index k = r; k < end; ++k) p.assignment.labels.push_back(static_cast<int>(table(k, 2)));
    p.assignment.num_clusters = *std::max_element(p.assignment.labels.begin(), p.assignment.labels.end()) + 1;
    out.points.push_back(std::move(p));
    r = end;
  }
  return out;
}

Json to_json(const ClusterAssignment& assignment) {
  Json j;
  j["num_clusters"] = assignment.num_clusters;
  j["labels"] = assignment.labels;
  std::vector<int> fused(assignment.fused_edges.begin(), assignment.fused_edges.end());
  j["fused_edges"] = fused;
  return j;
}

ClusterAssignment assignment_from_json(const Json& j) {
  ClusterAssignment a;
  a.num_clusters = j.at("num_clusters").get<int>();
  a.labels = j.at("labels").get<std::vector<int>>();
  for (int f : j.at("fused_edges").get<std::vector<int>>()) a.fused_edges.push_back(f != 0);
  return a;
}

namespace {

// JSON has no NaN; emit null instead.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const Solution& solution) {
  Json j;
  j["method"] = to_string(solution.method);
  j["objective"] = number(solution.objective);
  j["iterations"] = solution.iterations;
  j["converged"] = solution.converged;
  j["stop_reason"] = solution.stop_reason;
  j["primal_residual"] = number(solution.primal_residual);
  j["dual_residual"] = number(solution.dual_residual);
  j["duality_gap"] = number(solution.duality_gap);
  j["num_clusters"] = solution.assignment.num_clusters;
  Json trace = Json::array();
  for (double v : solution.monitor_trace) trace.push_back(number(v));
  j["monitor_trace"] = std::move(trace);
  Json dual_trace = Json::array();
  for (double v : solution.objective_trace) dual_trace.push_back(number(v));
  j["dual_objective_trace"] = std::move(dual_trace);
  return j;
}

void write_json(const Path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

Json read_json(const Path& path) {
  auto in = open_in(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace trilasso::io
