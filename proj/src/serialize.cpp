#include "morseot/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace morseot {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Critical: return "critical";
    case NodeKind::Sampled: return "sampled";
    default: return "virtual";
  }
}

NodeKind kind_from(const std::string& s) {
  if (s == "critical") return NodeKind::Critical;
  if (s == "sampled") return NodeKind::Sampled;
  if (s == "virtual") return NodeKind::Virtual;
  throw std::runtime_error("unknown node kind: " + s);
}

}  // namespace

json morse_graph_to_json(const MorseGraph& g) {
  json nodes = json::array();
  for (auto& nd : g.nodes)
    nodes.push_back({{"id", nd.id}, {"x", nd.x}, {"y", nd.y},
                     {"kind", kind_name(nd.kind)}});
  json edges = json::array();
  for (auto& e : g.edges) {
    json pl = json::array();
    for (auto& [x, y] : e.polyline) pl.push_back({x, y});
    edges.push_back({{"a", e.a}, {"b", e.b}, {"polyline", pl}});
  }
  return {{"nodes", nodes},
          {"edges", edges},
          {"meta", {{"epsilon", g.epsilon}, {"source", g.source}}}};
}

MorseGraph morse_graph_from_json(const json& j) {
  MorseGraph g;
  for (auto& nd : j.at("nodes"))
    g.nodes.push_back({nd.at("id").get<int>(), nd.at("x").get<double>(),
                       nd.at("y").get<double>(),
                       kind_from(nd.at("kind").get<std::string>())});
  for (auto& e : j.at("edges")) {
    GraphEdge ge;
    ge.a = e.at("a").get<int>();
    ge.b = e.at("b").get<int>();
    for (auto& p : e.at("polyline"))
      ge.polyline.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (ge.polyline.size() < 2)
      throw std::runtime_error("edge polyline needs at least 2 points");
    double len = 0;
    for (size_t i = 1; i < ge.polyline.size(); ++i) {
      double dx = ge.polyline[i].first - ge.polyline[i - 1].first;
      double dy = ge.polyline[i].second - ge.polyline[i - 1].second;
      len += std::sqrt(dx * dx + dy * dy);
    }
    ge.arc_length = len;
    g.edges.push_back(std::move(ge));
  }
  if (j.contains("meta")) {
    auto& m = j.at("meta");
    if (m.contains("epsilon")) g.epsilon = m.at("epsilon").get<double>();
    if (m.contains("source")) g.source = m.at("source").get<std::string>();
  }
  return g;
}

json network_to_json(const MeasureNetwork& g) {
  json p = json::array(), W = json::array(), F = json::array(), kinds = json::array();
  for (int i = 0; i < g.n(); ++i) p.push_back(g.p[i]);
  for (int i = 0; i < g.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < g.n(); ++j) row.push_back(g.W(i, j));
    W.push_back(row);
  }
  for (int i = 0; i < g.n(); ++i) F.push_back({g.F(i, 0), g.F(i, 1)});
  for (auto k : g.kinds) kinds.push_back(kind_name(k));
  return {{"p", p}, {"W", W}, {"F", F}, {"kinds", kinds}};
}

MeasureNetwork network_from_json(const json& j) {
  MeasureNetwork g;
  auto& p = j.at("p");
  int n = (int)p.size();
  g.p.resize(n);
  for (int i = 0; i < n; ++i) g.p[i] = p[i].get<double>();
  g.W.resize(n, n);
  auto& W = j.at("W");
  if ((int)W.size() != n) throw std::runtime_error("W row count mismatch");
  for (int i = 0; i < n; ++i) {
    if ((int)W[i].size() != n) throw std::runtime_error("W column count mismatch");
    for (int k = 0; k < n; ++k) g.W(i, k) = W[i][k].get<double>();
  }
  g.F.resize(n, 2);
  auto& F = j.at("F");
  if ((int)F.size() != n) throw std::runtime_error("F row count mismatch");
  for (int i = 0; i < n; ++i) {
    g.F(i, 0) = F[i][0].get<double>();
    g.F(i, 1) = F[i][1].get<double>();
  }
  if (j.contains("kinds")) {
    for (auto& k : j.at("kinds"))
      g.kinds.push_back(kind_from(k.get<std::string>()));
  } else {
    g.kinds.assign(n, NodeKind::Critical);
  }
  return g;
}

json distance_result_to_json(const DistanceResult& r, bool include_coupling) {
  json out = {{"distance", r.distance},
              {"objective", r.objective},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"restart_best", r.restart_best},
              {"mass", r.coupling.mass},
              {"kind", r.coupling.kind == CouplingKind::Full ? "full" : "partial"}};
  if (include_coupling) {
    json m = json::array();
    for (int i = 0; i < r.coupling.matrix.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < r.coupling.matrix.cols(); ++j)
        row.push_back(r.coupling.matrix(i, j));
      m.push_back(row);
    }
    out["coupling"] = m;
  }
  return out;
}

json classification_report_to_json(const ClassificationReport& r) {
  json f1 = json::object();
  for (auto& [cls, v] : r.f1)
    f1[cls] = std::isnan(v) ? json(nullptr) : json(v);
  json conf = json::array();
  for (int i = 0; i < r.confusion.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < r.confusion.cols(); ++j) row.push_back(r.confusion(i, j));
    conf.push_back(row);
  }
  return {{"accuracy", r.accuracy}, {"f1", f1},     {"confusion", conf},
          {"classes", r.classes},   {"k", r.k},     {"train_count", r.train_count},
          {"test_count", r.test_count}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json read_json_file(const std::string& path) {
  return json::parse(read_text_file(path));
}

std::string distance_matrix_to_csv(const DistanceMatrix& d) {
  std::ostringstream out;
  out << "label";
  for (auto& l : d.labels) out << "," << l;
  out << "\n";
  for (int i = 0; i < d.values.rows(); ++i) {
    out << d.labels[i];
    for (int j = 0; j < d.values.cols(); ++j)
      out << "," << format_double(d.values(i, j));
    out << "\n";
  }
  return out.str();
}

namespace {
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}
}  // namespace

DistanceMatrix distance_matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty matrix CSV");
  auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "label")
    throw std::runtime_error("matrix CSV must start with a 'label' header row");
  DistanceMatrix d;
  d.labels.assign(header.begin() + 1, header.end());
  int n = (int)d.labels.size();
  d.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("matrix CSV has fewer rows than labels");
    auto toks = split_csv_line(line);
    if ((int)toks.size() != n + 1)
      throw std::runtime_error("matrix CSV row has wrong column count");
    for (int j = 0; j < n; ++j) d.values(i, j) = std::stod(toks[j + 1]);
  }
  return d;
}

std::string persistence_graph_to_csv(const std::vector<std::pair<double, int>>& pg) {
  std::ostringstream out;
  out << "epsilon,n_maxima\n";
  for (auto& [eps, n] : pg) out << format_double(eps) << "," << n << "\n";
  return out.str();
}

std::string coupling_to_csv(const Coupling& c) {
  std::ostringstream out;
  for (int i = 0; i < c.matrix.rows(); ++i) {
    for (int j = 0; j < c.matrix.cols(); ++j)
      out << (j ? "," : "") << format_double(c.matrix(i, j));
    out << "\n";
  }
  return out.str();
}

std::string trace_to_csv(const std::vector<double>& trace) {
  std::ostringstream out;
  out << "iteration,objective\n";
  for (size_t i = 0; i < trace.size(); ++i)
    out << i << "," << format_double(trace[i]) << "\n";
  return out.str();
}

std::string sweep_to_csv(const std::vector<std::tuple<double, double, double>>& sweep) {
  std::ostringstream out;
  out << "m,max_matched_distance,distance\n";
  for (auto& [m, mmd, dist] : sweep)
    out << format_double(m) << "," << format_double(mmd) << ","
        << format_double(dist) << "\n";
  return out.str();
}

std::string mds_to_csv(const std::vector<std::string>& labels,
                       const Eigen::MatrixXd& points) {
  std::ostringstream out;
  out << "id";
  for (int k = 0; k < points.cols(); ++k) out << ",dim" << k;
  out << "\n";
  for (int i = 0; i < points.rows(); ++i) {
    out << labels[i];
    for (int k = 0; k < points.cols(); ++k)
      out << "," << format_double(points(i, k));
    out << "\n";
  }
  return out.str();
}

std::string labels_to_csv(const std::vector<std::string>& ids,
                          const std::vector<std::string>& classes) {
  std::ostringstream out;
  out << "id,class\n";
  for (size_t i = 0; i < ids.size(); ++i)
    out << ids[i] << "," << classes[i] << "\n";
  return out.str();
}

std::pair<std::vector<std::string>, std::vector<std::string>> labels_from_csv(
    const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> ids, classes;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto toks = split_csv_line(line);
    if (first && toks.size() >= 2 && toks[0] == "id") {
      first = false;
      continue;
    }
    first = false;
    if (toks.size() != 2) throw std::runtime_error("labels CSV needs id,class rows");
    ids.push_back(toks[0]);
    classes.push_back(toks[1]);
  }
  return {ids, classes};
}

std::string config_hash(const json& j) {
  std::string dump = j.dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace morseot
