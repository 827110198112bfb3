// Command-line front end: dataset generation, Morse graph extraction,
// OT-type distance computation, batch matrices, partial-mass tuning,
// MDS embedding, kNN classification, and Euclidean baselines.
//
// Exit codes: 0 success, 1 computation error, 2 usage/validation error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <set>

#include "morseot/analysis.hpp"
#include "morseot/field.hpp"
#include "morseot/morse.hpp"
#include "morseot/network.hpp"
#include "morseot/ot.hpp"
#include "morseot/serialize.hpp"
#include "morseot/svg.hpp"

using namespace morseot;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputSpec {
  std::string path;
  std::string label;
  std::string cls;
};

// Effective configuration: config-file values overridden by explicit flags.
struct Config {
  double epsilon = 0.07;
  double spacing = 0.05;
  std::string format = "plain-text";
  std::string kind = "fgw";
  std::string colormap = "position-rgb";
  bool largest_component = false;
  bool allow_missing = false;
  int jobs = 1;
  SolverConfig solver;
  std::vector<InputSpec> inputs;
  std::string output_dir = ".";
  std::vector<double> m_grid;
  int dim = 2;
  int k = 3;
  bool auto_k = false;
  double train_fraction = 0.8;
  int raster_rows = 0, raster_cols = 0;

  json to_json() const {
    json inputs_j = json::array();
    for (auto& in : inputs)
      inputs_j.push_back({{"path", in.path}, {"label", in.label}, {"class", in.cls}});
    return {{"epsilon", epsilon},
            {"spacing", spacing},
            {"format", format},
            {"kind", kind},
            {"colormap", colormap},
            {"largest_component", largest_component},
            {"allow_missing", allow_missing},
            {"jobs", jobs},
            {"solver",
             {{"q", solver.q},
              {"alpha", solver.alpha},
              {"m", solver.m},
              {"max_iterations", solver.max_iterations},
              {"tolerance", solver.tolerance},
              {"restarts", solver.restarts},
              {"seed", solver.seed}}},
            {"inputs", inputs_j},
            {"output_dir", output_dir},
            {"m_grid", m_grid},
            {"dim", dim},
            {"k", k},
            {"train_fraction", train_fraction},
            {"raster_rows", raster_rows},
            {"raster_cols", raster_cols}};
  }
};

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw UsageError("unknown config key \"" + it.key() + "\" in " + where);
}

Config load_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  json j = read_json_file(path);
  reject_unknown_keys(j, {"epsilon", "spacing", "format", "kind", "colormap",
                          "largest_component", "allow_missing", "jobs", "solver",
                          "inputs", "output_dir", "m_grid", "dim", "k",
                          "train_fraction", "raster_rows", "raster_cols"},
                      "config");
  if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
  if (j.contains("spacing")) c.spacing = j["spacing"].get<double>();
  if (j.contains("format")) c.format = j["format"].get<std::string>();
  if (j.contains("kind")) c.kind = j["kind"].get<std::string>();
  if (j.contains("colormap")) c.colormap = j["colormap"].get<std::string>();
  if (j.contains("largest_component"))
    c.largest_component = j["largest_component"].get<bool>();
  if (j.contains("allow_missing")) c.allow_missing = j["allow_missing"].get<bool>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  if (j.contains("solver")) {
    auto& s = j["solver"];
    reject_unknown_keys(s, {"q", "alpha", "m", "max_iterations", "tolerance",
                            "restarts", "seed"},
                        "config.solver");
    if (s.contains("q")) c.solver.q = s["q"].get<double>();
    if (s.contains("alpha")) c.solver.alpha = s["alpha"].get<double>();
    if (s.contains("m")) c.solver.m = s["m"].get<double>();
    if (s.contains("max_iterations"))
      c.solver.max_iterations = s["max_iterations"].get<int>();
    if (s.contains("tolerance")) c.solver.tolerance = s["tolerance"].get<double>();
    if (s.contains("restarts")) c.solver.restarts = s["restarts"].get<int>();
    if (s.contains("seed")) c.solver.seed = s["seed"].get<uint64_t>();
  }
  if (j.contains("inputs")) {
    for (auto& in : j["inputs"]) {
      InputSpec spec;
      if (in.is_string()) {
        spec.path = in.get<std::string>();
      } else {
        reject_unknown_keys(in, {"path", "label", "class"}, "config.inputs[]");
        spec.path = in.at("path").get<std::string>();
        if (in.contains("label")) spec.label = in["label"].get<std::string>();
        if (in.contains("class")) spec.cls = in["class"].get<std::string>();
      }
      if (spec.label.empty()) spec.label = fs::path(spec.path).stem().string();
      c.inputs.push_back(std::move(spec));
    }
  }
  if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("m_grid")) c.m_grid = j["m_grid"].get<std::vector<double>>();
  if (j.contains("dim")) c.dim = j["dim"].get<int>();
  if (j.contains("k")) c.k = j["k"].get<int>();
  if (j.contains("train_fraction"))
    c.train_fraction = j["train_fraction"].get<double>();
  if (j.contains("raster_rows")) c.raster_rows = j["raster_rows"].get<int>();
  if (j.contains("raster_cols")) c.raster_cols = j["raster_cols"].get<int>();
  return c;
}

FieldFormat parse_format(const std::string& s) {
  if (s == "plain-text" || s == "txt") return FieldFormat::PlainText;
  if (s == "csv") return FieldFormat::Csv;
  throw UsageError("unknown field format: " + s);
}

Colormap parse_colormap(const std::string& s) {
  if (s == "position-rgb") return Colormap::PositionRgb;
  if (s == "position-hue") return Colormap::PositionHue;
  throw UsageError("unknown colormap: " + s);
}

void validate_common(const Config& c) {
  if (c.epsilon < 0 || c.epsilon > 1)
    throw UsageError("epsilon must lie in [0,1]");
  if (c.spacing < 0) throw UsageError("spacing must be >= 0");
  if (c.solver.alpha < 0 || c.solver.alpha > 1)
    throw UsageError("alpha must lie in [0,1]");
  if (c.solver.m <= 0 || c.solver.m > 1)
    throw UsageError("m must lie in (0,1]");
  if (c.solver.q < 1) throw UsageError("q must be >= 1");
  if (c.solver.restarts < 1) throw UsageError("restarts must be >= 1");
  if (c.jobs < 1) throw UsageError("jobs must be >= 1");
  parse_format(c.format);
  parse_colormap(c.colormap);
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  std::vector<double> out;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    double a, b, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0)
      throw UsageError("grid spec must be start:stop:step");
    for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
  } else {
    std::string cur;
    for (char ch : spec + ",") {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(std::stod(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
  }
  if (out.empty()) throw UsageError("empty grid spec");
  return out;
}

bool is_graph_json(const std::string& path) {
  return fs::path(path).extension() == ".json";
}

// field file -> normalized, simplified, extracted, sampled graph
MorseGraph extract_pipeline(const ScalarField& raw, double epsilon, double spacing,
                            const std::string& source) {
  auto f = normalize_field(raw);
  auto s = simplify(f, epsilon);
  auto g = extract_morse_graph(s);
  g.epsilon = epsilon;
  g.source = source;
  if (g.boundary_only)
    std::cerr << "warning: field has a single maximum; graph degenerates to "
                 "the domain boundary skeleton\n";
  if (spacing > 0) g = sample_edges(g, spacing);
  return g;
}

MorseGraph load_graph_input(const std::string& path, const Config& cfg) {
  if (is_graph_json(path)) return morse_graph_from_json(read_json_file(path));
  auto raw = load_field(path, parse_format(cfg.format));
  return extract_pipeline(raw, cfg.epsilon, cfg.spacing, path);
}

MeasureNetwork network_from_graph(const MorseGraph& g, const Config& cfg) {
  if (cfg.largest_component) return to_measure_network(largest_component(g));
  return to_measure_network(g);
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

// ---------------------------------------------------------------- generate

int cmd_generate(const Config& cfg, const std::string& gen_kind, int rows,
                 int cols, std::pair<double, double> freq1,
                 std::pair<double, double> freq2,
                 const std::vector<std::string>& component_specs, double rotation,
                 double noise, uint64_t seed, const std::string& out,
                 const std::string& svg_out) {
  if (rows < 2 || cols < 2) throw UsageError("grid must be at least 2x2");
  ScalarField f;
  if (gen_kind == "sines") {
    f = gen_sine_mixture(rows, cols, freq1, freq2, noise, seed);
  } else if (gen_kind == "gaussians") {
    if (component_specs.empty())
      throw UsageError("gaussians need at least one --component cx,cy,sigma,amp");
    std::vector<GaussianComponent> comps;
    for (auto& s : component_specs) {
      GaussianComponent g;
      if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &g.cx, &g.cy, &g.sigma,
                      &g.amplitude) != 4)
        throw UsageError("component spec must be cx,cy,sigma,amp");
      comps.push_back(g);
    }
    f = gen_gaussian_mixture(rows, cols, comps, rotation, noise, seed);
  } else {
    throw UsageError("unknown generator kind: " + gen_kind);
  }
  save_field(f, out, parse_format(cfg.format));
  if (!svg_out.empty()) write_text_file(svg_out, svg_field(f));
  std::cout << "wrote " << out << " (" << rows << "x" << cols << ")\n";
  return 0;
}

// ----------------------------------------------------------------- extract

int cmd_extract(const Config& cfg, const std::string& input,
                const std::string& out, const std::string& persistence_out,
                const std::string& svg_out) {
  auto raw = load_field(input, parse_format(cfg.format));
  auto f = normalize_field(raw);

  if (!persistence_out.empty()) {
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(i / 200.0);
    write_text_file(persistence_out,
                    persistence_graph_to_csv(persistence_graph(f, grid)));
  }

  auto g = extract_pipeline(raw, cfg.epsilon, cfg.spacing, input);
  write_json_file(out, morse_graph_to_json(g));
  if (!svg_out.empty()) {
    auto s = simplify(f, cfg.epsilon);
    write_text_file(svg_out, svg_field(s, &g));
  }
  std::cout << "wrote " << out << " (" << g.nodes.size() << " nodes, "
            << g.edges.size() << " edges)\n";
  return 0;
}

// ----------------------------------------------------------------- compare

int cmd_compare(const Config& cfg, const std::string& input_a,
                const std::string& input_b, const std::string& out,
                const std::string& coupling_out, const std::string& trace_out,
                const std::string& svg_dir) {
  auto kind = parse_distance_kind(cfg.kind);
  auto ga = load_graph_input(input_a, cfg);
  auto gb = load_graph_input(input_b, cfg);
  auto na = network_from_graph(ga, cfg);
  auto nb = network_from_graph(gb, cfg);
  auto [g1, g2] = normalize_pair(na, nb);

  auto res = compute_distance(kind, g1, g2, cfg.solver);
  validate_coupling(res.coupling, g1.p, g2.p);

  json out_j = distance_result_to_json(res);
  out_j["kind"] = cfg.kind;
  out_j["max_matched_distance"] = max_matched_distance(g1, g2, res.coupling);
  write_json_file(out, out_j);

  if (!coupling_out.empty())
    write_text_file(coupling_out, coupling_to_csv(res.coupling));
  if (!trace_out.empty()) write_text_file(trace_out, trace_to_csv(res.trace));
  if (!svg_dir.empty()) {
    ensure_dir(svg_dir);
    auto assign = color_transfer(g1, g2, res.coupling, parse_colormap(cfg.colormap));
    std::vector<bool> no_hollow(g1.n(), false);
    write_text_file((fs::path(svg_dir) / "source.svg").string(),
                    svg_graph(ga, &assign.source_colors, &no_hollow));
    write_text_file((fs::path(svg_dir) / "target.svg").string(),
                    svg_graph(gb, &assign.target_colors, &assign.hollow));
  }
  std::cout << cfg.kind << " distance = " << format_double(res.distance)
            << (res.converged ? "" : " (not converged)") << "\n";
  return 0;
}

// ------------------------------------------------------------------- batch

std::vector<Instance> build_instances(const Config& cfg, MatrixKind mkind) {
  if (cfg.inputs.size() < 2) throw UsageError("batch needs at least 2 inputs");
  std::vector<Instance> instances;
  for (auto& in : cfg.inputs) {
    Instance inst;
    inst.label = in.label;
    inst.cls = in.cls;
    if (is_graph_json(in.path)) {
      auto g = morse_graph_from_json(read_json_file(in.path));
      if (mkind != MatrixKind::EuclideanScalar &&
          mkind != MatrixKind::EuclideanComplex) {
        inst.net = cfg.largest_component ? to_measure_network(largest_component(g))
                                         : to_measure_network(g);
      }
      inst.graph = std::move(g);
    } else {
      auto raw = load_field(in.path, parse_format(cfg.format));
      if (mkind == MatrixKind::EuclideanScalar) {
        inst.field = normalize_field(raw);
      } else {
        auto g = extract_pipeline(raw, cfg.epsilon, cfg.spacing, in.path);
        if (mkind != MatrixKind::EuclideanComplex)
          inst.net = cfg.largest_component
                         ? to_measure_network(largest_component(g))
                         : to_measure_network(g);
        inst.graph = std::move(g);
        inst.field = normalize_field(raw);
      }
    }
    instances.push_back(std::move(inst));
  }
  return instances;
}

int cmd_batch(const Config& cfg, bool with_mds, bool with_knn) {
  auto mkind = parse_matrix_kind(cfg.kind);
  ensure_dir(cfg.output_dir);
  fs::path dir(cfg.output_dir);

  auto instances = build_instances(cfg, mkind);

  MatrixOptions opts;
  opts.jobs = cfg.jobs;
  opts.allow_missing = cfg.allow_missing;
  opts.raster_rows = cfg.raster_rows;
  opts.raster_cols = cfg.raster_cols;
  std::vector<std::tuple<int, int, double>> timings;
  opts.timings = &timings;

  auto t0 = std::chrono::steady_clock::now();
  auto d = distance_matrix(instances, mkind, cfg.solver, opts);
  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_text_file((dir / "matrix.csv").string(), distance_matrix_to_csv(d));
  write_text_file((dir / "matrix.svg").string(), svg_matrix(d));

  if (with_mds) {
    auto mds = classical_mds(d, cfg.dim);
    if (mds.clamped > 0)
      std::cerr << "warning: clamped " << mds.clamped << " negative eigenvalues\n";
    write_text_file((dir / "mds.csv").string(), mds_to_csv(d.labels, mds.points));
    std::vector<std::string> classes;
    for (auto& in : instances) classes.push_back(in.cls.empty() ? "all" : in.cls);
    write_text_file((dir / "mds.svg").string(), svg_scatter(mds.points, classes));
  }

  if (with_knn) {
    std::vector<std::string> labels;
    for (auto& in : instances) {
      if (in.cls.empty())
        throw UsageError("knn in batch needs a class for every input");
      labels.push_back(in.cls);
    }
    int k = cfg.auto_k ? knn_select_k(d, labels, cfg.train_fraction, cfg.solver.seed)
                       : cfg.k;
    auto rep = knn_classify(d, labels, k, cfg.train_fraction, cfg.solver.seed);
    write_json_file((dir / "classification.json").string(),
                    classification_report_to_json(rep));
  }

  if (!cfg.m_grid.empty() && instances.size() >= 2 && instances[0].net &&
      instances[1].net) {
    auto [g1, g2] = normalize_pair(*instances[0].net, *instances[1].net);
    std::vector<std::tuple<double, double, double>> sweep;
    SolverConfig sc = cfg.solver;
    auto pk = is_partial_kind(parse_distance_kind(cfg.kind))
                  ? parse_distance_kind(cfg.kind)
                  : DistanceKind::PFGW;
    for (double m : cfg.m_grid) {
      sc.m = m;
      auto res = partial_distance(pk, g1, g2, sc);
      sweep.emplace_back(m, max_matched_distance(g1, g2, res.coupling),
                         res.distance);
    }
    write_text_file((dir / "msweep.csv").string(), sweep_to_csv(sweep));
  }

  // manifest records wall-clock times and is therefore excluded from the
  // byte-identical rerun guarantee that the data artifacts honor
  json manifest;
  manifest["command"] = "batch";
  manifest["kind"] = cfg.kind;
  json cfg_json = cfg.to_json();
  manifest["config"] = cfg_json;
  manifest["config_hash"] = config_hash(cfg_json);
  manifest["total_seconds"] = total;
  json pairs_j = json::array();
  for (auto& [i, j, s] : timings)
    pairs_j.push_back({{"i", i},
                       {"j", j},
                       {"label_i", d.labels[i]},
                       {"label_j", d.labels[j]},
                       {"seconds", s}});
  manifest["pairs"] = pairs_j;
  write_json_file((dir / "manifest.json").string(), manifest);

  std::cout << "wrote " << (dir / "matrix.csv").string() << " ("
            << instances.size() << " instances)\n";
  return 0;
}

// ------------------------------------------------------------------- mtune

int cmd_mtune(const Config& cfg, const std::string& input_a,
              const std::string& input_b, const std::string& out,
              const std::string& elbow_out) {
  auto kind = parse_distance_kind(cfg.kind);
  if (!is_partial_kind(kind))
    throw UsageError("mtune requires a partial kind (pw, pgw, pfgw)");
  if (cfg.m_grid.size() < 4)
    throw UsageError("mtune needs an m grid with at least 4 points");

  auto na = network_from_graph(load_graph_input(input_a, cfg), cfg);
  auto nb = network_from_graph(load_graph_input(input_b, cfg), cfg);
  auto [g1, g2] = normalize_pair(na, nb);

  std::vector<std::tuple<double, double, double>> sweep;
  std::vector<std::pair<double, double>> curve;
  SolverConfig sc = cfg.solver;
  for (double m : cfg.m_grid) {
    sc.m = m;
    auto res = partial_distance(kind, g1, g2, sc);
    double mmd = max_matched_distance(g1, g2, res.coupling);
    sweep.emplace_back(m, mmd, res.distance);
    curve.emplace_back(m, mmd);
  }
  write_text_file(out, sweep_to_csv(sweep));

  auto elbow = elbow_select(curve);
  json ej = {{"m_star", elbow.m_star}, {"clear", elbow.clear}};
  if (!elbow_out.empty()) write_json_file(elbow_out, ej);
  std::cout << "elbow m = " << format_double(elbow.m_star)
            << (elbow.clear ? "" : " (no clear elbow)") << "\n";
  return 0;
}

// --------------------------------------------------------------------- mds

int cmd_mds(const Config& cfg, const std::string& matrix_path,
            const std::string& labels_path, const std::string& out,
            const std::string& svg_out) {
  auto d = distance_matrix_from_csv(read_text_file(matrix_path));
  auto mds = classical_mds(d, cfg.dim);
  if (mds.clamped > 0)
    std::cerr << "warning: clamped " << mds.clamped << " negative eigenvalues\n";
  write_text_file(out, mds_to_csv(d.labels, mds.points));
  if (!svg_out.empty()) {
    std::vector<std::string> classes(d.labels.size(), "all");
    if (!labels_path.empty()) {
      auto [ids, cls] = labels_from_csv(read_text_file(labels_path));
      if (ids.size() != d.labels.size())
        throw UsageError("labels CSV size does not match the matrix");
      classes = cls;
    }
    write_text_file(svg_out, svg_scatter(mds.points, classes));
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

// --------------------------------------------------------------------- knn

int cmd_knn(const Config& cfg, const std::string& matrix_path,
            const std::string& labels_path, const std::string& out) {
  auto d = distance_matrix_from_csv(read_text_file(matrix_path));
  auto [ids, classes] = labels_from_csv(read_text_file(labels_path));
  if (ids.size() != d.labels.size())
    throw UsageError("labels CSV size does not match the matrix");
  int k = cfg.auto_k ? knn_select_k(d, classes, cfg.train_fraction, cfg.solver.seed)
                     : cfg.k;
  auto rep = knn_classify(d, classes, k, cfg.train_fraction, cfg.solver.seed);
  write_json_file(out, classification_report_to_json(rep));
  std::cout << "accuracy = " << format_double(rep.accuracy) << " (k=" << rep.k
            << ")\n";
  return 0;
}

// ---------------------------------------------------------------- baseline

int cmd_baseline(const Config& cfg, const std::string& bkind,
                 const std::vector<std::string>& paths, const std::string& out) {
  if (paths.size() < 2) throw UsageError("baseline needs at least 2 inputs");
  Config c = cfg;
  c.inputs.clear();
  for (auto& p : paths) {
    InputSpec spec;
    spec.path = p;
    spec.label = fs::path(p).stem().string();
    c.inputs.push_back(spec);
  }
  if (bkind != "scalar" && bkind != "complex")
    throw UsageError("baseline kind must be scalar or complex");
  MatrixKind mkind = bkind == "scalar" ? MatrixKind::EuclideanScalar
                                       : MatrixKind::EuclideanComplex;
  if (mkind == MatrixKind::EuclideanComplex &&
      (c.raster_rows < 1 || c.raster_cols < 1))
    throw UsageError("baseline complex needs --raster-rows and --raster-cols");

  auto instances = build_instances(c, mkind);
  MatrixOptions opts;
  opts.jobs = c.jobs;
  opts.raster_rows = c.raster_rows;
  opts.raster_cols = c.raster_cols;
  auto d = distance_matrix(instances, mkind, c.solver, opts);
  write_text_file(out, distance_matrix_to_csv(d));
  if (paths.size() == 2)
    std::cout << "distance = " << format_double(d.values(0, 1)) << "\n";
  else
    std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morse graph comparison with optimal-transport distances"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON experiment config");

  // generate
  auto* gen = app.add_subcommand("generate", "synthesize a scalar field");
  std::string gen_kind = "sines", gen_out = "field.txt", gen_svg;
  int gen_rows = 64, gen_cols = 64;
  std::vector<double> freq1 = {2.5, 0.0}, freq2 = {0.0, 2.5};
  std::vector<std::string> components;
  double rotation = 0.0, noise = 0.0;
  uint64_t gen_seed = 0;
  std::string gen_format;
  gen->add_option("--kind", gen_kind, "sines | gaussians");
  gen->add_option("--rows", gen_rows);
  gen->add_option("--cols", gen_cols);
  gen->add_option("--freq1", freq1, "fx,fy of the first sine")->delimiter(',')->expected(2);
  gen->add_option("--freq2", freq2, "fx,fy of the second sine")->delimiter(',')->expected(2);
  gen->add_option("--component", components, "cx,cy,sigma,amp (repeatable)");
  gen->add_option("--rotation", rotation, "rotation angle in radians");
  gen->add_option("--noise", noise, "uniform noise amplitude");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out)->required();
  gen->add_option("--svg", gen_svg);
  gen->add_option("--format", gen_format, "plain-text | csv");

  // extract
  auto* ext = app.add_subcommand("extract", "extract a Morse graph from a field");
  std::string ext_input, ext_out = "graph.json", ext_pers, ext_svg, ext_format;
  double ext_epsilon = -1, ext_spacing = -1;
  ext->add_option("--input", ext_input)->required();
  ext->add_option("--epsilon", ext_epsilon, "persistence simplification threshold");
  ext->add_option("--spacing", ext_spacing, "edge sampling interval (0 = none)");
  ext->add_option("--out", ext_out);
  ext->add_option("--persistence", ext_pers, "persistence graph CSV path");
  ext->add_option("--svg", ext_svg, "field + graph overlay SVG");
  ext->add_option("--format", ext_format);

  // compare
  auto* cmp = app.add_subcommand("compare", "distance between two graphs or fields");
  std::string cmp_kind, cmp_out = "result.json", cmp_coupling, cmp_trace, cmp_svg_dir;
  std::string cmp_format;
  std::vector<std::string> cmp_inputs;
  double cmp_alpha = -1, cmp_m = -1, cmp_q = -1, cmp_tol = -1;
  double cmp_epsilon = -1, cmp_spacing = -1;
  int cmp_restarts = -1, cmp_maxiter = -1;
  uint64_t cmp_seed = 0;
  bool cmp_largest = false;
  auto* cmp_seed_opt = cmp->add_option("--seed", cmp_seed);
  cmp->add_option("inputs", cmp_inputs, "two graph JSONs or two field files")
      ->expected(2)
      ->required();
  cmp->add_option("--kind", cmp_kind, "w|gw|fgw|pw|pgw|pfgw");
  cmp->add_option("--alpha", cmp_alpha);
  cmp->add_option("--m", cmp_m);
  cmp->add_option("--q", cmp_q);
  cmp->add_option("--restarts", cmp_restarts);
  cmp->add_option("--max-iter", cmp_maxiter);
  cmp->add_option("--tol", cmp_tol);
  cmp->add_option("--epsilon", cmp_epsilon);
  cmp->add_option("--spacing", cmp_spacing);
  cmp->add_flag("--largest-component", cmp_largest);
  cmp->add_option("--out", cmp_out);
  cmp->add_option("--coupling-csv", cmp_coupling);
  cmp->add_option("--trace-csv", cmp_trace);
  cmp->add_option("--svg-dir", cmp_svg_dir);
  cmp->add_option("--format", cmp_format);

  // batch
  auto* bat = app.add_subcommand("batch", "pairwise distance matrix over instances");
  std::string bat_kind, bat_out_dir;
  std::vector<std::string> bat_inputs;
  int bat_jobs = -1, bat_dim = -1;
  bool bat_mds = false, bat_knn = false, bat_auto_k = false;
  double bat_epsilon = -1, bat_spacing = -1;
  bat->add_option("inputs", bat_inputs, "graph JSONs or field files");
  bat->add_option("--kind", bat_kind);
  bat->add_option("--out-dir", bat_out_dir);
  bat->add_option("--jobs", bat_jobs);
  bat->add_flag("--mds", bat_mds, "also write an MDS embedding");
  bat->add_option("--dim", bat_dim);
  bat->add_flag("--knn", bat_knn, "also classify (inputs need classes)");
  bat->add_flag("--auto-k", bat_auto_k, "choose k by cross-validation");
  bat->add_option("--epsilon", bat_epsilon);
  bat->add_option("--spacing", bat_spacing);

  // mtune
  auto* mt = app.add_subcommand("mtune", "sweep m and select the elbow");
  std::string mt_kind = "pfgw", mt_grid = "0.5:1.0:0.025", mt_out = "msweep.csv",
              mt_elbow;
  std::vector<std::string> mt_inputs;
  double mt_epsilon = -1, mt_spacing = -1;
  uint64_t mt_seed = 0;
  auto* mt_seed_opt = mt->add_option("--seed", mt_seed);
  mt->add_option("inputs", mt_inputs, "two graph JSONs or field files")
      ->expected(2)
      ->required();
  mt->add_option("--kind", mt_kind);
  mt->add_option("--m-grid", mt_grid, "start:stop:step or comma list");
  mt->add_option("--out", mt_out);
  mt->add_option("--elbow-json", mt_elbow);
  mt->add_option("--epsilon", mt_epsilon);
  mt->add_option("--spacing", mt_spacing);

  // mds
  auto* md = app.add_subcommand("mds", "classical MDS from a distance matrix CSV");
  std::string md_matrix, md_labels, md_out = "mds.csv", md_svg;
  int md_dim = -1;
  md->add_option("--matrix", md_matrix)->required();
  md->add_option("--labels", md_labels, "id,class CSV for scatter colors");
  md->add_option("--dim", md_dim);
  md->add_option("--out", md_out);
  md->add_option("--svg", md_svg);

  // knn
  auto* kn = app.add_subcommand("knn", "kNN classification from a matrix CSV");
  std::string kn_matrix, kn_labels, kn_out = "report.json";
  int kn_k = -1;
  bool kn_auto = false;
  double kn_frac = -1;
  uint64_t kn_seed = 0;
  auto* kn_seed_opt = kn->add_option("--seed", kn_seed);
  kn->add_option("--matrix", kn_matrix)->required();
  kn->add_option("--labels", kn_labels)->required();
  kn->add_option("--k", kn_k);
  kn->add_flag("--auto-k", kn_auto);
  kn->add_option("--train-fraction", kn_frac);
  kn->add_option("--out", kn_out);

  // baseline
  auto* bl = app.add_subcommand("baseline", "Euclidean scalar/complex distances");
  std::string bl_kind = "scalar", bl_out = "baseline.csv";
  std::vector<std::string> bl_inputs;
  int bl_rr = -1, bl_rc = -1;
  double bl_epsilon = -1, bl_spacing = -1;
  bl->add_option("inputs", bl_inputs)->required();
  bl->add_option("--kind", bl_kind, "scalar | complex");
  bl->add_option("--raster-rows", bl_rr);
  bl->add_option("--raster-cols", bl_rc);
  bl->add_option("--epsilon", bl_epsilon);
  bl->add_option("--spacing", bl_spacing);
  bl->add_option("--out", bl_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg = load_config(config_path);

    if (gen->parsed()) {
      if (!gen_format.empty()) cfg.format = gen_format;
      validate_common(cfg);
      return cmd_generate(cfg, gen_kind, gen_rows, gen_cols,
                          {freq1[0], freq1[1]}, {freq2[0], freq2[1]}, components,
                          rotation, noise, gen_seed, gen_out, gen_svg);
    }
    if (ext->parsed()) {
      if (ext_epsilon >= 0) cfg.epsilon = ext_epsilon;
      else if (ext->count("--epsilon")) throw UsageError("epsilon must lie in [0,1]");
      if (ext_spacing >= 0) cfg.spacing = ext_spacing;
      if (!ext_format.empty()) cfg.format = ext_format;
      if (ext_epsilon > 1) throw UsageError("epsilon must lie in [0,1]");
      validate_common(cfg);
      return cmd_extract(cfg, ext_input, ext_out, ext_pers, ext_svg);
    }
    if (cmp->parsed()) {
      if (!cmp_kind.empty()) cfg.kind = cmp_kind;
      if (cmp_alpha >= 0) cfg.solver.alpha = cmp_alpha;
      if (cmp_m >= 0) cfg.solver.m = cmp_m;
      if (cmp_q >= 0) cfg.solver.q = cmp_q;
      if (cmp_tol >= 0) cfg.solver.tolerance = cmp_tol;
      if (cmp_restarts >= 0) cfg.solver.restarts = cmp_restarts;
      if (cmp_maxiter >= 0) cfg.solver.max_iterations = cmp_maxiter;
      if (cmp_seed_opt->count()) cfg.solver.seed = cmp_seed;
      if (cmp_epsilon >= 0) cfg.epsilon = cmp_epsilon;
      if (cmp_spacing >= 0) cfg.spacing = cmp_spacing;
      if (cmp_largest) cfg.largest_component = true;
      if (!cmp_format.empty()) cfg.format = cmp_format;
      validate_common(cfg);
      return cmd_compare(cfg, cmp_inputs[0], cmp_inputs[1], cmp_out, cmp_coupling,
                         cmp_trace, cmp_svg_dir);
    }
    if (bat->parsed()) {
      if (!bat_kind.empty()) cfg.kind = bat_kind;
      if (!bat_out_dir.empty()) cfg.output_dir = bat_out_dir;
      if (bat_jobs >= 1) cfg.jobs = bat_jobs;
      if (bat_dim >= 1) cfg.dim = bat_dim;
      if (bat_auto_k) cfg.auto_k = true;
      if (bat_epsilon >= 0) cfg.epsilon = bat_epsilon;
      if (bat_spacing >= 0) cfg.spacing = bat_spacing;
      for (auto& p : bat_inputs) {
        InputSpec spec;
        spec.path = p;
        spec.label = fs::path(p).stem().string();
        cfg.inputs.push_back(spec);
      }
      validate_common(cfg);
      return cmd_batch(cfg, bat_mds, bat_knn);
    }
    if (mt->parsed()) {
      cfg.kind = mt_kind;
      cfg.m_grid = parse_grid_spec(mt_grid);
      if (mt_epsilon >= 0) cfg.epsilon = mt_epsilon;
      if (mt_spacing >= 0) cfg.spacing = mt_spacing;
      if (mt_seed_opt->count()) cfg.solver.seed = mt_seed;
      validate_common(cfg);
      return cmd_mtune(cfg, mt_inputs[0], mt_inputs[1], mt_out, mt_elbow);
    }
    if (md->parsed()) {
      if (md_dim >= 1) cfg.dim = md_dim;
      validate_common(cfg);
      return cmd_mds(cfg, md_matrix, md_labels, md_out, md_svg);
    }
    if (kn->parsed()) {
      if (kn_k >= 1) cfg.k = kn_k;
      if (kn_auto) cfg.auto_k = true;
      if (kn_frac > 0) cfg.train_fraction = kn_frac;
      if (kn_seed_opt->count()) cfg.solver.seed = kn_seed;
      validate_common(cfg);
      return cmd_knn(cfg, kn_matrix, kn_labels, kn_out);
    }
    if (bl->parsed()) {
      if (bl_rr >= 1) cfg.raster_rows = bl_rr;
      if (bl_rc >= 1) cfg.raster_cols = bl_rc;
      if (bl_epsilon >= 0) cfg.epsilon = bl_epsilon;
      if (bl_spacing >= 0) cfg.spacing = bl_spacing;
      validate_common(cfg);
      return cmd_baseline(cfg, bl_kind, bl_inputs, bl_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
