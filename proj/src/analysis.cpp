#include "morseot/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "morseot/rng.hpp"

namespace morseot {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

Rgb colormap_color(Colormap cm, double x, double y) {
  x = std::clamp(x, 0.0, 1.0);
  y = std::clamp(y, 0.0, 1.0);
  if (cm == Colormap::PositionRgb) {
    // 2D gradient: red tracks x, green tracks y, blue fades toward the
    // upper-right so all four corners stay distinguishable
    return {0.15 + 0.85 * x, 0.15 + 0.85 * y, 0.9 - 0.45 * (x + y) / 2.0};
  }
  // hue from the angle about the domain center, lightness from the radius
  double dx = x - 0.5, dy = y - 0.5;
  double h = std::atan2(dy, dx) / (2.0 * 3.14159265358979323846) + 0.5;  // [0,1]
  double rad = std::min(1.0, std::sqrt(dx * dx + dy * dy) / 0.70710678118654752);
  double l = 0.35 + 0.5 * rad;
  // HSL -> RGB with s = 1
  auto hue2rgb = [](double p, double qq, double t) {
    if (t < 0) t += 1;
    if (t > 1) t -= 1;
    if (t < 1.0 / 6) return p + (qq - p) * 6 * t;
    if (t < 1.0 / 2) return qq;
    if (t < 2.0 / 3) return p + (qq - p) * (2.0 / 3 - t) * 6;
    return p;
  };
  double qq = l < 0.5 ? l * 2.0 : 1.0;
  double p = 2 * l - qq;
  return {hue2rgb(p, qq, h + 1.0 / 3), hue2rgb(p, qq, h), hue2rgb(p, qq, h - 1.0 / 3)};
}

ColorAssignment color_transfer(const MeasureNetwork& source,
                               const MeasureNetwork& target,
                               const Coupling& coupling, Colormap cm) {
  int n1 = source.n(), n2 = target.n();
  if (coupling.matrix.rows() != n1 || coupling.matrix.cols() != n2)
    throw std::runtime_error("coupling dimensions do not match the networks");

  ColorAssignment out;
  out.source_colors.reserve(n1);
  for (int i = 0; i < n1; ++i)
    out.source_colors.push_back(colormap_color(cm, source.F(i, 0), source.F(i, 1)));

  out.target_colors.resize(n2);
  out.hollow.resize(n2);
  double threshold = 1e-12 * coupling.mass;
  for (int j = 0; j < n2; ++j) {
    int arg = 0;
    double best = coupling.matrix(0, j);
    double colsum = best;
    for (int i = 1; i < n1; ++i) {
      double v = coupling.matrix(i, j);
      colsum += v;
      if (v > best) {  // ties keep the smallest source index
        best = v;
        arg = i;
      }
    }
    out.hollow[j] = colsum < threshold;
    out.target_colors[j] = out.source_colors[arg];
  }
  return out;
}

MatrixKind parse_matrix_kind(const std::string& name) {
  if (name == "euclidean-scalar" || name == "scalar") return MatrixKind::EuclideanScalar;
  if (name == "euclidean-complex" || name == "complex") return MatrixKind::EuclideanComplex;
  switch (parse_distance_kind(name)) {
    case DistanceKind::W: return MatrixKind::W;
    case DistanceKind::GW: return MatrixKind::GW;
    case DistanceKind::FGW: return MatrixKind::FGW;
    case DistanceKind::PW: return MatrixKind::PW;
    case DistanceKind::PGW: return MatrixKind::PGW;
    default: return MatrixKind::PFGW;
  }
}

std::string matrix_kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::EuclideanScalar: return "euclidean-scalar";
    case MatrixKind::EuclideanComplex: return "euclidean-complex";
    case MatrixKind::W: return "w";
    case MatrixKind::GW: return "gw";
    case MatrixKind::FGW: return "fgw";
    case MatrixKind::PW: return "pw";
    case MatrixKind::PGW: return "pgw";
    default: return "pfgw";
  }
}

namespace {

bool is_fw_kind(MatrixKind k) {
  return k == MatrixKind::GW || k == MatrixKind::FGW || k == MatrixKind::PGW ||
         k == MatrixKind::PFGW;
}

DistanceKind ot_kind_of(MatrixKind k) {
  switch (k) {
    case MatrixKind::W: return DistanceKind::W;
    case MatrixKind::GW: return DistanceKind::GW;
    case MatrixKind::FGW: return DistanceKind::FGW;
    case MatrixKind::PW: return DistanceKind::PW;
    case MatrixKind::PGW: return DistanceKind::PGW;
    case MatrixKind::PFGW: return DistanceKind::PFGW;
    default: throw std::logic_error("not an OT kind");
  }
}

double pair_distance(const Instance& a, const Instance& b, MatrixKind kind,
                     const SolverConfig& cfg, const MatrixOptions& opts) {
  if (kind == MatrixKind::EuclideanScalar) {
    if (!a.field || !b.field)
      throw std::runtime_error("euclidean-scalar needs the original fields");
    return euclidean_scalar_distance(*a.field, *b.field);
  }
  if (kind == MatrixKind::EuclideanComplex) {
    if (!a.graph || !b.graph)
      throw std::runtime_error("euclidean-complex needs the Morse graphs");
    if (opts.raster_rows < 1 || opts.raster_cols < 1)
      throw std::runtime_error("euclidean-complex needs raster dimensions");
    return euclidean_complex_distance(*a.graph, *b.graph, opts.raster_rows,
                                      opts.raster_cols);
  }
  if (!a.net || !b.net)
    throw std::runtime_error("OT kinds need measure networks");
  DistanceKind dk = ot_kind_of(kind);
  auto [na, nb] = normalize_pair(*a.net, *b.net);
  double dab = compute_distance(dk, na, nb, cfg).distance;
  if (!is_fw_kind(kind)) return dab;
  // local optima can differ per direction; the averaged value feeds MDS/kNN
  double dba = compute_distance(dk, nb, na, cfg).distance;
  return 0.5 * (dab + dba);
}

}  // namespace

DistanceMatrix distance_matrix(const std::vector<Instance>& instances,
                               MatrixKind kind, const SolverConfig& cfg,
                               const MatrixOptions& opts) {
  int n = (int)instances.size();
  if (n < 2) throw std::runtime_error("distance matrix needs at least 2 instances");

  DistanceMatrix out;
  out.labels.reserve(n);
  for (auto& ins : instances) out.labels.push_back(ins.label);
  out.values = Eigen::MatrixXd::Zero(n, n);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  int jobs = std::max(1, opts.jobs);
  std::atomic<size_t> next{0};
  std::vector<std::string> errors(pairs.size());
  std::vector<double> result(pairs.size(), kNaN);
  std::vector<double> seconds(pairs.size(), 0.0);

  auto worker = [&]() {
    while (true) {
      size_t t = next.fetch_add(1);
      if (t >= pairs.size()) break;
      auto [i, j] = pairs[t];
      auto t0 = std::chrono::steady_clock::now();
      try {
        result[t] = pair_distance(instances[i], instances[j], kind, cfg, opts);
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
      seconds[t] = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0).count();
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }

  std::string first_error;
  for (size_t t = 0; t < pairs.size(); ++t) {
    auto [i, j] = pairs[t];
    out.values(i, j) = result[t];
    out.values(j, i) = result[t];
    if (opts.timings) opts.timings->emplace_back(i, j, seconds[t]);
    if (!errors[t].empty() && first_error.empty())
      first_error = "pair (" + out.labels[i] + ", " + out.labels[j] + "): " + errors[t];
  }
  if (!first_error.empty() && !opts.allow_missing)
    throw std::runtime_error("distance matrix failed: " + first_error);
  return out;
}

double max_matched_distance(const MeasureNetwork& g1, const MeasureNetwork& g2,
                            const Coupling& coupling) {
  if (coupling.matrix.rows() != g1.n() || coupling.matrix.cols() != g2.n())
    throw std::runtime_error("coupling dimensions do not match the networks");
  const double threshold = 1e-12;
  double best = -1.0;
  for (int i = 0; i < g1.n(); ++i) {
    for (int j = 0; j < g2.n(); ++j) {
      if (coupling.matrix(i, j) <= threshold) continue;
      double dx = g1.F(i, 0) - g2.F(j, 0), dy = g1.F(i, 1) - g2.F(j, 1);
      best = std::max(best, std::sqrt(dx * dx + dy * dy));
    }
  }
  if (best < 0) throw std::runtime_error("coupling support is empty");
  return best;
}

ElbowResult elbow_select(const std::vector<std::pair<double, double>>& curve) {
  if (curve.size() < 4)
    throw std::runtime_error("elbow selection needs at least 4 points");
  double yscale = 0.0;
  for (size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].first < curve[i - 1].first)
      throw std::runtime_error("curve must be sorted by m ascending");
  }
  for (auto& [m, y] : curve) yscale = std::max(yscale, std::abs(y));

  double best = -1.0;
  double m_star = curve[1].first;
  for (size_t i = 1; i + 1 < curve.size(); ++i) {
    double sd = std::abs(curve[i + 1].second - 2.0 * curve[i].second +
                         curve[i - 1].second);
    if (sd > best + 1e-15) {  // ties keep the smallest m
      best = sd;
      m_star = curve[i].first;
    }
  }
  return {m_star, best > 1e-12 * std::max(1.0, yscale)};
}

MdsResult classical_mds(const DistanceMatrix& d, int dim) {
  int n = (int)d.values.rows();
  if (dim < 1) throw std::runtime_error("embedding dimension must be >= 1");
  if (dim >= n) throw std::runtime_error("embedding dimension must be < instance count");

  Eigen::MatrixXd D2 = d.values.cwiseProduct(d.values);
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n) -
                      Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd B = -0.5 * J * D2 * J;
  B = 0.5 * (B + B.transpose().eval());  // keep it exactly symmetric

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(B);
  MdsResult out;
  out.points = Eigen::MatrixXd::Zero(n, dim);
  for (int k = 0; k < dim; ++k) {
    double lam = eig.eigenvalues()[n - 1 - k];  // descending
    if (lam < 0) {
      ++out.clamped;
      lam = 0.0;
    }
    out.points.col(k) = eig.eigenvectors().col(n - 1 - k) * std::sqrt(lam);
  }
  return out;
}

namespace {

struct Split {
  std::vector<int> train, test;
};

Split stratified_split(const std::vector<std::string>& labels,
                       const std::vector<std::string>& classes,
                       double train_fraction, uint64_t seed) {
  Split sp;
  Rng rng(seed);
  for (auto& cls : classes) {
    std::vector<int> idx;
    for (int i = 0; i < (int)labels.size(); ++i)
      if (labels[i] == cls) idx.push_back(i);
    for (size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[rng.integer(i)]);
    int ntrain = (int)std::llround(train_fraction * idx.size());
    ntrain = std::clamp(ntrain, 0, (int)idx.size());
    for (int i = 0; i < (int)idx.size(); ++i)
      (i < ntrain ? sp.train : sp.test).push_back(idx[i]);
  }
  std::sort(sp.train.begin(), sp.train.end());
  std::sort(sp.test.begin(), sp.test.end());
  return sp;
}

// majority vote among the k nearest `pool` instances; ties go to the class
// with the smaller summed distance, then the smaller class index
int vote(const Eigen::MatrixXd& dist, const std::vector<int>& class_of,
         int n_classes, const std::vector<int>& pool, int probe, int k) {
  std::vector<int> order(pool.begin(), pool.end());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double da = dist(probe, a), db = dist(probe, b);
    return da != db ? da < db : a < b;
  });
  int kk = std::min<int>(k, (int)order.size());
  std::vector<int> votes(n_classes, 0);
  std::vector<double> sums(n_classes, 0.0);
  for (int t = 0; t < kk; ++t) {
    votes[class_of[order[t]]] += 1;
    sums[class_of[order[t]]] += dist(probe, order[t]);
  }
  int best = -1;
  for (int c = 0; c < n_classes; ++c) {
    if (votes[c] == 0) continue;
    if (best == -1 || votes[c] > votes[best] ||
        (votes[c] == votes[best] && sums[c] < sums[best]))
      best = c;
  }
  return best;
}

}  // namespace

ClassificationReport knn_classify(const DistanceMatrix& d,
                                  const std::vector<std::string>& labels,
                                  int k, double train_fraction, uint64_t seed) {
  int n = (int)labels.size();
  if (n != d.values.rows()) throw std::runtime_error("label count does not match matrix");
  if (k < 1) throw std::runtime_error("k must be >= 1");

  std::set<std::string> class_set(labels.begin(), labels.end());
  std::vector<std::string> classes(class_set.begin(), class_set.end());
  int nc = (int)classes.size();
  std::vector<int> class_of(n);
  for (int i = 0; i < n; ++i)
    class_of[i] = int(std::lower_bound(classes.begin(), classes.end(), labels[i]) -
                      classes.begin());

  auto sp = stratified_split(labels, classes, train_fraction, seed);
  if (sp.test.empty()) throw std::runtime_error("split produced no test instances");
  if ((int)sp.train.size() < k)
    throw std::runtime_error("fewer training instances than k");

  ClassificationReport rep;
  rep.classes = classes;
  rep.k = k;
  rep.train_count = (int)sp.train.size();
  rep.test_count = (int)sp.test.size();
  rep.confusion = Eigen::MatrixXi::Zero(nc, nc);

  int correct = 0;
  for (int probe : sp.test) {
    int pred = vote(d.values, class_of, nc, sp.train, probe, k);
    rep.confusion(class_of[probe], pred) += 1;
    if (pred == class_of[probe]) ++correct;
  }
  rep.accuracy = double(correct) / sp.test.size();

  for (int c = 0; c < nc; ++c) {
    double tp = rep.confusion(c, c);
    double actual = rep.confusion.row(c).sum();
    double predicted = rep.confusion.col(c).sum();
    if (actual == 0) {
      rep.f1[classes[c]] = kNaN;  // undefined: no test instances of the class
      continue;
    }
    double denom = actual + predicted;
    rep.f1[classes[c]] = denom > 0 ? 2.0 * tp / denom : 0.0;
  }
  return rep;
}

int knn_select_k(const DistanceMatrix& d, const std::vector<std::string>& labels,
                 double train_fraction, uint64_t seed) {
  int n = (int)labels.size();
  std::set<std::string> class_set(labels.begin(), labels.end());
  std::vector<std::string> classes(class_set.begin(), class_set.end());
  int nc = (int)classes.size();
  std::vector<int> class_of(n);
  for (int i = 0; i < n; ++i)
    class_of[i] = int(std::lower_bound(classes.begin(), classes.end(), labels[i]) -
                      classes.begin());
  auto sp = stratified_split(labels, classes, train_fraction, seed);

  int best_k = 1;
  double best_acc = -1.0;
  for (int k : {1, 3, 5, 7}) {
    if ((int)sp.train.size() <= k) break;
    int correct = 0;
    for (int probe : sp.train) {
      std::vector<int> pool;
      pool.reserve(sp.train.size() - 1);
      for (int t : sp.train)
        if (t != probe) pool.push_back(t);
      if (vote(d.values, class_of, nc, pool, probe, k) == class_of[probe])
        ++correct;
    }
    double acc = double(correct) / sp.train.size();
    if (acc > best_acc + 1e-12) {  // ties keep the smaller k
      best_acc = acc;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace morseot
