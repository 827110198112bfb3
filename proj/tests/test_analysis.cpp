#include <doctest.h>

#include <cmath>

#include "morseot/analysis.hpp"
#include "morseot/rng.hpp"
#include "oracles.hpp"

using namespace morseot;

namespace {

MeasureNetwork grid_positions_net(int n, uint64_t seed) {
  auto g = oracles::random_network(seed, n);
  return g;
}

DistanceMatrix euclidean_matrix(const Eigen::MatrixXd& pts) {
  int n = (int)pts.rows();
  DistanceMatrix d;
  d.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    d.labels.push_back("p" + std::to_string(i));
    for (int j = 0; j < n; ++j) d.values(i, j) = (pts.row(i) - pts.row(j)).norm();
  }
  return d;
}

}  // namespace

TEST_CASE("color transfer: identity coupling copies colors nodewise") {
  auto g = grid_positions_net(5, 1);
  Coupling c;
  c.matrix = g.p.asDiagonal();
  c.mass = 1.0;
  c.kind = CouplingKind::Full;
  auto assign = color_transfer(g, g, c, Colormap::PositionRgb);
  for (int j = 0; j < 5; ++j) {
    CHECK_FALSE(assign.hollow[j]);
    CHECK(assign.target_colors[j].r == assign.source_colors[j].r);
    CHECK(assign.target_colors[j].g == assign.source_colors[j].g);
    CHECK(assign.target_colors[j].b == assign.source_colors[j].b);
  }
}

TEST_CASE("color transfer marks zero columns hollow") {
  auto a = grid_positions_net(3, 2);
  auto b = grid_positions_net(4, 3);
  Coupling c;
  c.matrix = Eigen::MatrixXd::Zero(3, 4);
  c.matrix(0, 0) = c.matrix(1, 1) = c.matrix(2, 2) = 1.0 / 3.0;
  c.mass = 1.0;
  c.kind = CouplingKind::Partial;
  auto assign = color_transfer(a, b, c, Colormap::PositionRgb);
  CHECK_FALSE(assign.hollow[0]);
  CHECK_FALSE(assign.hollow[1]);
  CHECK_FALSE(assign.hollow[2]);
  CHECK(assign.hollow[3]);
}

TEST_CASE("color transfer dimension mismatch raises") {
  auto a = grid_positions_net(3, 4);
  auto b = grid_positions_net(4, 5);
  Coupling c;
  c.matrix = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(color_transfer(a, b, c, Colormap::PositionRgb), std::runtime_error);
}

TEST_CASE("square example coupling rotates the color correspondence") {
  // reuse the square construction: positions identical, edges rotated
  auto seg = [](double x0, double y0, double x1, double y1) {
    return std::vector<std::pair<double, double>>{{x0, y0}, {x1, y1}};
  };
  MorseGraph g1, g2;
  g1.nodes = {{0, 0, 0, NodeKind::Critical},
              {1, 1, 0, NodeKind::Critical},
              {2, 1, 1, NodeKind::Critical},
              {3, 0, 1, NodeKind::Critical}};
  g1.edges = {{0, 1, seg(0, 0, 1, 0), 1.0},
              {1, 2, seg(1, 0, 1, 1), 1.0},
              {2, 3, seg(1, 1, 0, 1), 1.0}};
  g2.nodes = g1.nodes;
  g2.edges = {{1, 2, seg(1, 0, 1, 1), 1.0},
              {2, 3, seg(1, 1, 0, 1), 1.0},
              {3, 0, seg(0, 1, 0, 0), 1.0}};
  auto [s1, s2] = normalize_pair(uniform_distribution(to_measure_network(g1)),
                                 uniform_distribution(to_measure_network(g2)));
  SolverConfig cfg;
  cfg.seed = 6;
  auto gw = gromov_wasserstein(s1, s2, cfg);
  REQUIRE(gw.distance <= 1e-6);
  auto assign = color_transfer(s1, s2, gw.coupling, Colormap::PositionRgb);
  // zero-distortion couplings map each target to a DIFFERENT source position
  int moved = 0;
  for (int j = 0; j < 4; ++j) {
    double dr = assign.target_colors[j].r - assign.source_colors[j].r;
    double dg = assign.target_colors[j].g - assign.source_colors[j].g;
    if (std::abs(dr) + std::abs(dg) > 1e-9) ++moved;
  }
  CHECK(moved >= 2);
}

TEST_CASE("distance matrix of identical instances is zero") {
  auto f = simplify(normalize_field(gen_sine_mixture(32, 32, {1.5, 0}, {0, 1.5}, 0, 0)),
                    0.07);
  auto net = to_measure_network(sample_edges(extract_morse_graph(f), 0.15));
  std::vector<Instance> inst;
  for (int i = 0; i < 3; ++i) {
    Instance in;
    in.label = "t" + std::to_string(i);
    in.net = net;
    inst.push_back(std::move(in));
  }
  SolverConfig cfg;
  auto d = distance_matrix(inst, MatrixKind::FGW, cfg);
  CHECK(d.values.cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((d.values - d.values.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("distance matrix is independent of the thread count") {
  std::vector<Instance> inst;
  for (int i = 0; i < 4; ++i) {
    Instance in;
    in.label = "r" + std::to_string(i);
    in.net = grid_positions_net(5 + i, 60 + i);
    inst.push_back(std::move(in));
  }
  SolverConfig cfg;
  cfg.seed = 3;
  MatrixOptions o1, o4;
  o1.jobs = 1;
  o4.jobs = 4;
  auto d1 = distance_matrix(inst, MatrixKind::GW, cfg, o1);
  auto d4 = distance_matrix(inst, MatrixKind::GW, cfg, o4);
  CHECK((d1.values - d4.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("euclidean matrix kinds require their inputs") {
  std::vector<Instance> inst(2);
  inst[0].label = "a";
  inst[1].label = "b";
  SolverConfig cfg;
  CHECK_THROWS_AS(distance_matrix(inst, MatrixKind::EuclideanScalar, cfg),
                  std::runtime_error);
  MatrixOptions opts;
  opts.allow_missing = true;
  auto d = distance_matrix(inst, MatrixKind::EuclideanScalar, cfg, opts);
  CHECK(std::isnan(d.values(0, 1)));
}

TEST_CASE("max matched distance basics") {
  auto a = grid_positions_net(4, 70);
  auto b = a;
  Coupling ident;
  ident.matrix = a.p.asDiagonal();
  ident.mass = 1.0;
  CHECK(max_matched_distance(a, b, ident) == 0.0);

  Coupling c;
  c.matrix = Eigen::MatrixXd::Zero(4, 4);
  c.matrix(0, 1) = 0.5;
  c.matrix(2, 3) = 0.5;
  double d01 = (a.F.row(0) - b.F.row(1)).norm();
  double d23 = (a.F.row(2) - b.F.row(3)).norm();
  CHECK(max_matched_distance(a, b, c) ==
        doctest::Approx(std::max(d01, d23)).epsilon(1e-15));

  Coupling empty;
  empty.matrix = Eigen::MatrixXd::Zero(4, 4);
  CHECK_THROWS_AS(max_matched_distance(a, b, empty), std::runtime_error);
}

TEST_CASE("elbow selection finds a constructed kink") {
  std::vector<std::pair<double, double>> curve;
  for (double m = 0.5; m <= 0.8 + 1e-9; m += 0.05) curve.push_back({m, 0.1});
  for (double m = 0.85; m <= 1.0 + 1e-9; m += 0.05)
    curve.push_back({m, 0.1 + (m - 0.8) * 3.0});
  auto res = elbow_select(curve);
  CHECK(res.clear);
  CHECK(res.m_star == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("strictly linear curves have no clear elbow; ties pick the smallest m") {
  std::vector<std::pair<double, double>> curve;
  for (int i = 0; i < 8; ++i) curve.push_back({0.5 + 0.05 * i, 1.0 + 0.3 * i});
  auto res = elbow_select(curve);
  CHECK_FALSE(res.clear);
  CHECK(res.m_star == doctest::Approx(0.55).epsilon(1e-12));

  std::vector<std::pair<double, double>> tiny = {{0.1, 0}, {0.2, 1}, {0.3, 2}};
  CHECK_THROWS_AS(elbow_select(tiny), std::runtime_error);
}

TEST_CASE("classical MDS recovers collinear points") {
  Eigen::MatrixXd pts(3, 1);
  pts << 0, 1, 2;
  auto d = euclidean_matrix(pts);
  auto mds = classical_mds(d, 1);
  CHECK(mds.clamped == 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs((mds.points.row(i) - mds.points.row(j)).norm() -
                     d.values(i, j)) < 1e-6);
}

TEST_CASE("classical MDS maps the zero matrix to the origin") {
  DistanceMatrix d;
  d.labels = {"a", "b", "c"};
  d.values = Eigen::MatrixXd::Zero(3, 3);
  auto mds = classical_mds(d, 2);
  CHECK(mds.points.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("classical MDS embeddings never stretch Euclidean inputs") {
  Rng rng(9);
  Eigen::MatrixXd pts(8, 2);
  for (int i = 0; i < 8; ++i) {
    pts(i, 0) = rng.unit();
    pts(i, 1) = rng.unit();
  }
  auto d = euclidean_matrix(pts);
  auto mds = classical_mds(d, 2);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double emb = (mds.points.row(i) - mds.points.row(j)).norm();
      CHECK(emb <= d.values(i, j) + 1e-6);
      CHECK(emb == doctest::Approx(d.values(i, j)).epsilon(1e-6));
    }
  CHECK_THROWS_AS(classical_mds(d, 8), std::runtime_error);
}

TEST_CASE("knn classifies well separated clusters perfectly") {
  Rng rng(11);
  int per_class = 12;
  Eigen::MatrixXd pts(2 * per_class, 2);
  std::vector<std::string> labels;
  for (int i = 0; i < per_class; ++i) {
    pts(i, 0) = rng.unit() * 0.1;
    pts(i, 1) = rng.unit() * 0.1;
    labels.push_back("near");
  }
  for (int i = 0; i < per_class; ++i) {
    pts(per_class + i, 0) = 5.0 + rng.unit() * 0.1;
    pts(per_class + i, 1) = 5.0 + rng.unit() * 0.1;
    labels.push_back("far");
  }
  auto d = euclidean_matrix(pts);
  for (int k : {1, 3, 5}) {
    auto rep = knn_classify(d, labels, k, 0.8, 7);
    CHECK(rep.accuracy == 1.0);
    CHECK(rep.f1.at("near") == 1.0);
    CHECK(rep.f1.at("far") == 1.0);
  }
}

TEST_CASE("k=1 with a duplicated point returns its label") {
  Eigen::MatrixXd pts(5, 1);
  pts << 0.0, 0.001, 1.0, 1.001, 0.0005;
  DistanceMatrix d = euclidean_matrix(pts);
  std::vector<std::string> labels = {"a", "a", "b", "b", "a"};
  auto rep = knn_classify(d, labels, 1, 0.8, 1);
  CHECK(rep.accuracy == 1.0);
}

TEST_CASE("confusion matrix and accuracy stay consistent") {
  Rng rng(13);
  Eigen::MatrixXd pts(30, 2);
  std::vector<std::string> labels;
  for (int i = 0; i < 30; ++i) {
    pts(i, 0) = rng.unit();
    pts(i, 1) = rng.unit();
    labels.push_back(i % 3 == 0 ? "x" : (i % 3 == 1 ? "y" : "z"));
  }
  auto d = euclidean_matrix(pts);
  auto rep = knn_classify(d, labels, 3, 0.8, 5);
  int diag = rep.confusion.diagonal().sum();
  int total = rep.confusion.sum();
  CHECK(total == rep.test_count);
  CHECK(rep.accuracy == doctest::Approx(double(diag) / total).epsilon(1e-12));
}

TEST_CASE("knn_select_k returns a candidate value") {
  Rng rng(17);
  Eigen::MatrixXd pts(40, 2);
  std::vector<std::string> labels;
  for (int i = 0; i < 40; ++i) {
    bool cls = i < 20;
    pts(i, 0) = (cls ? 0.0 : 3.0) + rng.unit();
    pts(i, 1) = rng.unit();
    labels.push_back(cls ? "l" : "r");
  }
  auto d = euclidean_matrix(pts);
  int k = knn_select_k(d, labels, 0.8, 3);
  CHECK((k == 1 || k == 3 || k == 5 || k == 7));
}
