#include <doctest.h>

#include <cmath>

#include "morseot/network.hpp"
#include "morseot/ot.hpp"
#include "morseot/rng.hpp"
#include "oracles.hpp"

using namespace morseot;

namespace {

MorseGraph path_graph_abc() {
  MorseGraph g;
  g.nodes = {{0, 0.0, 0.0, NodeKind::Critical},
             {1, 0.5, 0.0, NodeKind::Critical},
             {2, 1.0, 0.0, NodeKind::Critical}};
  g.edges = {{0, 1, {{0.0, 0.0}, {0.5, 0.0}}, 1.0},
             {1, 2, {{0.5, 0.0}, {1.0, 0.0}}, 1.0}};
  return g;
}

MorseGraph four_cycle() {
  MorseGraph g;
  g.nodes = {{0, 0.0, 0.0, NodeKind::Critical},
             {1, 1.0, 0.0, NodeKind::Critical},
             {2, 1.0, 1.0, NodeKind::Critical},
             {3, 0.0, 1.0, NodeKind::Critical}};
  auto seg = [](double x0, double y0, double x1, double y1) {
    return std::vector<std::pair<double, double>>{{x0, y0}, {x1, y1}};
  };
  g.edges = {{0, 1, seg(0, 0, 1, 0), 1.0},
             {1, 2, seg(1, 0, 1, 1), 1.0},
             {2, 3, seg(1, 1, 0, 1), 1.0},
             {3, 0, seg(0, 1, 0, 0), 1.0}};
  return g;
}

}  // namespace

TEST_CASE("path graph probabilities and geodesics") {
  auto net = to_measure_network(path_graph_abc());
  CHECK(net.p[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(net.p[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(net.p[2] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(net.W(0, 1) == 1.0);
  CHECK(net.W(0, 2) == 2.0);
  CHECK(net.W(1, 2) == 1.0);
  CHECK(net.W(0, 0) == 0.0);
}

TEST_CASE("4-cycle: uniform degrees, opposite corners at distance 2") {
  auto net = to_measure_network(four_cycle());
  for (int i = 0; i < 4; ++i) CHECK(net.p[i] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(net.W(0, 2) == 2.0);
  CHECK(net.W(1, 3) == 2.0);
  CHECK(net.W(0, 1) == 1.0);
}

TEST_CASE("disconnected graphs are rejected with component sizes") {
  MorseGraph g = path_graph_abc();
  g.nodes.push_back({3, 0.2, 0.9, NodeKind::Critical});
  g.nodes.push_back({4, 0.8, 0.9, NodeKind::Critical});
  g.edges.push_back({3, 4, {{0.2, 0.9}, {0.8, 0.9}}, 0.6});
  CHECK_THROWS_WITH_AS(to_measure_network(g), doctest::Contains("component sizes"),
                       std::runtime_error);
  auto net = to_measure_network(largest_component(g));
  CHECK(net.n() == 3);
}

TEST_CASE("W is symmetric with zero diagonal and satisfies the triangle inequality") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    auto f = simplify(normalize_field(gen_sine_mixture(40, 40, {1.5, 0}, {0, 2.5},
                                                       0.3, seed)),
                      0.12);
    auto g = sample_edges(extract_morse_graph(f), 0.1);
    auto net = to_measure_network(g);
    int n = net.n();
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
      int i = (int)rng.integer(n), j = (int)rng.integer(n), k = (int)rng.integer(n);
      CHECK(net.W(i, j) == net.W(j, i));
      CHECK(net.W(i, j) <= net.W(i, k) + net.W(k, j) + 1e-9);
    }
    for (int i = 0; i < n; ++i) CHECK(net.W(i, i) == 0.0);
    CHECK(std::abs(net.p.sum() - 1.0) < 1e-12);
    CHECK((net.p.array() > 0).all());
  }
}

TEST_CASE("junction nodes dominate sampled nodes in probability") {
  auto f = simplify(normalize_field(gen_sine_mixture(48, 48, {2.5, 0}, {0, 2.5}, 0, 0)),
                    0.07);
  auto g = sample_edges(extract_morse_graph(f), 0.06);
  auto net = to_measure_network(g);
  double min_junction = 1.0, max_sampled = 0.0;
  for (int i = 0; i < net.n(); ++i) {
    if (net.degrees[i] >= 3) min_junction = std::min(min_junction, net.p[i]);
    if (net.kinds[i] == NodeKind::Sampled) max_sampled = std::max(max_sampled, net.p[i]);
  }
  CHECK(min_junction > max_sampled);
}

TEST_CASE("normalize_pair scales attributes jointly and W per graph") {
  auto a = to_measure_network(four_cycle());
  auto b = a;
  auto [na, nb] = normalize_pair(a, b);

  // attribute diameter sqrt(2) across the pair becomes 1
  double cross = 0;
  for (int i = 0; i < na.n(); ++i)
    for (int j = 0; j < nb.n(); ++j)
      cross = std::max(cross, (na.F.row(i) - nb.F.row(j)).norm());
  CHECK(cross == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(na.W.maxCoeff() == 1.0);
  CHECK(nb.W.maxCoeff() == 1.0);

  // inputs untouched
  CHECK(a.W.maxCoeff() == 2.0);
  CHECK(a.F(2, 0) == 1.0);

  // idempotent
  auto [ma, mb] = normalize_pair(na, nb);
  CHECK((ma.F - na.F).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ma.W - na.W).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalize_pair rejects coincident singleton pairs") {
  MeasureNetwork a;
  a.p = Eigen::VectorXd::Ones(1);
  a.W = Eigen::MatrixXd::Zero(1, 1);
  a.F = Eigen::MatrixX2d::Zero(1, 2);
  a.kinds = {NodeKind::Critical};
  CHECK_THROWS_AS(normalize_pair(a, a), std::runtime_error);
}

TEST_CASE("uniform distribution sums to one exactly") {
  for (int n : {2, 3, 4, 7, 13}) {
    auto g = oracles::random_network(n, n);
    auto u = uniform_distribution(g);
    double s = 0;
    for (int i = 0; i < n; ++i) s += u.p[i];
    CHECK(s == 1.0);
    CHECK(u.p[0] == doctest::Approx(1.0 / n).epsilon(1e-15));
  }
}

TEST_CASE("degree and uniform distributions agree on regular graphs") {
  auto net = to_measure_network(four_cycle());
  auto u = uniform_distribution(net);
  for (int i = 0; i < 4; ++i)
    CHECK(net.p[i] == doctest::Approx(u.p[i]).epsilon(1e-15));
}

TEST_CASE("joint attribute scaling preserves the optimal coupling support") {
  for (uint64_t seed = 40; seed < 46; ++seed) {
    auto g1 = oracles::random_network(seed, 5);
    auto g2 = oracles::random_network(seed + 1000, 6);
    SolverConfig cfg;
    auto base = wasserstein(g1, g2, cfg);

    double c = 3.7;
    auto s1 = g1, s2 = g2;
    s1.F *= c;
    s2.F *= c;
    auto scaled = wasserstein(s1, s2, cfg);

    CHECK(scaled.distance == doctest::Approx(c * base.distance).epsilon(1e-9));
    for (int i = 0; i < base.coupling.matrix.rows(); ++i)
      for (int j = 0; j < base.coupling.matrix.cols(); ++j) {
        bool in_base = base.coupling.matrix(i, j) > 1e-12;
        bool in_scaled = scaled.coupling.matrix(i, j) > 1e-12;
        CHECK(in_base == in_scaled);
      }
  }
}
