#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "morseot/field.hpp"
#include "morseot/rng.hpp"
#include "oracles.hpp"

using namespace morseot;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("load_field parses a plain-text grid bit-exactly") {
  auto p = temp_file("morseot_f1.txt", "3 3\n1 2 3\n4 5 6\n7 8 9\n");
  auto f = load_field(p.string(), FieldFormat::PlainText);
  CHECK(f.rows == 3);
  CHECK(f.cols == 3);
  for (int i = 0; i < 9; ++i) CHECK(f.values[i] == double(i + 1));
}

TEST_CASE("load_field rejects grids smaller than 2x2") {
  auto p = temp_file("morseot_f2.csv", "1,2,3\n");
  CHECK_THROWS_WITH_AS(load_field(p.string(), FieldFormat::Csv),
                       doctest::Contains("at least 2x2"), std::runtime_error);
}

TEST_CASE("load_field names the offending row") {
  auto p = temp_file("morseot_f3.txt", "3 2\n1 2\n3 abc\n5 6\n");
  CHECK_THROWS_WITH_AS(load_field(p.string(), FieldFormat::PlainText),
                       doctest::Contains("row 2"), std::runtime_error);
}

TEST_CASE("load_field rejects ragged rows") {
  auto p = temp_file("morseot_f4.csv", "1,2,3\n4,5\n7,8,9\n");
  CHECK_THROWS_AS(load_field(p.string(), FieldFormat::Csv), std::runtime_error);
}

TEST_CASE("save/load round trip is exact") {
  auto f = gen_sine_mixture(8, 9, {1.5, 0.0}, {0.0, 2.0}, 0.3, 42);
  auto p = fs::temp_directory_path() / "morseot_f5.txt";
  save_field(f, p.string(), FieldFormat::PlainText);
  auto g = load_field(p.string(), FieldFormat::PlainText);
  REQUIRE(g.values.size() == f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i) CHECK(g.values[i] == f.values[i]);
}

TEST_CASE("normalize_field rescales to [0,1]") {
  auto f = make_field(2, 3, {0, 5, 10, 0, 5, 10});
  auto g = normalize_field(f);
  CHECK(g.values[0] == 0.0);
  CHECK(g.values[1] == 0.5);
  CHECK(g.values[2] == 1.0);
  CHECK(g.vmin == 0.0);
  CHECK(g.vmax == 1.0);
}

TEST_CASE("normalize_field is idempotent and order-preserving") {
  auto f = gen_sine_mixture(16, 16, {1, 0}, {0, 1}, 0.2, 7);
  auto g = normalize_field(f);
  auto h = normalize_field(g);
  for (size_t i = 0; i < g.values.size(); ++i) CHECK(h.values[i] == g.values[i]);
  for (size_t i = 0; i + 1 < g.values.size(); ++i) {
    bool order_f = f.values[i] < f.values[i + 1];
    bool order_g = g.values[i] < g.values[i + 1];
    CHECK(order_f == order_g);
  }
}

TEST_CASE("normalize_field rejects constant fields") {
  auto f = make_field(2, 2, {3.0, 3.0, 3.0, 3.0});
  CHECK_THROWS_WITH_AS(normalize_field(f), doctest::Contains("constant"),
                       std::runtime_error);
}

TEST_CASE("sine generator is deterministic and seed-independent at zero noise") {
  auto a = gen_sine_mixture(12, 10, {2, 1}, {0, 3}, 0.0, 1);
  auto b = gen_sine_mixture(12, 10, {2, 1}, {0, 3}, 0.0, 999);
  for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("sine generator with noise is a pure function of (params, seed)") {
  auto a = gen_sine_mixture(12, 10, {2, 1}, {0, 3}, 0.4, 5);
  auto b = gen_sine_mixture(12, 10, {2, 1}, {0, 3}, 0.4, 5);
  auto c = gen_sine_mixture(12, 10, {2, 1}, {0, 3}, 0.4, 6);
  bool any_diff = false;
  for (size_t i = 0; i < a.values.size(); ++i) {
    CHECK(a.values[i] == b.values[i]);
    if (a.values[i] != c.values[i]) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("single centered Gaussian is rotation invariant") {
  std::vector<GaussianComponent> comps = {{0.5, 0.5, 0.1, 1.0}};
  auto a = gen_gaussian_mixture(16, 16, comps, 0.0, 0.0, 0);
  auto b = gen_gaussian_mixture(16, 16, comps, 1.234, 0.0, 0);
  for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("rotation by 2pi reduces to rotation by zero") {
  std::vector<GaussianComponent> comps = {{0.3, 0.5, 0.1, 1.0},
                                          {0.7, 0.5, 0.1, 1.0}};
  auto a = gen_gaussian_mixture(16, 16, comps, 0.0, 0.0, 0);
  auto b = gen_gaussian_mixture(16, 16, comps, 2.0 * 3.14159265358979323846, 0.0, 0);
  for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("two separated Gaussians give exactly 2 strict local maxima") {
  std::vector<GaussianComponent> comps = {{0.3, 0.5, 0.1, 1.0},
                                          {0.7, 0.5, 0.1, 1.0}};
  auto f = gen_gaussian_mixture(64, 64, comps, 0.0, 0.0, 0);
  auto maxima = oracles::scan_local_maxima(f);
  CHECK(maxima.size() == 2);
}

TEST_CASE("gaussian generator rejects centers outside the domain") {
  std::vector<GaussianComponent> comps = {{1.2, 0.5, 0.1, 1.0}};
  CHECK_THROWS_AS(gen_gaussian_mixture(8, 8, comps, 0, 0, 0), std::runtime_error);
}

TEST_CASE("euclidean scalar distance basics") {
  auto f = gen_sine_mixture(10, 11, {1, 0}, {0, 1}, 0.0, 0);
  CHECK(euclidean_scalar_distance(f, f) == 0.0);

  auto g = f;
  g.values[17] += 0.25;
  g.update_range();
  CHECK(euclidean_scalar_distance(f, g) == doctest::Approx(0.25).epsilon(1e-12));

  auto h = f;
  for (auto& v : h.values) v += 2.0;
  h.update_range();
  CHECK(euclidean_scalar_distance(f, h) ==
        doctest::Approx(2.0 * std::sqrt(110.0)).epsilon(1e-12));

  auto w = gen_sine_mixture(10, 12, {1, 0}, {0, 1}, 0.0, 0);
  CHECK_THROWS_AS(euclidean_scalar_distance(f, w), std::runtime_error);
}

TEST_CASE("euclidean scalar distance is a metric on random triples") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(36), b(36), c(36);
    for (int i = 0; i < 36; ++i) {
      a[i] = rng.unit();
      b[i] = rng.unit();
      c[i] = rng.unit();
    }
    auto fa = make_field(6, 6, a), fb = make_field(6, 6, b), fc = make_field(6, 6, c);
    double dab = euclidean_scalar_distance(fa, fb);
    double dba = euclidean_scalar_distance(fb, fa);
    double dac = euclidean_scalar_distance(fa, fc);
    double dcb = euclidean_scalar_distance(fc, fb);
    CHECK(dab == dba);
    CHECK(dab <= dac + dcb + 1e-12);
    CHECK(euclidean_scalar_distance(fa, fa) == 0.0);
  }
}
