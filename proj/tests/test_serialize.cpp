#include <doctest.h>

#include "morseot/serialize.hpp"
#include "oracles.hpp"

using namespace morseot;

TEST_CASE("morse graph JSON round trip") {
  auto f = simplify(normalize_field(gen_sine_mixture(32, 32, {1.5, 0}, {0, 1.5}, 0.2, 9)),
                    0.1);
  auto g = sample_edges(extract_morse_graph(f), 0.1);
  g.epsilon = 0.1;
  g.source = "test";
  auto j = morse_graph_to_json(g);
  auto h = morse_graph_from_json(j);
  REQUIRE(h.nodes.size() == g.nodes.size());
  REQUIRE(h.edges.size() == g.edges.size());
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(h.nodes[i].x == g.nodes[i].x);
    CHECK(h.nodes[i].y == g.nodes[i].y);
    CHECK(h.nodes[i].kind == g.nodes[i].kind);
  }
  for (size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(h.edges[i].a == g.edges[i].a);
    CHECK(h.edges[i].polyline == g.edges[i].polyline);
    CHECK(std::abs(h.edges[i].arc_length - g.edges[i].arc_length) < 1e-12);
  }
  CHECK(h.epsilon == 0.1);
  CHECK(h.source == "test");

  // schema essentials
  CHECK(j.contains("nodes"));
  CHECK(j.contains("edges"));
  CHECK(j["meta"]["epsilon"] == 0.1);
  CHECK(j["nodes"][0].contains("id"));
  CHECK(j["nodes"][0].contains("kind"));
  CHECK(j["edges"][0].contains("polyline"));
}

TEST_CASE("measure network JSON round trip") {
  auto g = oracles::random_network(3, 6);
  auto j = network_to_json(g);
  CHECK(j.contains("p"));
  CHECK(j.contains("W"));
  CHECK(j.contains("F"));
  auto h = network_from_json(j);
  CHECK((h.p - g.p).cwiseAbs().maxCoeff() == 0.0);
  CHECK((h.W - g.W).cwiseAbs().maxCoeff() == 0.0);
  CHECK((h.F - g.F).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("distance result JSON carries the documented keys") {
  auto a = oracles::random_network(5, 4);
  auto b = oracles::random_network(6, 5);
  auto [g1, g2] = normalize_pair(a, b);
  auto res = fused_gw(g1, g2);
  auto j = distance_result_to_json(res);
  for (auto key : {"distance", "objective", "converged", "iterations", "coupling"})
    CHECK(j.contains(key));
  CHECK(j["coupling"].size() == 4);
}

TEST_CASE("distance matrix CSV round trip") {
  DistanceMatrix d;
  d.labels = {"a", "b", "c"};
  d.values.resize(3, 3);
  d.values << 0, 1.25, 2.5, 1.25, 0, 0.125, 2.5, 0.125, 0;
  auto text = distance_matrix_to_csv(d);
  auto e = distance_matrix_from_csv(text);
  CHECK(e.labels == d.labels);
  CHECK((e.values - d.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("labels CSV round trip") {
  auto text = labels_to_csv({"i0", "i1"}, {"x", "y"});
  auto [ids, classes] = labels_from_csv(text);
  CHECK(ids == std::vector<std::string>{"i0", "i1"});
  CHECK(classes == std::vector<std::string>{"x", "y"});
}

TEST_CASE("format_double survives a round trip") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789, -0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("config hash is stable and content sensitive") {
  nlohmann::json a = {{"x", 1}, {"y", "z"}};
  nlohmann::json b = {{"x", 2}, {"y", "z"}};
  CHECK(config_hash(a) == config_hash(a));
  CHECK(config_hash(a) != config_hash(b));
}
