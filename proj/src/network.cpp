#include "morseot/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace morseot {

MeasureNetwork to_measure_network(const MorseGraph& g) {
  int n = (int)g.nodes.size();
  if (n == 0) throw std::runtime_error("empty graph");

  auto comps = connected_components(g);
  if (comps.size() > 1) {
    std::ostringstream msg;
    msg << "disconnected graph: component sizes";
    for (size_t i = 0; i < comps.size(); ++i)
      msg << (i ? ", " : " ") << comps[i].size();
    throw std::runtime_error(msg.str());
  }

  std::unordered_map<int, int> index_of;
  for (int i = 0; i < n; ++i) index_of[g.nodes[i].id] = i;

  std::vector<int> degrees(n, 0);
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : g.edges) {
    int a = index_of.at(e.a), b = index_of.at(e.b);
    degrees[a] += 1;
    degrees[b] += 1;
    if (a != b) {
      adj[a].push_back({b, e.arc_length});
      adj[b].push_back({a, e.arc_length});
    }
  }

  MeasureNetwork net;
  net.source = g.source;
  net.p.resize(n);
  long long total = 0;
  for (int d : degrees) total += d;
  if (total == 0) throw std::runtime_error("graph has no edges");
  for (int i = 0; i < n; ++i) net.p[i] = double(degrees[i]) / double(total);

  net.F.resize(n, 2);
  net.kinds.resize(n);
  for (int i = 0; i < n; ++i) {
    net.F(i, 0) = g.nodes[i].x;
    net.F(i, 1) = g.nodes[i].y;
    net.kinds[i] = g.nodes[i].kind;
  }
  net.degrees = degrees;

  // all-pairs geodesics: Dijkstra from every node, symmetrized exactly by
  // copying the source-i values into row and column i
  net.W = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> dist(n);
  using Entry = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    dist[s] = 0.0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (auto [u, w] : adj[v]) {
        double nd = d + w;
        if (nd < dist[u]) {
          dist[u] = nd;
          pq.push({nd, u});
        }
      }
    }
    for (int j = s + 1; j < n; ++j) {
      net.W(s, j) = dist[j];
      net.W(j, s) = dist[j];
    }
  }
  return net;
}

std::pair<MeasureNetwork, MeasureNetwork> normalize_pair(
    const MeasureNetwork& g1, const MeasureNetwork& g2) {
  if (g1.n() == 0 || g2.n() == 0) throw std::runtime_error("empty network");
  double cross_max = 0.0;
  for (int i = 0; i < g1.n(); ++i) {
    for (int j = 0; j < g2.n(); ++j) {
      double dx = g1.F(i, 0) - g2.F(j, 0);
      double dy = g1.F(i, 1) - g2.F(j, 1);
      cross_max = std::max(cross_max, std::sqrt(dx * dx + dy * dy));
    }
  }
  if (cross_max == 0.0)
    throw std::runtime_error("all cross-pair attribute distances are zero");
  // already-normalized pairs pass through unchanged (exact fixed point)
  if (std::abs(cross_max - 1.0) < 1e-12) cross_max = 1.0;

  MeasureNetwork a = g1, b = g2;
  if (cross_max != 1.0) {
    a.F /= cross_max;
    b.F /= cross_max;
  }
  double w1max = a.W.size() ? a.W.maxCoeff() : 0.0;
  double w2max = b.W.size() ? b.W.maxCoeff() : 0.0;
  if (w1max > 0 && w1max != 1.0) a.W /= w1max;
  if (w2max > 0 && w2max != 1.0) b.W /= w2max;
  return {std::move(a), std::move(b)};
}

MeasureNetwork uniform_distribution(const MeasureNetwork& g) {
  MeasureNetwork out = g;
  int n = g.n();
  double u = 1.0 / n;
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    out.p[i] = u;
    acc += u;
  }
  out.p[n - 1] = 1.0 - acc;  // exact: acc is within [1/2, 1) for n >= 2
  return out;
}

}  // namespace morseot
