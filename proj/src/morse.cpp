#include "morseot/morse.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace morseot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// cyclic 8-neighborhood ring: E, NE, N, NW, W, SW, S, SE
constexpr int kRingDr[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kRingDc[8] = {1, 1, 0, -1, -1, -1, 0, 1};

struct Grid {
  const ScalarField& f;
  int rows, cols;
  explicit Grid(const ScalarField& field)
      : f(field), rows(field.rows), cols(field.cols) {}

  int idx(int r, int c) const { return r * cols + c; }
  bool inside(int r, int c) const {
    return r >= 0 && r < rows && c >= 0 && c < cols;
  }
  // simulation of simplicity: (value, index) lexicographic
  bool greater(int a, int b) const {
    double va = f.values[a], vb = f.values[b];
    return va != vb ? va > vb : a > b;
  }
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void link(int root_child, int root_parent) { parent[root_child] = root_parent; }
};

std::vector<int> vertices_descending(const Grid& g) {
  std::vector<int> order(size_t(g.rows) * g.cols);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double va = g.f.values[a], vb = g.f.values[b];
    return va != vb ? va > vb : a > b;
  });
  return order;
}

// Merge-tree pass shared by persistence_pairs and simplify. Also reports the
// maxima (component creators) in activation order.
struct MergeInfo {
  std::vector<PersistencePair> pairs;
  std::vector<int> maxima;  // grid indices
};

MergeInfo merge_tree(const Grid& g) {
  MergeInfo out;
  int n = g.rows * g.cols;
  UnionFind uf(n);
  std::vector<int> comp_max(n, -1);  // representative maximum per root
  std::vector<char> active(n, 0);
  auto order = vertices_descending(g);

  for (int v : order) {
    active[v] = 1;
    int r = v / g.cols, c = v % g.cols;
    bool created = true;
    for (int k = 0; k < 8; ++k) {
      int nr = r + kRingDr[k], nc = c + kRingDc[k];
      if (!g.inside(nr, nc)) continue;
      int u = g.idx(nr, nc);
      if (!active[u]) continue;
      created = false;
      int ru = uf.find(u), rv = uf.find(v);
      if (ru == rv) continue;
      if (comp_max[rv] == -1) {
        // v had no component yet; it joins u's
        uf.link(rv, ru);
        continue;
      }
      // two genuine components meet at v: the younger maximum dies here
      int mu = comp_max[ru], mv = comp_max[rv];
      int elder = g.greater(mu, mv) ? mu : mv;
      int younger = elder == mu ? mv : mu;
      out.pairs.push_back({younger / g.cols, younger % g.cols, r, c,
                           g.f.values[younger] - g.f.values[v]});
      uf.link(elder == mu ? rv : ru, elder == mu ? ru : rv);
      comp_max[uf.find(v)] = elder;
    }
    if (created) {
      comp_max[v] = v;
      out.maxima.push_back(v);
    } else if (comp_max[uf.find(v)] == -1) {
      // joined exactly one existing component; inherit its maximum
      // (comp_max lives on the root, which was u's root, already set)
    }
  }
  return out;
}

}  // namespace

std::vector<CriticalPoint> classify_critical_points(const ScalarField& f) {
  Grid g(f);
  std::vector<CriticalPoint> out;
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      int v = g.idx(r, c);
      bool present[8], lower[8];
      bool any_upper = false, any_lower = false;
      for (int k = 0; k < 8; ++k) {
        int nr = r + kRingDr[k], nc = c + kRingDc[k];
        present[k] = g.inside(nr, nc);
        lower[k] = false;
        if (!present[k]) continue;
        int u = g.idx(nr, nc);
        if (g.greater(v, u)) {
          lower[k] = true;
          any_lower = true;
        } else {
          any_upper = true;
        }
      }
      CriticalKind kind;
      if (!any_upper) {
        kind = CriticalKind::Maximum;
      } else if (!any_lower) {
        kind = CriticalKind::Minimum;
      } else {
        // components of the lower link in the cyclic ring; a missing
        // neighbor breaks the ring just like a non-lower one
        int comps = 0;
        for (int k = 0; k < 8; ++k) {
          int prev = (k + 7) % 8;
          bool cur_on = present[k] && lower[k];
          bool prev_on = present[prev] && lower[prev];
          if (cur_on && !prev_on) ++comps;
        }
        if (comps < 2) continue;  // regular vertex
        kind = CriticalKind::Saddle;
      }
      out.push_back({r, c, kind, f.values[size_t(v)], kInf});
    }
  }

  // attach merge persistence to maxima and their paired saddles
  auto info = merge_tree(g);
  std::unordered_map<long long, double> pers;
  auto key = [&](int r, int c) { return (long long)r * f.cols + c; };
  for (auto& p : info.pairs) {
    pers[key(p.max_row, p.max_col)] = p.persistence;
    auto it = pers.find(key(p.saddle_row, p.saddle_col));
    if (it == pers.end() || it->second < p.persistence)
      pers[key(p.saddle_row, p.saddle_col)] = p.persistence;
  }
  for (auto& cp : out) {
    auto it = pers.find(key(cp.row, cp.col));
    if (it != pers.end() && cp.kind != CriticalKind::Minimum)
      cp.persistence = it->second;
  }
  return out;
}

CriticalCensus census(const std::vector<CriticalPoint>& cps) {
  CriticalCensus c;
  for (auto& cp : cps) {
    switch (cp.kind) {
      case CriticalKind::Minimum: ++c.minima; break;
      case CriticalKind::Saddle: ++c.saddles; break;
      case CriticalKind::Maximum: ++c.maxima; break;
    }
  }
  return c;
}

std::vector<PersistencePair> persistence_pairs(const ScalarField& f) {
  Grid g(f);
  return merge_tree(g).pairs;
}

std::vector<std::pair<double, int>> persistence_graph(
    const ScalarField& f, const std::vector<double>& eps_grid) {
  for (size_t i = 1; i < eps_grid.size(); ++i)
    if (eps_grid[i] < eps_grid[i - 1])
      throw std::runtime_error("epsilon grid must be sorted ascending");
  auto pairs = persistence_pairs(f);
  std::vector<std::pair<double, int>> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    int count = 1;  // the global maximum always survives
    for (auto& p : pairs)
      if (p.persistence >= eps) ++count;
    out.emplace_back(eps, count);
  }
  return out;
}

namespace {

// Widest-path ("morphological reconstruction") flattening: every vertex gets
// the highest level at which it connects to a surviving maximum. Flattened
// plateaus are then tilted by tiny BFS offsets so iterated ascent never
// stalls and no spurious maxima appear.
ScalarField flatten_once(const ScalarField& f, const std::vector<int>& survivors) {
  Grid g(f);
  int n = g.rows * g.cols;

  // cap[v] = bottleneck vertex of the best path to a survivor; compare by
  // (value, index) order
  std::vector<int> cap(n, -1);
  auto cap_less = [&](int a, int b) {  // order on bottleneck vertices
    double va = f.values[a], vb = f.values[b];
    return va != vb ? va < vb : a < b;
  };
  using QEntry = std::pair<double, int>;  // (bottleneck value, vertex) keyed by cap
  auto cmp = [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
    return cap_less(a.first, b.first);  // max-heap on bottleneck order
  };
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                      decltype(cmp)>
      pq(cmp);
  (void)sizeof(QEntry);
  for (int m : survivors) {
    cap[m] = m;
    pq.push({m, m});
  }
  while (!pq.empty()) {
    auto [cv, v] = pq.top();
    pq.pop();
    if (cap[v] != cv) continue;  // stale
    int r = v / g.cols, c = v % g.cols;
    for (int k = 0; k < 8; ++k) {
      int nr = r + kRingDr[k], nc = c + kRingDc[k];
      if (!g.inside(nr, nc)) continue;
      int u = g.idx(nr, nc);
      int cand = cap_less(cv, u) ? cv : u;  // min(cap[v], order(u))
      if (cap[u] == -1 || cap_less(cap[u], cand)) {
        cap[u] = cand;
        pq.push({cand, u});
      }
    }
  }

  ScalarField out = f;
  std::vector<char> changed(n, 0);
  for (int v = 0; v < n; ++v) {
    if (cap[v] != v) {
      changed[v] = 1;
      out.values[v] = f.values[cap[v]];
    }
  }

  // Drain each changed region away from its outlet: BFS seeds are changed
  // vertices adjacent to an unchanged vertex at or above the plateau level or
  // to a changed vertex of a strictly higher plateau.
  const double delta = 1e-12;
  std::vector<int> rank(n, -1);
  std::deque<int> bfs;
  for (int v = 0; v < n; ++v) {
    if (!changed[v]) continue;
    double lam = out.values[v];
    int r = v / g.cols, c = v % g.cols;
    for (int k = 0; k < 8 && rank[v] == -1; ++k) {
      int nr = r + kRingDr[k], nc = c + kRingDc[k];
      if (!g.inside(nr, nc)) continue;
      int u = g.idx(nr, nc);
      if (!changed[u] ? f.values[u] >= lam : out.values[u] > lam) {
        rank[v] = 1;
        bfs.push_back(v);
      }
    }
  }
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    double lam = out.values[v];
    int r = v / g.cols, c = v % g.cols;
    for (int k = 0; k < 8; ++k) {
      int nr = r + kRingDr[k], nc = c + kRingDc[k];
      if (!g.inside(nr, nc)) continue;
      int u = g.idx(nr, nc);
      if (changed[u] && rank[u] == -1 && out.values[u] == lam) {
        rank[u] = rank[v] + 1;
        bfs.push_back(u);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!changed[v]) continue;
    // unreachable pockets (should not happen) fall back to a fixed offset
    int rk = rank[v] == -1 ? 1 : rank[v];
    out.values[v] -= delta * rk;
  }
  out.update_range();
  return out;
}

}  // namespace

ScalarField simplify(const ScalarField& f, double epsilon) {
  if (epsilon < 0) throw std::runtime_error("epsilon must be >= 0");
  ScalarField cur = f;
  if (epsilon == 0) return cur;
  for (int round = 0; round < 32; ++round) {
    Grid g(cur);
    auto info = merge_tree(g);
    std::unordered_set<int> cancelled;
    for (auto& p : info.pairs)
      if (p.persistence < epsilon)
        cancelled.insert(p.max_row * cur.cols + p.max_col);
    if (cancelled.empty()) return cur;
    std::vector<int> survivors;
    for (int m : info.maxima)
      if (!cancelled.count(m)) survivors.push_back(m);
    cur = flatten_once(cur, survivors);
  }
  throw std::runtime_error("simplify did not reach a fixed point");
}

std::vector<int> descending_labels(const ScalarField& f) {
  Grid g(f);
  int n = g.rows * g.cols;
  auto order = vertices_descending(g);
  std::vector<int> label(n, -1);
  for (int v : order) {
    int r = v / g.cols, c = v % g.cols;
    int best = -1;
    double best_slope = 0.0;
    for (int k = 0; k < 8; ++k) {
      int nr = r + kRingDr[k], nc = c + kRingDc[k];
      if (!g.inside(nr, nc)) continue;
      int u = g.idx(nr, nc);
      if (!g.greater(u, v)) continue;
      double dist = (kRingDr[k] != 0 && kRingDc[k] != 0) ? 1.4142135623730951 : 1.0;
      double slope = (f.values[u] - f.values[v]) / dist;
      if (best == -1 || slope > best_slope ||
          (slope == best_slope && u > best)) {
        best = u;
        best_slope = slope;
      }
    }
    label[v] = best == -1 ? v : label[best];
  }
  return label;
}

namespace {

struct SkeletonLinks {
  std::vector<std::vector<int>> adj;  // neighbor grid indices, sorted
};

// Zhang-Suen thinning; protected vertices are never removed.
void thin_mask(std::vector<char>& mask, const std::vector<char>& protect,
               int rows, int cols) {
  auto at = [&](int r, int c) -> int {
    return (r >= 0 && r < rows && c >= 0 && c < cols) ? mask[r * cols + c] : 0;
  };
  bool changed = true;
  std::vector<int> kill;
  while (changed) {
    changed = false;
    for (int sub = 0; sub < 2; ++sub) {
      kill.clear();
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          int v = r * cols + c;
          if (!mask[v] || protect[v]) continue;
          // p2..p9 clockwise starting north
          int p[8] = {at(r - 1, c),     at(r - 1, c + 1), at(r, c + 1),
                      at(r + 1, c + 1), at(r + 1, c),     at(r + 1, c - 1),
                      at(r, c - 1),     at(r - 1, c - 1)};
          int b = 0;
          for (int k = 0; k < 8; ++k) b += p[k];
          if (b < 2 || b > 6) continue;
          int a = 0;
          for (int k = 0; k < 8; ++k)
            if (p[k] == 0 && p[(k + 1) % 8] == 1) ++a;
          if (a != 1) continue;
          if (sub == 0) {
            if (p[0] * p[2] * p[4] != 0) continue;
            if (p[2] * p[4] * p[6] != 0) continue;
          } else {
            if (p[0] * p[2] * p[6] != 0) continue;
            if (p[0] * p[4] * p[6] != 0) continue;
          }
          kill.push_back(v);
        }
      }
      for (int v : kill) mask[v] = 0;
      if (!kill.empty()) changed = true;
    }
  }
}

// 8-adjacency between skeleton vertices; a diagonal link is dropped when
// either orthogonal bridge vertex is itself on the skeleton.
SkeletonLinks build_links(const std::vector<char>& mask, int rows, int cols) {
  SkeletonLinks out;
  out.adj.assign(size_t(rows) * cols, {});
  auto on = [&](int r, int c) -> bool {
    return r >= 0 && r < rows && c >= 0 && c < cols && mask[r * cols + c];
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!mask[r * cols + c]) continue;
      int v = r * cols + c;
      const int dr[4] = {0, 1, 1, 1};
      const int dc[4] = {1, -1, 0, 1};
      for (int k = 0; k < 4; ++k) {
        int nr = r + dr[k], nc = c + dc[k];
        if (!on(nr, nc)) continue;
        if (dr[k] != 0 && dc[k] != 0 && (on(r, nc) || on(nr, c))) continue;
        int u = nr * cols + nc;
        out.adj[v].push_back(u);
        out.adj[u].push_back(v);
      }
    }
  }
  for (auto& a : out.adj) std::sort(a.begin(), a.end());
  return out;
}

double polyline_length(const std::vector<std::pair<double, double>>& pl) {
  double len = 0.0;
  for (size_t i = 1; i < pl.size(); ++i) {
    double dx = pl[i].first - pl[i - 1].first;
    double dy = pl[i].second - pl[i - 1].second;
    len += std::sqrt(dx * dx + dy * dy);
  }
  return len;
}

}  // namespace

MorseGraph extract_morse_graph(const ScalarField& f) {
  Grid g(f);
  int rows = g.rows, cols = g.cols;
  int n = rows * cols;

  auto labels = descending_labels(f);
  std::unordered_set<int> distinct(labels.begin(), labels.end());

  // Passes between surviving manifolds. The raw 8-neighborhood saddle census
  // of a noisy field is dominated by sub-epsilon artifacts; the merge saddles
  // of the (already simplified) field are exactly the passes that bound the
  // remaining descending manifolds.
  auto pairs = merge_tree(g).pairs;
  std::unordered_set<int> merge_saddles;
  for (auto& p : pairs) merge_saddles.insert(p.saddle_row * cols + p.saddle_col);

  // minima by direct scan (empty lower link under the tie-breaking order)
  std::vector<int> minima;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = g.idx(r, c);
      bool is_min = true;
      for (int k = 0; k < 8 && is_min; ++k) {
        int nr = r + kRingDr[k], nc = c + kRingDc[k];
        if (!g.inside(nr, nc)) continue;
        if (g.greater(v, g.idx(nr, nc))) is_min = false;
      }
      if (is_min) minima.push_back(v);
    }
  }

  // skeleton mask: manifold boundaries plus the domain outline
  std::vector<char> mask(n, 0), protect(n, 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (r == 0 || r == rows - 1 || c == 0 || c == cols - 1) {
        mask[v] = 1;
        protect[v] = 1;  // keep the outline intact
        continue;
      }
      for (int k = 0; k < 8 && !mask[v]; ++k) {
        int u = g.idx(r + kRingDr[k], c + kRingDc[k]);
        if (labels[u] != labels[v]) mask[v] = 1;
      }
    }
  }
  for (int s : merge_saddles)
    if (mask[s]) protect[s] = 1;

  thin_mask(mask, protect, rows, cols);

  // erode spur stubs: watershed boundaries are closed curves, so unprotected
  // loose ends are thinning artifacts
  {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!mask[v] || protect[v]) continue;
        int r = v / cols, c = v % cols;
        int nb = 0;
        for (int k = 0; k < 8; ++k) {
          int nr = r + kRingDr[k], nc = c + kRingDc[k];
          if (g.inside(nr, nc) && mask[g.idx(nr, nc)]) ++nb;
        }
        if (nb <= 1) {
          mask[v] = 0;
          changed = true;
        }
      }
    }
  }

  auto links = build_links(mask, rows, cols);

  std::vector<int> degree(n, 0);
  for (int v = 0; v < n; ++v) degree[v] = (int)links.adj[v].size();

  // node candidates: junctions and endpoints, minima on the skeleton,
  // merge saddles snapped within a 2-cell radius
  std::vector<char> is_node(n, 0);
  for (int v = 0; v < n; ++v)
    if (mask[v] && degree[v] >= 1 && degree[v] != 2) is_node[v] = 1;
  for (int v : minima)
    if (mask[v] && degree[v] >= 1) is_node[v] = 1;
  for (int s : merge_saddles) {
    if (mask[s] && degree[s] >= 1) {
      is_node[s] = 1;
      continue;
    }
    int sr = s / cols, sc = s % cols;
    int best = -1;
    double best_d = 4.0 + 1e-9;  // squared radius 2
    for (int dr = -2; dr <= 2; ++dr) {
      for (int dc = -2; dc <= 2; ++dc) {
        int nr = sr + dr, nc = sc + dc;
        if (!g.inside(nr, nc)) continue;
        int u = g.idx(nr, nc);
        if (!mask[u] || degree[u] < 1) continue;
        double d = dr * dr + dc * dc;
        if (d < best_d || (d == best_d && u < best)) {
          best = u;
          best_d = d;
        }
      }
    }
    if (best >= 0) is_node[best] = 1;
  }

  // trace polyline edges between nodes
  MorseGraph out;
  out.boundary_only = distinct.size() <= 1;

  auto pos = [&](int v) -> std::pair<double, double> {
    int r = v / cols, c = v % cols;
    return {double(c) / (cols - 1), double(r) / (rows - 1)};
  };

  std::unordered_map<int, int> node_id;
  auto ensure_node = [&](int v) {
    auto it = node_id.find(v);
    if (it != node_id.end()) return it->second;
    int id = (int)out.nodes.size();
    auto [x, y] = pos(v);
    out.nodes.push_back({id, x, y, NodeKind::Critical});
    node_id.emplace(v, id);
    return id;
  };

  std::unordered_set<long long> visited;  // undirected link keys
  auto link_key = [n](int a, int b) {
    return (long long)std::min(a, b) * n + std::max(a, b);
  };

  auto trace_from = [&](int a, int first) {
    std::vector<int> path = {a, first};
    visited.insert(link_key(a, first));
    int prev = a, cur = first;
    while (!is_node[cur]) {
      int next = -1;
      for (int u : links.adj[cur])
        if (u != prev) next = u;
      if (next == -1) break;  // dead end that was not flagged (isolated pair)
      visited.insert(link_key(cur, next));
      prev = cur;
      cur = next;
      path.push_back(cur);
      if (cur == a && is_node[cur]) break;
    }
    GraphEdge e;
    e.a = ensure_node(a);
    e.b = ensure_node(cur);
    e.polyline.reserve(path.size());
    for (int v : path) e.polyline.push_back(pos(v));
    e.arc_length = polyline_length(e.polyline);
    out.edges.push_back(std::move(e));
  };

  std::vector<int> node_vertices;
  for (int v = 0; v < n; ++v)
    if (is_node[v]) node_vertices.push_back(v);
  for (int v : node_vertices) ensure_node(v);

  for (int v : node_vertices)
    for (int u : links.adj[v])
      if (!visited.count(link_key(v, u))) trace_from(v, u);

  // leftover pure cycles: anchor each at its smallest vertex
  for (int v = 0; v < n; ++v) {
    if (!mask[v] || is_node[v]) continue;
    bool open = false;
    for (int u : links.adj[v])
      if (!visited.count(link_key(v, u))) open = true;
    if (!open) continue;
    is_node[v] = 1;
    ensure_node(v);
    for (int u : links.adj[v])
      if (!visited.count(link_key(v, u))) trace_from(v, u);
  }

  return out;
}

MorseGraph sample_edges(const MorseGraph& g, double spacing) {
  if (!(spacing > 0)) throw std::runtime_error("spacing must be > 0");
  MorseGraph out;
  out.nodes = g.nodes;
  out.epsilon = g.epsilon;
  out.source = g.source;
  out.boundary_only = g.boundary_only;
  int next_id = 0;
  for (auto& nd : g.nodes) next_id = std::max(next_id, nd.id + 1);

  for (const auto& e : g.edges) {
    double len = e.arc_length;
    int pieces = (int)std::floor(len / spacing - 1e-12) + 1;
    std::vector<double> cut_lengths;  // interior cut positions along the arc
    for (int k = 1; k < pieces; ++k) cut_lengths.push_back(k * spacing);
    if (cut_lengths.empty()) {
      out.edges.push_back(e);
      continue;
    }

    // walk the polyline once, splitting at each cut
    std::vector<std::pair<double, double>> segment = {e.polyline.front()};
    int prev_node = e.a;
    size_t cut = 0;
    double walked = 0.0;
    for (size_t i = 1; i < e.polyline.size(); ++i) {
      auto p0 = e.polyline[i - 1];
      auto p1 = e.polyline[i];
      double dx = p1.first - p0.first, dy = p1.second - p0.second;
      double seg_len = std::sqrt(dx * dx + dy * dy);
      double consumed = 0.0;
      while (cut < cut_lengths.size() &&
             cut_lengths[cut] <= walked + seg_len + 1e-15) {
        double t = seg_len > 0 ? (cut_lengths[cut] - walked) / seg_len : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        std::pair<double, double> q = {p0.first + t * dx, p0.second + t * dy};
        segment.push_back(q);
        int nid = next_id++;
        out.nodes.push_back({nid, q.first, q.second, NodeKind::Sampled});
        GraphEdge sub;
        sub.a = prev_node;
        sub.b = nid;
        sub.polyline = segment;
        sub.arc_length = polyline_length(segment);
        out.edges.push_back(std::move(sub));
        segment = {q};
        prev_node = nid;
        ++cut;
        consumed = t * seg_len;
        (void)consumed;
      }
      segment.push_back(p1);
      walked += seg_len;
    }
    GraphEdge last;
    last.a = prev_node;
    last.b = e.b;
    last.polyline = segment;
    last.arc_length = polyline_length(segment);
    out.edges.push_back(std::move(last));
  }
  return out;
}

std::vector<uint8_t> rasterize_graph(const MorseGraph& g, int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::runtime_error("raster grid must be positive");
  std::vector<uint8_t> mask(size_t(rows) * cols, 0);
  double cw = 1.0 / cols, ch = 1.0 / rows;
  auto cell_of = [&](double x, double y) {
    int c = std::clamp((int)std::floor(x / cw), 0, cols - 1);
    int r = std::clamp((int)std::floor(y / ch), 0, rows - 1);
    return std::pair<int, int>{r, c};
  };
  auto mark_segment = [&](std::pair<double, double> a, std::pair<double, double> b) {
    auto [r0, c0] = cell_of(a.first, a.second);
    auto [r1, c1] = cell_of(b.first, b.second);
    mask[size_t(r0) * cols + c0] = 1;
    double dx = b.first - a.first, dy = b.second - a.second;
    int stepc = dx > 0 ? 1 : -1, stepr = dy > 0 ? 1 : -1;
    double tmaxx = kInf, tmaxy = kInf, tdx = kInf, tdy = kInf;
    if (dx != 0) {
      double nx = (dx > 0 ? (c0 + 1) * cw : c0 * cw);
      tmaxx = (nx - a.first) / dx;
      tdx = cw / std::abs(dx);
    }
    if (dy != 0) {
      double ny = (dy > 0 ? (r0 + 1) * ch : r0 * ch);
      tmaxy = (ny - a.second) / dy;
      tdy = ch / std::abs(dy);
    }
    int r = r0, c = c0;
    int guard = 2 * (rows + cols) + 8;
    while ((r != r1 || c != c1) && guard-- > 0) {
      if (tmaxx < tmaxy) {
        c += stepc;
        tmaxx += tdx;
      } else {
        r += stepr;
        tmaxy += tdy;
      }
      if (r < 0 || r >= rows || c < 0 || c >= cols) break;
      mask[size_t(r) * cols + c] = 1;
    }
  };
  for (const auto& e : g.edges)
    for (size_t i = 1; i < e.polyline.size(); ++i)
      mark_segment(e.polyline[i - 1], e.polyline[i]);
  return mask;
}

double euclidean_complex_distance(const MorseGraph& g1, const MorseGraph& g2,
                                  int rows, int cols) {
  auto m1 = rasterize_graph(g1, rows, cols);
  auto m2 = rasterize_graph(g2, rows, cols);
  long long diff = 0;
  for (size_t i = 0; i < m1.size(); ++i)
    if (m1[i] != m2[i]) ++diff;
  return std::sqrt((double)diff);
}

std::vector<std::vector<int>> connected_components(const MorseGraph& g) {
  int n = (int)g.nodes.size();
  UnionFind uf(n);
  std::unordered_map<int, int> index_of;
  for (int i = 0; i < n; ++i) index_of[g.nodes[i].id] = i;
  for (auto& e : g.edges) {
    int a = uf.find(index_of.at(e.a)), b = uf.find(index_of.at(e.b));
    if (a != b) uf.link(a, b);
  }
  std::unordered_map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(g.nodes[i].id);
  std::vector<std::vector<int>> out;
  for (auto& [root, ids] : groups) out.push_back(ids);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  return out;
}

MorseGraph largest_component(const MorseGraph& g) {
  auto comps = connected_components(g);
  if (comps.size() <= 1) return g;
  std::unordered_set<int> keep(comps[0].begin(), comps[0].end());
  MorseGraph out;
  out.epsilon = g.epsilon;
  out.source = g.source;
  out.boundary_only = g.boundary_only;
  std::unordered_map<int, int> remap;
  for (auto& nd : g.nodes) {
    if (!keep.count(nd.id)) continue;
    GraphNode copy = nd;
    copy.id = (int)out.nodes.size();
    remap[nd.id] = copy.id;
    out.nodes.push_back(copy);
  }
  for (auto& e : g.edges) {
    if (!keep.count(e.a)) continue;
    GraphEdge copy = e;
    copy.a = remap[e.a];
    copy.b = remap[e.b];
    out.edges.push_back(std::move(copy));
  }
  return out;
}

}  // namespace morseot
