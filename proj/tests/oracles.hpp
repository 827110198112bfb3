// Independent test oracles. Everything here recomputes expected values from
// first principles, without touching the implementation paths under test.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "morseot/field.hpp"
#include "morseot/network.hpp"
#include "morseot/rng.hpp"

namespace oracles {

// strict local maxima under (value, row-major index) tie-breaking,
// by exhaustive 8-neighborhood scan
inline std::vector<int> scan_local_maxima(const morseot::ScalarField& f) {
  std::vector<int> out;
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      int v = r * f.cols + c;
      bool is_max = true;
      for (int dr = -1; dr <= 1 && is_max; ++dr) {
        for (int dc = -1; dc <= 1 && is_max; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int nr = r + dr, nc = c + dc;
          if (nr < 0 || nr >= f.rows || nc < 0 || nc >= f.cols) continue;
          int u = nr * f.cols + nc;
          double vu = f.values[u], vv = f.values[v];
          if (vu > vv || (vu == vv && u > v)) is_max = false;
        }
      }
      if (is_max) out.push_back(v);
    }
  }
  return out;
}

// exhaustive 8-neighborhood scan of strict local minima (same tie rule)
inline std::vector<int> scan_local_minima(const morseot::ScalarField& f) {
  std::vector<int> out;
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      int v = r * f.cols + c;
      bool is_min = true;
      for (int dr = -1; dr <= 1 && is_min; ++dr) {
        for (int dc = -1; dc <= 1 && is_min; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int nr = r + dr, nc = c + dc;
          if (nr < 0 || nr >= f.rows || nc < 0 || nc >= f.cols) continue;
          int u = nr * f.cols + nc;
          double vu = f.values[u], vv = f.values[v];
          if (vu < vv || (vu == vv && u < v)) is_min = false;
        }
      }
      if (is_min) out.push_back(v);
    }
  }
  return out;
}

// Widest-path ("bottleneck") merge oracle: the merge order of maximum m is
// the best over higher maxima m' of the maxmin path capacity in the
// (value, index) order; computed Floyd-Warshall style over all vertices.
// Returns (max index, bottleneck vertex) per non-global maximum.
struct MergeOracleEntry {
  int max_vertex;
  int bottleneck_vertex;
  double persistence;
};

inline std::vector<MergeOracleEntry> bottleneck_pairs(const morseot::ScalarField& f) {
  int n = f.rows * f.cols;
  auto order_less = [&](int a, int b) {
    double va = f.values[a], vb = f.values[b];
    return va != vb ? va < vb : a < b;
  };
  // cap[u][v] = bottleneck vertex of the widest path between u and v
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, -1));
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      int v = r * f.cols + c;
      cap[v][v] = v;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int nr = r + dr, nc = c + dc;
          if (nr < 0 || nr >= f.rows || nc < 0 || nc >= f.cols) continue;
          int u = nr * f.cols + nc;
          cap[v][u] = order_less(v, u) ? v : u;
        }
      }
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (cap[i][k] == -1) continue;
      for (int j = 0; j < n; ++j) {
        if (cap[k][j] == -1) continue;
        int through = order_less(cap[i][k], cap[k][j]) ? cap[i][k] : cap[k][j];
        if (cap[i][j] == -1 || order_less(cap[i][j], through)) cap[i][j] = through;
      }
    }

  auto maxima = scan_local_maxima(f);
  std::vector<MergeOracleEntry> out;
  for (int m : maxima) {
    int best = -1;
    for (int m2 : maxima) {
      if (!order_less(m, m2)) continue;  // only strictly higher maxima
      int b = cap[m][m2];
      if (best == -1 || order_less(best, b)) best = b;
    }
    if (best == -1) continue;  // global maximum
    out.push_back({m, best, f.values[m] - f.values[best]});
  }
  return out;
}

// random connected measure network with attributes in [0,1]^2 and a shortest
// path W matrix (so the triangle inequality holds by construction)
inline morseot::MeasureNetwork random_network(uint64_t seed, int n) {
  morseot::Rng rng(seed);
  morseot::MeasureNetwork g;
  g.F.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    g.F(i, 0) = rng.unit();
    g.F(i, 1) = rng.unit();
  }
  // random spanning tree plus extra edges
  Eigen::MatrixXd adj = Eigen::MatrixXd::Constant(n, n, -1.0);
  for (int i = 1; i < n; ++i) {
    int j = (int)rng.integer(i);
    double w = 0.1 + rng.unit();
    adj(i, j) = adj(j, i) = w;
  }
  int extra = n / 2;
  for (int e = 0; e < extra; ++e) {
    int i = (int)rng.integer(n), j = (int)rng.integer(n);
    if (i == j) continue;
    double w = 0.1 + rng.unit();
    adj(i, j) = adj(j, i) = w;
  }
  // Floyd-Warshall closure
  Eigen::MatrixXd W = Eigen::MatrixXd::Constant(n, n, 1e18);
  for (int i = 0; i < n; ++i) W(i, i) = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adj(i, j) > 0) W(i, j) = adj(i, j);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        W(i, j) = std::min(W(i, j), W(i, k) + W(k, j));
  double wmax = W.maxCoeff();
  g.W = W / wmax;  // in [0,1] so raw triples share one scale

  Eigen::VectorXd p(n);
  for (int i = 0; i < n; ++i) p[i] = 0.2 + rng.unit();
  g.p = p / p.sum();
  g.kinds.assign(n, morseot::NodeKind::Critical);
  g.degrees.assign(n, 2);
  return g;
}

// all permutation couplings of two n-node uniform networks
inline std::vector<Eigen::MatrixXd> permutation_couplings(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Eigen::MatrixXd> out;
  do {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) C(i, perm[i]) = 1.0 / n;
    out.push_back(C);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace oracles
