// Copyright 2026 The locc-marker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations used by the tests. They avoid the library's own
// code paths: ranks come from Gram-Schmidt rather than SVD, tensor products
// are written out by hand, and product-state questions on qubit pairs are
// answered by a dense search over the Bloch sphere.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Rank by twice-iterated modified Gram-Schmidt, relative to the largest input norm.
inline int gs_rank(const std::vector<Vec>& vs, double rel_tol = 1e-8) {
  double scale = 0.0;
  for (const auto& v : vs) scale = std::max(scale, v.norm());
  if (scale == 0.0) return 0;
  std::vector<Vec> basis;
  for (const auto& v : vs) {
    Vec r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) r -= b.dot(r) * b;
    if (r.norm() > rel_tol * scale) basis.push_back(r / r.norm());
  }
  return static_cast<int>(basis.size());
}

// Orthonormal basis of the complement of span(vs) in C^dim, by Gram-Schmidt
// over the standard basis.
inline std::vector<Vec> gs_complement(const std::vector<Vec>& vs, int dim, double tol = 1e-8) {
  std::vector<Vec> basis;
  auto absorb = [&](const Vec& v) {
    Vec r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) r -= b.dot(r) * b;
    if (r.norm() > tol) {
      basis.push_back(r / r.norm());
      return true;
    }
    return false;
  };
  for (const auto& v : vs) absorb(v);
  std::vector<Vec> out;
  for (int i = 0; i < dim; ++i) {
    Vec e = Vec::Zero(dim);
    e(i) = 1.0;
    if (absorb(e)) out.push_back(basis.back());
  }
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

inline Vec kron_all(const std::vector<Vec>& vs) {
  Vec out = Vec::Ones(1);
  for (const auto& v : vs) out = kron(out, v);
  return out;
}

inline Vec ket(std::initializer_list<C> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (C x : xs) v(i++) = x;
  return v;
}

inline Vec normalized(Vec v) { return v / v.norm(); }

// Ordered selections of m distinct indices out of n, lexicographic.
inline std::vector<std::vector<int>> selections(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(i);
      rec();
      cur.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

// Bloch-sphere point as a qubit ket.
inline Vec bloch(double theta, double phi) {
  return ket({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
}

// Minimizes f over (theta, phi) with Nelder-Mead from `start`.
inline double nelder_mead(const std::function<double(double, double)>& f,
                          std::array<double, 2> start, double step, int iters = 400) {
  std::array<std::array<double, 2>, 3> p{start, start, start};
  p[1][0] += step;
  p[2][1] += step;
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) v[i] = f(p[i][0], p[i][1]);
  for (int it = 0; it < iters; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    const int b = idx[0], m = idx[1], w = idx[2];
    const std::array<double, 2> c{(p[b][0] + p[m][0]) / 2, (p[b][1] + p[m][1]) / 2};
    auto at = [&](double t) {
      return std::array<double, 2>{c[0] + t * (p[w][0] - c[0]), c[1] + t * (p[w][1] - c[1])};
    };
    const auto xr = at(-1.0);
    const double fr = f(xr[0], xr[1]);
    if (fr < v[b]) {
      const auto xe = at(-2.0);
      const double fe = f(xe[0], xe[1]);
      if (fe < fr) p[w] = xe, v[w] = fe;
      else p[w] = xr, v[w] = fr;
    } else if (fr < v[m]) {
      p[w] = xr, v[w] = fr;
    } else {
      const auto xc = at(0.5);
      const double fc = f(xc[0], xc[1]);
      if (fc < v[w]) {
        p[w] = xc, v[w] = fc;
      } else {
        for (int k : {m, w}) {
          p[k] = {(p[k][0] + p[b][0]) / 2, (p[k][1] + p[b][1]) / 2};
          v[k] = f(p[k][0], p[k][1]);
        }
      }
    }
  }
  return *std::min_element(v.begin(), v.end());
}

// Grid over the Bloch sphere, then Nelder-Mead from the best few points.
inline double sphere_minimum(const std::function<double(double, double)>& f, int grid = 200) {
  struct Cand {
    double v, t, p;
  };
  std::vector<Cand> cands;
  cands.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double t = std::numbers::pi * (i + 0.5) / grid;
      const double p = 2 * std::numbers::pi * j / grid;
      cands.push_back({f(t, p), t, p});
    }
  const std::size_t keep = std::min<std::size_t>(8, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(),
                    [](const Cand& a, const Cand& b) { return a.v < b.v; });
  double best = cands.front().v;
  for (std::size_t k = 0; k < keep; ++k)
    best = std::min(best, nelder_mead(f, {cands[k].t, cands[k].p}, std::numbers::pi / grid));
  return best;
}

struct QubitPair {
  Vec a, b;
};

// Three-way verdict from a minimum value.
enum class Verdict { feasible, infeasible, ambiguous };

inline Verdict classify_min(double v, double feasible_below = 1e-8, double infeasible_above = 1e-4) {
  if (v <= feasible_below) return Verdict::feasible;
  if (v >= infeasible_above) return Verdict::infeasible;
  return Verdict::ambiguous;
}

// Is there a product a (x) b orthogonal to every member?  For fixed a the best
// b is the lowest eigenvector of sum_j |<a_j|a>|^2 |b_j><b_j|.
inline double orthogonal_product_min(const std::vector<QubitPair>& members) {
  auto f = [&](double t, double p) {
    const Vec x = bloch(t, p);
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (const auto& s : members) m += std::norm(s.a.dot(x)) * s.b * s.b.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    return std::max(0.0, es.eigenvalues()(0));
  };
  return sphere_minimum(f);
}

// Product detector for `target`: for fixed a the best b minimizes
// b^H A b / b^H B b, with A = sum_{j != t} |<a_j|a>|^2 |b_j><b_j| and
// B = |<a_t|a>|^2 |b_t><b_t|; its value is 1 / (w_t b_t^H (A + eps)^-1 b_t).
inline double detector_ratio_min(const std::vector<QubitPair>& members, std::size_t target) {
  auto f = [&](double t, double p) {
    const Vec x = bloch(t, p);
    Eigen::Matrix2cd a = 1e-15 * Eigen::Matrix2cd::Identity();
    for (std::size_t j = 0; j < members.size(); ++j)
      if (j != target)
        a += std::norm(members[j].a.dot(x)) * members[j].b * members[j].b.adjoint();
    const double wt = std::norm(members[target].a.dot(x));
    const Vec bt = members[target].b;
    const double q = std::real(bt.dot(a.inverse() * bt)) * wt;
    return q > 0 ? 1.0 / q : std::numeric_limits<double>::infinity();
  };
  return sphere_minimum(f);
}

// Random qubit-pair product ensembles: half with Haar-ish factors, half with
// factors drawn from a small set so that structured coincidences occur.
inline std::vector<std::vector<QubitPair>> random_qubit_ensembles(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> size(2, 5);
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<Vec> palette = {ket({1, 0}),  ket({0, 1}),        ket({r, r}),
                                    ket({r, -r}), ket({r, C(0, r)}), ket({r, C(0, -r)})};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(palette.size()) - 1);
  auto haar = [&] { return normalized(ket({C(g(rng), g(rng)), C(g(rng), g(rng))})); };
  std::vector<std::vector<QubitPair>> out;
  for (int k = 0; k < count; ++k) {
    const int n = size(rng);
    std::vector<QubitPair> e;
    for (int i = 0; i < n; ++i) {
      if (k % 2 == 0) {
        e.push_back({haar(), haar()});
      } else {
        e.push_back({palette[pick(rng)], palette[pick(rng)]});
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace oracle
