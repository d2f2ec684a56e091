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

// Alternating search: with alpha fixed, every overlap <psi_j|alpha beta> is a
// linear form in beta, so the ratio (off-target weight)/(target weight) is a
// generalized Rayleigh quotient with a rank-one denominator and has a closed
// form minimizer. The same holds with the roles swapped.

#include <cmath>
#include <limits>
#include <random>

#include "locc/detect.hpp"
#include "locc/error.hpp"

namespace locc {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kConvergence = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Vector random_unit(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

// Unit x minimizing sum_j |rows_j . x|^2 / |target . x|^2; `fallback` when the
// target form vanishes identically.
Vector minimize_ratio(const std::vector<Vector>& rows, const Vector& target, const Vector& fallback) {
  const Eigen::Index n = target.size();
  if (target.norm() == 0.0) return fallback;
  Matrix a = Matrix::Zero(n, n);
  for (const auto& r : rows) a += r.conjugate() * r.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const Matrix& u = eig.eigenvectors();
  const double cut = 1e-12 * std::max(lam(n - 1), 1e-300);
  const Vector rhs = target.conjugate();
  Vector null_part = Vector::Zero(n);
  Vector pinv_part = Vector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex c = u.col(k).dot(rhs);
    if (lam(k) <= cut)
      null_part += c * u.col(k);
    else
      pinv_part += (c / lam(k)) * u.col(k);
  }
  const Vector& x = null_part.norm() > 1e-9 * rhs.norm() ? null_part : pinv_part;
  if (x.norm() == 0.0) return fallback;
  return x / x.norm();
}

struct Problem {
  std::vector<Matrix> conj_coeffs;  // conj of each member's dA x dB coefficient matrix
  std::size_t target = 0;

  Complex overlap(std::size_t j, const Vector& a, const Vector& b) const {
    return (a.transpose() * conj_coeffs[j] * b)(0, 0);
  }
  double offtarget(const Vector& a, const Vector& b) const {
    double s = 0.0;
    for (std::size_t j = 0; j < conj_coeffs.size(); ++j)
      if (j != target) s += std::norm(overlap(j, a, b));
    return s;
  }
  double ratio(const Vector& a, const Vector& b) const {
    const double t = std::norm(overlap(target, a, b));
    if (t <= 1e-300) return std::numeric_limits<double>::infinity();
    return offtarget(a, b) / t;
  }
};

}  // namespace

HeuristicSearchReport heuristic_detect(const Ensemble& e, std::string_view target, int restarts,
                                       std::uint64_t seed) {
  require(e.structure.num_parties() == 2, "heuristic search needs a bipartite ensemble");
  require(restarts >= 1, "restarts must be positive");
  Problem prob;
  prob.target = e.index_of(target);
  const auto da = static_cast<Eigen::Index>(e.structure.party_dim(0));
  const auto db = static_cast<Eigen::Index>(e.structure.party_dim(1));
  const auto perm = e.structure.party_major_permutation();
  for (const auto& m : e.members) {
    require(m.is_pure(), "member '" + m.label + "' is mixed; heuristic search needs pure members");
    const Vector v = regroup_factors(m.state(), perm).amplitudes();
    Matrix c(da, db);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < db; ++j) c(i, j) = std::conj(v(i * db + j));
    prob.conj_coeffs.push_back(std::move(c));
  }

  HeuristicSearchReport rep;
  rep.target_label = std::string(target);
  rep.restarts = restarts;
  rep.seed = seed;
  rep.best_ratio = std::numeric_limits<double>::infinity();
  Vector best_a, best_b;

  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(r))));
    Vector a = random_unit(da, rng);
    Vector b = random_unit(db, rng);
    double prev = prob.ratio(a, b);
    for (int it = 0; it < kMaxIterations; ++it) {
      std::vector<Vector> rows;
      for (std::size_t j = 0; j < prob.conj_coeffs.size(); ++j)
        if (j != prob.target) rows.push_back(prob.conj_coeffs[j].transpose() * a);
      b = minimize_ratio(rows, prob.conj_coeffs[prob.target].transpose() * a, b);
      rows.clear();
      for (std::size_t j = 0; j < prob.conj_coeffs.size(); ++j)
        if (j != prob.target) rows.push_back(prob.conj_coeffs[j] * b);
      a = minimize_ratio(rows, prob.conj_coeffs[prob.target] * b, a);
      const double cur = prob.ratio(a, b);
      if (cur == 0.0 || std::abs(prev - cur) < kConvergence) {
        prev = cur;
        break;
      }
      prev = cur;
    }
    const double residual = std::sqrt(prob.offtarget(a, b));
    const double overlap = std::abs(prob.overlap(prob.target, a, b));
    const bool found = residual <= kOfftargetBound && overlap >= kTargetFloor;
    if (found || prev < rep.best_ratio || rep.best_restart < 0) {
      rep.best_ratio = prev;
      rep.best_restart = r;
      rep.best_offtarget_residual = residual;
      rep.best_target_overlap = overlap;
      best_a = a;
      best_b = b;
    }
    if (found) break;
  }

  if (rep.best_restart >= 0 && rep.best_offtarget_residual <= kOfftargetBound &&
      rep.best_target_overlap >= kTargetFloor) {
    DetectingCertificate c{rep.target_label,
                           {StateVector(e.structure.local_dims(0), best_a),
                            StateVector(e.structure.local_dims(1), best_b)},
                           0.0, 0.0};
    const CertificateCheck chk = verify_certificate(e, c);
    c.max_offtarget_overlap = chk.max_offtarget_overlap;
    c.target_overlap_modulus = chk.target_overlap_modulus;
    if (chk.ok) {
      rep.verdict = HeuristicVerdict::found;
      rep.certificate = std::move(c);
    }
  }
  return rep;
}

}  // namespace locc
