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

// Dense complex linear algebra on small composite spaces.
//
// Amplitudes are stored row-major with the first tensor factor varying
// slowest: for dims (d0, d1, ..., dk) the multi-index (i0, i1, ..., ik) sits
// at i0*d1*...*dk + i1*d2*...*dk + ... + ik. Every multi-index computation in
// the library derives from this convention.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace locc {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Dims = std::vector<int>;

/// Numerical thresholds. All must lie in (0, 1e-3).
struct ToleranceConfig {
  double rank_rel_tol = 1e-9;   // singular values below rank_rel_tol * sigma_max are zero
  double orth_tol = 1e-9;       // overlaps below this count as orthogonal
  double identity_tol = 1e-12;  // max-entry distance for Hermiticity / identity checks

  void validate() const;
};

std::size_t total_dim(std::span<const int> dims);

/// Pure state on a tensor-product space. Construction checks shape and
/// finiteness only; use `normalized` to get a unit vector.
class StateVector {
 public:
  StateVector() = default;
  StateVector(Dims dims, Vector amplitudes);

  static StateVector normalized(Dims dims, Vector amplitudes);
  static StateVector basis(Dims dims, std::size_t index);

  const Dims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amps_; }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  int num_factors() const { return static_cast<int>(dims_.size()); }
  double norm() const { return amps_.norm(); }

 private:
  Dims dims_;
  Vector amps_;
};

/// Square operator on a tensor-product space.
class Operator {
 public:
  Operator() = default;
  Operator(Dims dims, Matrix entries);

  static Operator projector(const StateVector& v);
  static Operator identity(Dims dims);

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return m_; }
  std::size_t size() const { return static_cast<std::size_t>(m_.rows()); }

  /// Max entry of |M - M^dagger|.
  double hermiticity_defect() const;
  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

 private:
  Dims dims_;
  Matrix m_;
};

/// <u|v>, conjugate-linear in u.
Complex hermitian_inner(const StateVector& u, const StateVector& v);

StateVector tensor_product(const StateVector& u, const StateVector& v);
StateVector tensor_product(std::span<const StateVector> factors);
Operator tensor_product(const Operator& a, const Operator& b);

/// Reorders tensor factors: new factor k is old factor perm[k].
StateVector regroup_factors(const StateVector& s, std::span<const int> perm);
Operator regroup_factors(const Operator& op, std::span<const int> perm);

/// For a factor permutation, maps each new flat index to its old flat index.
std::vector<std::size_t> permuted_index_map(std::span<const int> dims,
                                            std::span<const int> perm);
std::vector<int> inverse_permutation(std::span<const int> perm);
bool is_permutation(std::span<const int> perm, std::size_t n);

/// Stacks the vectors as columns.
Matrix stack_columns(std::span<const StateVector> vectors);

int numerical_rank(const Matrix& columns, double rel_tol);
int numerical_rank(std::span<const StateVector> vectors,
                   const ToleranceConfig& tol = {});

/// Orthonormal basis (as columns) of the orthogonal complement of the column
/// span of `columns` inside C^rows.
Matrix orthocomplement_basis(const Matrix& columns, double rel_tol);

/// Orthonormal basis of the complement of span(vectors) inside C^within_dim.
/// Output vectors carry the dims of the first input, or {within_dim} when the
/// input is empty.
std::vector<StateVector> orthocomplement(std::span<const StateVector> vectors,
                                         std::size_t within_dim,
                                         const ToleranceConfig& tol = {});

/// Orthonormal basis of span(columns); rank decided with rel_tol.
Matrix span_basis(const Matrix& columns, double rel_tol);

/// Coefficient matrix of `s` reshaped to (left factors) x (remaining factors).
Matrix reshape_across(const StateVector& s, std::span<const int> left_factors);

/// Schmidt rank across the cut left_factors | rest. 1 iff the state is a
/// product across that cut.
int schmidt_rank(const StateVector& s, std::span<const int> left_factors,
                 const ToleranceConfig& tol = {});

/// Max |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& hermitian);

/// Principal square root of a positive semidefinite matrix; tiny negative
/// eigenvalues from rounding are clamped to zero.
Matrix psd_sqrt(const Matrix& psd);

}  // namespace locc
