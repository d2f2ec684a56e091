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

#include "locc/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "locc/error.hpp"

namespace locc {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void check_dims(std::span<const int> dims) {
  for (int d : dims) require(d > 0, "tensor factor dimensions must be positive");
}

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

int rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

}  // namespace

void ToleranceConfig::validate() const {
  for (double t : {rank_rel_tol, orth_tol, identity_tol})
    require(t > 0.0 && t < 1e-3, "tolerances must lie strictly between 0 and 1e-3");
}

std::size_t total_dim(std::span<const int> dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

StateVector::StateVector(Dims dims, Vector amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  require(!dims_.empty(), "state needs at least one tensor factor");
  check_dims(dims_);
  require(total_dim(dims_) == static_cast<std::size_t>(amps_.size()),
          "amplitude count " + std::to_string(amps_.size()) +
              " does not match product of dims " +
              std::to_string(total_dim(dims_)),
          ErrorKind::dimension_mismatch);
  require(all_finite(amps_), "amplitudes must be finite");
}

StateVector StateVector::normalized(Dims dims, Vector amplitudes) {
  const double n = amplitudes.norm();
  require(n > 0.0, "cannot normalize the zero vector");
  return StateVector(std::move(dims), amplitudes / n);
}

StateVector StateVector::basis(Dims dims, std::size_t index) {
  const std::size_t n = total_dim(dims);
  require(index < n, "basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(dims), std::move(v));
}

Operator::Operator(Dims dims, Matrix entries)
    : dims_(std::move(dims)), m_(std::move(entries)) {
  require(!dims_.empty(), "operator needs at least one tensor factor");
  check_dims(dims_);
  const auto n = static_cast<Eigen::Index>(total_dim(dims_));
  require(m_.rows() == n && m_.cols() == n,
          "operator must be square and match the product of dims",
          ErrorKind::dimension_mismatch);
  require(all_finite(m_), "operator entries must be finite");
}

Operator Operator::projector(const StateVector& v) {
  return Operator(v.dims(), v.amplitudes() * v.amplitudes().adjoint());
}

Operator Operator::identity(Dims dims) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  return Operator(std::move(dims), Matrix::Identity(n, n));
}

double Operator::hermiticity_defect() const {
  return max_abs_diff(m_, m_.adjoint());
}

Complex hermitian_inner(const StateVector& u, const StateVector& v) {
  require(u.size() == v.size(), "inner product of vectors with different dimension",
          ErrorKind::dimension_mismatch);
  return u.amplitudes().dot(v.amplitudes());  // Eigen conjugates the left operand
}

StateVector tensor_product(const StateVector& u, const StateVector& v) {
  Dims dims = u.dims();
  dims.insert(dims.end(), v.dims().begin(), v.dims().end());
  const Vector& a = u.amplitudes();
  const Vector& b = v.amplitudes();
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return StateVector(std::move(dims), std::move(out));
}

StateVector tensor_product(std::span<const StateVector> factors) {
  require(!factors.empty(), "tensor product of an empty list");
  StateVector acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = tensor_product(acc, factors[i]);
  return acc;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return Operator(std::move(dims), std::move(out));
}

bool is_permutation(std::span<const int> perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  require(is_permutation(perm, perm.size()), "not a permutation");
  std::vector<int> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = static_cast<int>(k);
  return inv;
}

std::vector<std::size_t> permuted_index_map(std::span<const int> dims,
                                            std::span<const int> perm) {
  require(is_permutation(perm, dims.size()),
          "invalid factor permutation for " + std::to_string(dims.size()) + " factors");
  const std::size_t k = dims.size();
  // Strides of the old layout.
  std::vector<std::size_t> old_stride(k, 1);
  for (std::size_t f = k; f-- > 1;) old_stride[f - 1] = old_stride[f] * dims[f];
  std::vector<int> new_dims(k);
  for (std::size_t f = 0; f < k; ++f) new_dims[f] = dims[perm[f]];

  const std::size_t n = total_dim(dims);
  std::vector<std::size_t> map(n);
  std::vector<int> digit(k, 0);  // multi-index in the new layout
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t old = 0;
    for (std::size_t f = 0; f < k; ++f) old += digit[f] * old_stride[perm[f]];
    map[flat] = old;
    for (std::size_t f = k; f-- > 0;) {
      if (++digit[f] < new_dims[f]) break;
      digit[f] = 0;
    }
  }
  return map;
}

StateVector regroup_factors(const StateVector& s, std::span<const int> perm) {
  const auto map = permuted_index_map(s.dims(), perm);
  Dims dims(perm.size());
  for (std::size_t f = 0; f < perm.size(); ++f) dims[f] = s.dims()[perm[f]];
  Vector out(s.amplitudes().size());
  for (std::size_t i = 0; i < map.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = s.amplitudes()(static_cast<Eigen::Index>(map[i]));
  return StateVector(std::move(dims), std::move(out));
}

Operator regroup_factors(const Operator& op, std::span<const int> perm) {
  const auto map = permuted_index_map(op.dims(), perm);
  Dims dims(perm.size());
  for (std::size_t f = 0; f < perm.size(); ++f) dims[f] = op.dims()[perm[f]];
  const auto n = static_cast<Eigen::Index>(map.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = op.matrix()(static_cast<Eigen::Index>(map[i]),
                              static_cast<Eigen::Index>(map[j]));
  return Operator(std::move(dims), std::move(out));
}

Matrix stack_columns(std::span<const StateVector> vectors) {
  if (vectors.empty()) return Matrix(0, 0);
  const auto rows = vectors.front().amplitudes().size();
  Matrix m(rows, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require(vectors[j].amplitudes().size() == rows,
            "vectors have different total dimension", ErrorKind::dimension_mismatch);
    m.col(static_cast<Eigen::Index>(j)) = vectors[j].amplitudes();
  }
  return m;
}

int numerical_rank(const Matrix& columns, double rel_tol) {
  return rank_from_singular_values(singular_values(columns), rel_tol);
}

int numerical_rank(std::span<const StateVector> vectors, const ToleranceConfig& tol) {
  if (vectors.empty()) return 0;
  return numerical_rank(stack_columns(vectors), tol.rank_rel_tol);
}

Matrix orthocomplement_basis(const Matrix& columns, double rel_tol) {
  const Eigen::Index n = columns.rows();
  if (columns.cols() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeFullU);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixU().rightCols(n - r);
}

Matrix span_basis(const Matrix& columns, double rel_tol) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

std::vector<StateVector> orthocomplement(std::span<const StateVector> vectors,
                                         std::size_t within_dim,
                                         const ToleranceConfig& tol) {
  Dims dims{static_cast<int>(within_dim)};
  Matrix m(static_cast<Eigen::Index>(within_dim), 0);
  if (!vectors.empty()) {
    require(vectors.front().size() == within_dim,
            "vectors do not live in the requested dimension", ErrorKind::dimension_mismatch);
    dims = vectors.front().dims();
    m = stack_columns(vectors);
  }
  const Matrix basis = orthocomplement_basis(m, tol.rank_rel_tol);
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index j = 0; j < basis.cols(); ++j) out.emplace_back(dims, basis.col(j));
  return out;
}

Matrix reshape_across(const StateVector& s, std::span<const int> left_factors) {
  const auto k = static_cast<std::size_t>(s.num_factors());
  std::vector<bool> is_left(k, false);
  for (int f : left_factors) {
    require(f >= 0 && static_cast<std::size_t>(f) < k && !is_left[f],
            "invalid factor index in split");
    is_left[f] = true;
  }
  require(!left_factors.empty() && left_factors.size() < k,
          "split must be a proper nonempty subset of the factors");
  std::vector<int> perm(left_factors.begin(), left_factors.end());
  for (std::size_t f = 0; f < k; ++f)
    if (!is_left[f]) perm.push_back(static_cast<int>(f));
  const StateVector moved = regroup_factors(s, perm);
  std::size_t rows = 1;
  for (int f : left_factors) rows *= static_cast<std::size_t>(s.dims()[f]);
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(s.size() / rows);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = moved.amplitudes()(i * c + j);
  return m;
}

int schmidt_rank(const StateVector& s, std::span<const int> left_factors,
                 const ToleranceConfig& tol) {
  return numerical_rank(reshape_across(s, left_factors), tol.rank_rel_tol);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix shapes differ",
          ErrorKind::dimension_mismatch);
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  const Matrix sym = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Matrix psd_sqrt(const Matrix& psd) {
  const Matrix sym = 0.5 * (psd + psd.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace locc
