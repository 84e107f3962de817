#include "latbp/approximants.hpp"

#include <cmath>
#include <stdexcept>

namespace latbp {

namespace {

Matrix block_mask_product(const Matrix& m, const Vector& left_mask, const Vector& right_mask) {
  return left_mask.asDiagonal() * m * right_mask.asDiagonal();
}

// Pairwise tree sum keeps the reduction order fixed and the rounding tight.
Matrix tree_sum(std::vector<Matrix>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(terms[lo]);
  std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(terms, lo, mid) + tree_sum(terms, mid, hi);
}

}  // namespace

Matrix partition_compress(const Matrix& m, const Partition& p) {
  if (m.rows() != m.cols()) throw std::invalid_argument("partition_compress: square matrix required");
  if (m.rows() != p.dim()) throw std::invalid_argument("partition_compress: dimension mismatch");
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  const auto& owner = p.block_of();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (owner[static_cast<std::size_t>(i)] == owner[static_cast<std::size_t>(j)])
        out(i, j) = m(i, j);
  return out;
}

Scalar offdiag_average_check(const Matrix& m, const Partition& p) {
  if (m.rows() != p.dim()) throw std::invalid_argument("offdiag_average_check: dimension mismatch");
  const std::size_t blocks = p.block_count();
  if (blocks > 20) throw std::invalid_argument("offdiag_average_check: too many blocks");

  std::vector<Vector> masks;
  masks.reserve(blocks);
  for (std::size_t k = 0; k < blocks; ++k) masks.push_back(p.projection(k).mask());

  const std::uint32_t count = 1u << blocks;
  std::vector<Matrix> terms;
  terms.reserve(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    Vector left = Vector::Zero(m.rows());
    Vector right = Vector::Zero(m.rows());
    for (std::size_t k = 0; k < blocks; ++k) {
      if (s & (1u << k))
        left += masks[k];
      else
        right += masks[k];
    }
    terms.push_back(block_mask_product(m, left, right));
  }
  Matrix average = tree_sum(terms, 0, terms.size()) / static_cast<Scalar>(count);
  Matrix lhs = m - partition_compress(m, p);
  return (lhs - 4.0 * average).cwiseAbs().maxCoeff();
}

Matrix diagonal_part(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("diagonal_part: square matrix required");
  return Matrix(m.diagonal().asDiagonal());
}

Matrix ck_multiplier(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("ck_multiplier: square matrix required");
  Vector row_sums = m.rowwise().sum();
  return Matrix(row_sums.asDiagonal());
}

Vector clip_to_ideal(const Vector& y, const Vector& x) {
  if (y.size() != x.size()) throw std::invalid_argument("clip_to_ideal: dimension mismatch");
  Vector u(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    Scalar mag = std::min(std::abs(y[i]), std::abs(x[i]));
    u[i] = y[i] >= 0 ? mag : -mag;
  }
  return u;
}

Matrix local_bp_approximant(const Matrix& m, const Vector& x, Scalar lambda,
                            const NormSpec& spec) {
  if (m.rows() != m.cols() || m.rows() != x.size())
    throw std::invalid_argument("local_bp_approximant: dimension mismatch");
  if (lambda < 0.0) throw std::invalid_argument("local_bp_approximant: lambda must be >= 0");
  spec.check_dim(x.size());
  if ((x.array() == 0.0).all()) throw std::invalid_argument("local_bp_approximant: x = 0");
  Vector u = clip_to_ideal(m * x, lambda * x);
  Vector d = Vector::Zero(x.size());
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) d[i] = u[i] / x[i];
  return Matrix(d.asDiagonal());
}

NetInfimumResult positive_net_infimum(const Matrix& m, const std::vector<Partition>& chain,
                                      const std::vector<Vector>& probes) {
  if (m.rows() != m.cols()) throw std::invalid_argument("positive_net_infimum: square matrix required");
  if ((m.array() < 0.0).any())
    throw std::invalid_argument("positive_net_infimum: matrix has a negative entry");
  if (chain.empty()) throw std::invalid_argument("positive_net_infimum: empty chain");
  for (const auto& p : chain)
    if (p.dim() != m.rows()) throw std::invalid_argument("positive_net_infimum: dimension mismatch");
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (!precedes(chain[k], chain[k + 1]))
      throw std::invalid_argument("positive_net_infimum: chain is not increasing in refinement");
  if (!(chain.back() == Partition::finest(m.rows())))
    throw std::invalid_argument("positive_net_infimum: chain must end at the finest partition");

  NetInfimumResult out;
  out.limit = diagonal_part(m);

  std::vector<Matrix> compressions;
  compressions.reserve(chain.size());
  for (const auto& p : chain) compressions.push_back(partition_compress(m, p));

  for (const auto& x : probes) {
    if (x.size() != m.rows()) throw std::invalid_argument("positive_net_infimum: probe size");
    std::vector<Vector> trace;
    trace.reserve(chain.size());
    for (const auto& c : compressions) trace.push_back(c * x);
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
      Scalar violation = (trace[k + 1] - trace[k]).maxCoeff();
      if (violation > 1e-12) {
        out.monotone = false;
        out.worst_violation = std::max(out.worst_violation, violation);
      }
    }
    out.traces.push_back(std::move(trace));
  }
  return out;
}

}  // namespace latbp
