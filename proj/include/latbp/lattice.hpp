#pragma once

#include "latbp/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace latbp {

// ---------------------------------------------------------------------------
// Componentwise lattice operations. Free functions returning Eigen
// expressions so they compose without temporaries.
// ---------------------------------------------------------------------------

namespace detail {
template <typename A, typename B>
void require_same_size(const A& x, const B& y, const char* op) {
  if (x.size() != y.size())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
}
}  // namespace detail

template <typename Derived>
auto abs_of(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseAbs();
}

template <typename D1, typename D2>
auto meet(const Eigen::MatrixBase<D1>& x, const Eigen::MatrixBase<D2>& y) {
  detail::require_same_size(x, y, "meet");
  return x.cwiseMin(y);
}

template <typename D1, typename D2>
auto join(const Eigen::MatrixBase<D1>& x, const Eigen::MatrixBase<D2>& y) {
  detail::require_same_size(x, y, "join");
  return x.cwiseMax(y);
}

template <typename Derived>
auto pos_part(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseMax(typename Derived::Scalar(0));
}

template <typename Derived>
auto neg_part(const Eigen::MatrixBase<Derived>& x) {
  return (-x).cwiseMax(typename Derived::Scalar(0));
}

template <typename D1, typename D2>
bool are_disjoint(const Eigen::MatrixBase<D1>& x, const Eigen::MatrixBase<D2>& y) {
  detail::require_same_size(x, y, "are_disjoint");
  return (x.cwiseAbs().cwiseMin(y.cwiseAbs()).array() == 0).all();
}

enum class LatticeOp { Abs, Meet, Join, Pos, Neg };

/// Runtime dispatcher over the componentwise operations; `y` is required
/// for Meet/Join and ignored otherwise.
Vector lattice_op(LatticeOp kind, const Vector& x, const std::optional<Vector>& y = std::nullopt);

LatticeOp parse_lattice_op(const std::string& name);

// ---------------------------------------------------------------------------
// Band projections: zero every coordinate outside a fixed index set.
// ---------------------------------------------------------------------------

class BandProjection {
 public:
  BandProjection(Index dim, IndexSet subset);

  Index dim() const { return dim_; }
  const IndexSet& subset() const { return subset_; }

  Vector apply(const Vector& x) const;
  Matrix apply_left(const Matrix& m) const;   // P * M  (keeps rows in subset)
  Matrix apply_right(const Matrix& m) const;  // M * P  (keeps columns in subset)

  BandProjection complement() const;
  Matrix matrix() const;

  /// 0/1 mask vector; convenient for expression-style use.
  const Vector& mask() const { return mask_; }

 private:
  Index dim_;
  IndexSet subset_;
  Vector mask_;
};

// ---------------------------------------------------------------------------
// Partitions of {0..n-1} into disjoint blocks. P precedes Q when every
// block of P is a union of blocks of Q (Q is finer).
// ---------------------------------------------------------------------------

class Partition {
 public:
  Partition(Index dim, std::vector<IndexSet> blocks);

  static Partition finest(Index dim);
  static Partition one_block(Index dim);

  Index dim() const { return dim_; }
  const std::vector<IndexSet>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  BandProjection projection(std::size_t block) const;

  /// Block index of each coordinate.
  const std::vector<std::size_t>& block_of() const { return block_of_; }

  bool operator==(const Partition& other) const;

 private:
  Index dim_;
  std::vector<IndexSet> blocks_;  // canonical: blocks sorted by smallest element
  std::vector<std::size_t> block_of_;
};

/// Common refinement with blocks P_i ∩ Q_j.
Partition refine(const Partition& p, const Partition& q);

/// P ≺ Q: every block of `coarse` is a union of blocks of `fine`.
bool precedes(const Partition& coarse, const Partition& fine);

}  // namespace latbp
