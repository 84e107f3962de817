#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <vector>

namespace latbp {

using Scalar = double;

template <typename S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = DenseVector<Scalar>;
using Matrix = DenseMatrix<Scalar>;
using Index = Eigen::Index;

/// Sorted list of coordinate indices; the band it spans is the set of
/// vectors supported on these coordinates.
using IndexSet = std::vector<Index>;

inline constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

/// Comparison tolerance for "exact up to machine rounding" assertions.
inline constexpr Scalar kDefaultTol = 1e-9;

/// Largest dimension for which 2^n subset enumeration runs in exact mode.
inline constexpr int kDefaultExactCap = 20;

IndexSet complement_of(const IndexSet& a, Index n);
bool is_valid_index_set(const IndexSet& a, Index n);

/// True when `a` precedes `b` in the canonical witness order (shortlex is
/// not used; plain lexicographic on the sorted index lists).
bool index_set_less(const IndexSet& a, const IndexSet& b);

IndexSet mask_to_index_set(std::uint32_t mask, Index n);

}  // namespace latbp
