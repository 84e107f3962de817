#pragma once

#include "latbp/lattice.hpp"
#include "latbp/norms.hpp"
#include "latbp/types.hpp"

#include <vector>

namespace latbp {

// ---------------------------------------------------------------------------
// Constructive band-preserving approximants.
// ---------------------------------------------------------------------------

/// Block-diagonal compression Σ_k P_k M P_k along the blocks of P.
Matrix partition_compress(const Matrix& m, const Partition& p);

/// Residual of the averaging identity
///   M - M_P = 4 · Ave_{S ⊆ blocks} P_S M P_{Sᶜ},
/// an exact algebraic identity; returns the max-entry magnitude of the
/// difference between the two sides. Requires at most 20 blocks.
Scalar offdiag_average_check(const Matrix& m, const Partition& p);

/// diag(M): the compression along the finest partition. Satisfies
/// ‖diag(M)‖ ≤ ‖M‖ and ‖M - diag(M)‖ ≤ 4·bp_defect(M) for the implemented
/// norms.
Matrix diagonal_part(const Matrix& m);

/// Multiplier approximant for sup-type norms: the diagonal of row sums
/// (the image of the all-ones vector). ‖M - S‖_∞ ≤ 2·bp_defect(M, ℓ∞).
Matrix ck_multiplier(const Matrix& m);

/// Componentwise clip of y into the ideal generated by x:
/// u_i = sign(y_i) · min(|y_i|, |x_i|), so |u| ≤ |x| and
/// ‖y - u‖ = ‖(|y| - |x|)₊‖ for every implemented norm.
Vector clip_to_ideal(const Vector& y, const Vector& x);

/// Diagonal D with Dx = clip_to_ideal(Mx, λx), D_ii = 0 off supp(x).
/// ‖Mx - Dx‖ = ‖(|Mx| - λ|x|)₊‖ and ‖D‖ ≤ λ.
Matrix local_bp_approximant(const Matrix& m, const Vector& x, Scalar lambda,
                            const NormSpec& spec);

struct NetInfimumResult {
  Matrix limit;  // diag(M), the infimum along any chain ending at the finest partition
  // traces[s][k] = (compression along chain[k]) · x_s, recorded per probe
  std::vector<std::vector<Vector>> traces;
  bool monotone = true;
  Scalar worst_violation = 0.0;
};

/// For entrywise nonnegative M and a ≺-increasing chain of partitions ending
/// at the finest one, verifies that the compressions decrease componentwise
/// on nonnegative probes and returns the chain limit diag(M).
NetInfimumResult positive_net_infimum(const Matrix& m, const std::vector<Partition>& chain,
                                      const std::vector<Vector>& probes);

}  // namespace latbp
