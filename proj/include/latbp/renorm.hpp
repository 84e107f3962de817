#pragma once

#include "latbp/types.hpp"

#include <cstdint>

namespace latbp {

// ---------------------------------------------------------------------------
// Renormed convergent-sequence model: functions on finitely many isolated
// points plus one accumulation point, with norm
//   ⦀x⦀ = max { max_m |x_m|, |x_limit|, ε⁻¹ |x_limit| }.
// The rank-one operator T sends x to x_limit · 𝟏.
// ---------------------------------------------------------------------------

/// Finite sequence with designated limit; delta is the declared tail
/// modulus: the entries beyond the stored prefix differ from the limit by at
/// most delta.
struct SeqWithLimit {
  Vector entries;
  Scalar limit = 0.0;
  Scalar delta = 0.0;
};

Scalar renorm_norm(const SeqWithLimit& x, Scalar eps);

/// T x = x_limit · 𝟏 in the sequence model.
SeqWithLimit renorm_T(const SeqWithLimit& x);

struct RenormModel {
  int samples = 200;
  std::uint64_t seed = 0x5e9ULL;
};

struct RenormCertificate {
  Scalar lower_bound = 0.0;       // max(max_m |ψ_m|, |1 - ψ_limit|)
  Scalar sup_psi = 0.0;
  Scalar point_term = 0.0;        // |1 - ψ_limit|
  Scalar guarantee = 0.0;         // (1 - δ)/2; lower_bound never falls below it
  Scalar contraction_margin = 0.0; // min over samples of ⦀x⦀ - ⦀Tx⦀
  Scalar center_margin = 0.0;      // min over samples of ε - ⦀(|Tx| - |x|)₊⦀
  bool contraction_verified = true;
  bool center_verified = true;
};

/// Lower bound on ⦀T - S_ψ⦀ for the multiplication candidate ψ, plus sample
/// verification that T is a ⦀·⦀-contraction lying in the ε-center with λ = 1.
RenormCertificate renorm_certificate(Scalar eps, const SeqWithLimit& psi,
                                     const RenormModel& model = {});

}  // namespace latbp
