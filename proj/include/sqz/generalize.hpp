#pragma once

#include <vector>

#include "sqz/slope_fit.hpp"
#include "sqz/squeezing.hpp"
#include "sqz/state_vector.hpp"

namespace sqz {

/// Couplings of U H U^dagger for U = prod_i exp(i (1 - sigma_i) pi S_i^x / 2),
/// the flip unitary mapping |sigma> onto the CSS. Real-coupling specs use the
/// closed form (swap raise-raise and exchange entries on bonds touching one
/// flipped site, negate zz there, flip fields on flipped sites); complex
/// specs go through dense conjugation with coupling extraction, capped at
/// kDenseCap sites.
CouplingSpec transform_spec(const CouplingSpec& spec, const SpinConfig& config);

/// U|psi>: amplitude permutation by the flip mask times a global i^(#flips).
StateVector apply_flip_unitary(const StateVector& psi, const SpinConfig& config);

/// Moments of the modified collective spin J' (x unweighted, y and z sigma
/// weighted); on |sigma> the z' mean is N/2.
CollectiveMoments modified_collective_moments(const StateVector& psi,
                                              const SpinConfig& config);

/// Theorem 1 harness from the product state |sigma>: evolves under the
/// original couplings, measures squeezing of J', and predicts the slope from
/// the transformed couplings' kernel maximum.
SlopeResult verify_generalized_t1(const CouplingSpec& spec, const SpinConfig& config,
                                  XiKind xi, const std::vector<double>& t_grid,
                                  std::vector<SqueezingReport>* reports = nullptr);

/// Theorem 2 analogue: ground states of lambda H - field_h sum_i sigma_i S_i^z
/// (the field that stabilizes |sigma>), squeezing of J', prediction from the
/// transformed couplings.
SlopeResult verify_generalized_t2(const CouplingSpec& spec, const SpinConfig& config,
                                  double field_h, XiKind xi,
                                  const std::vector<double>& lambda_grid,
                                  std::vector<SqueezingReport>* reports = nullptr);

}  // namespace sqz
