#pragma once

#include <vector>

#include "sqz/kernel.hpp"
#include "sqz/slope_fit.hpp"
#include "sqz/squeezing.hpp"
#include "sqz/state_vector.hpp"

namespace sqz {

/// First-order state of lambda H - field_h sum Sz at coupling dlambda: the
/// CSS minus (dlambda / 2 field_h) sum_ij conj(k(i,j)) S_i^- S_j^- |CSS>,
/// normalized after construction.
StateVector perturbative_state(const CouplingSpec& spec, double dlambda,
                               double field_h);

/// Geometric grid 1e-4 .. 1e-2 in units of field_h over the Hamiltonian norm
/// bound, keeping the perturbation small against the unperturbed gap.
std::vector<double> default_lambda_grid(const CouplingSpec& spec, double field_h,
                                        int npts = 9);

/// Exact ground states across the lambda grid, squeezing parameter per
/// point, initial slope against -2 R_max / (field_h N). R_max comes from the
/// dynamically active kernel (see short_time_slope). Throws if the gap
/// collapses below 1e-8 field_h along the grid; marks the result unreliable
/// when the gap leaves the perturbative window.
SlopeResult adiabatic_slope(const CouplingSpec& spec, double field_h, XiKind xi,
                            const std::vector<double>& lambda_grid,
                            std::vector<SqueezingReport>* reports = nullptr);

/// |<Jz>[dlambda] - N/2| on the exact ground state; quadratic in dlambda.
double perturbed_jz_check(const CouplingSpec& spec, double dlambda, double field_h);

/// Dense <CSS_ij| J_perp({theta})^2 |CSS> with CSS_ij = S_i^- S_j^- |CSS>;
/// equals exp(i(theta_i + theta_j)) / 2. Rejects i == j.
Complex matrix_element_oracle(const AngleSet& angles, int i, int j, int n);

}  // namespace sqz
