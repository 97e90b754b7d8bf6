#pragma once

#include <vector>

#include "sqz/kernel.hpp"
#include "sqz/slope_fit.hpp"
#include "sqz/squeezing.hpp"
#include "sqz/state_vector.hpp"

namespace sqz {

/// Geometric grid 1e-4 .. 1e-2 in units of the inverse per-spin coupling scale.
std::vector<double> default_time_grid(const CouplingSpec& spec, int npts = 9);

/// Evolves the CSS across the time grid, extracts the initial slope of the
/// chosen squeezing parameter and compares it with -4 I_max / N. I_max is
/// maximized over the dynamically active couplings: diagonal raise-raise
/// entries multiply a vanishing operator and never feed the evolution, so
/// they are excluded from the prediction regardless of the kernel flag.
/// Per-point reports (both squeezing conventions) land in *reports if given.
SlopeResult short_time_slope(const CouplingSpec& spec, XiKind xi,
                             const std::vector<double>& t_grid,
                             std::vector<SqueezingReport>* reports = nullptr);

/// <CSS| [J_perp({theta})^2, H] |CSS> on dense matrices; equals -i times the
/// active-kernel imaginary part at those angles.
Complex commutator_oracle(const CouplingSpec& spec, const AngleSet& angles);

/// Exhaustive dense check of the pair-operator commutator expectations on
/// the CSS: <[S_l^+ S_m^+, S_i^- S_j^-]> = delta_il delta_jm + delta_im
/// delta_jl, its conjugate partner with opposite sign, and zero for every
/// other combination of raise/lower pair operators.
bool pair_commutator_check(int n);

/// |<Jz>(dt) - N/2| after evolving the CSS; vanishes quadratically in dt.
double jz_first_order_check(const CouplingSpec& spec, double dt);

/// Copy of the spec with inert diagonal raise-raise entries dropped from the
/// kernel sums; this is the kernel the theorems see.
CouplingSpec active_kernel_view(const CouplingSpec& spec);

}  // namespace sqz
