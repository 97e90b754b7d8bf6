#pragma once

#include <vector>

namespace sqz {

/// Which squeezing parameter a verification harness drives.
enum class XiKind { local, uniform };

/// Regression estimate of the initial squeezing slope against the predicted
/// theorem value. xi2_values run parallel to grid (times or couplings).
struct SlopeResult {
    double slope_estimate = 0.0;
    double slope_stderr = 0.0;
    double predicted_slope = 0.0;
    double relative_error = 0.0;
    std::vector<double> grid;
    std::vector<double> xi2_values;
    double fit_rms_residual = 0.0;
    /// False when the residuals say the grid left the linear regime (or, for
    /// the adiabatic harness, the gap shrank along the grid).
    bool reliable = true;
};

/// Fits xi2(x) - 1 = s x + c x^2 by least squares and returns s with its
/// standard error. The quadratic term absorbs the leading correction so the
/// linear coefficient is an x -> 0 slope estimate.
SlopeResult fit_initial_slope(const std::vector<double>& grid,
                              const std::vector<double>& xi2_values,
                              double predicted_slope);

/// npts geometrically spaced values from lo to hi inclusive (npts >= 2;
/// npts == 1 gives {hi}, npts == 0 gives {}).
std::vector<double> geometric_grid(double lo, double hi, int npts);

}  // namespace sqz
