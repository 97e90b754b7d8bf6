#include "sqz/slope_fit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace sqz {

SlopeResult fit_initial_slope(const std::vector<double>& grid,
                              const std::vector<double>& xi2_values,
                              double predicted_slope) {
    const auto npts = grid.size();
    if (npts != xi2_values.size())
        throw std::invalid_argument("fit_initial_slope: grid/value length mismatch");
    if (npts < 2)
        throw std::invalid_argument("fit_initial_slope: need at least two points");
    for (std::size_t k = 0; k + 1 < npts; ++k)
        if (!(grid[k] > 0.0) || !(grid[k + 1] > grid[k]))
            throw std::invalid_argument(
                "fit_initial_slope: grid must be positive and strictly increasing");

    Eigen::MatrixXd x(npts, 2);
    Eigen::VectorXd y(npts);
    for (std::size_t k = 0; k < npts; ++k) {
        x(k, 0) = grid[k];
        x(k, 1) = grid[k] * grid[k];
        y(k) = xi2_values[k] - 1.0;
    }
    const Eigen::Matrix2d xtx = x.transpose() * x;
    const Eigen::Vector2d coeff = xtx.ldlt().solve(x.transpose() * y);
    const Eigen::VectorXd residual = y - x * coeff;
    const double rss = residual.squaredNorm();
    const double sigma2 = npts > 2 ? rss / static_cast<double>(npts - 2) : 0.0;

    SlopeResult result;
    result.slope_estimate = coeff(0);
    result.slope_stderr = std::sqrt(sigma2 * xtx.inverse()(0, 0));
    result.predicted_slope = predicted_slope;
    result.relative_error = std::abs(coeff(0) - predicted_slope) /
                            std::max(std::abs(predicted_slope), 1e-12);
    result.grid = grid;
    result.xi2_values = xi2_values;
    result.fit_rms_residual = std::sqrt(rss / static_cast<double>(npts));
    const double signal = y.cwiseAbs().maxCoeff();
    result.reliable = result.fit_rms_residual <= std::max(1e-12, 1e-2 * signal);
    return result;
}

std::vector<double> geometric_grid(double lo, double hi, int npts) {
    if (npts <= 0) return {};
    if (npts == 1) return {hi};
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("geometric_grid: need 0 < lo < hi");
    std::vector<double> grid(npts);
    const double ratio = std::log(hi / lo) / (npts - 1);
    for (int k = 0; k < npts; ++k) grid[k] = lo * std::exp(ratio * k);
    grid.back() = hi;
    return grid;
}

}  // namespace sqz
