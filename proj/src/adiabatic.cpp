#include "sqz/adiabatic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqz/dense.hpp"
#include "sqz/dynamics.hpp"
#include "sqz/squeezing.hpp"

namespace sqz {

StateVector perturbative_state(const CouplingSpec& spec, double dlambda,
                               double field_h) {
    if (!(field_h > 0.0))
        throw std::invalid_argument("perturbative_state: field must be positive");
    const int n = spec.n_sites;
    StateVector psi = css_state(n);
    const std::size_t full = psi.dim() - 1;
    // Only S-S- moves the CSS; each unordered pair appears twice in the
    // ordered coupling sum.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Complex k = spec.k_matrix(i, j);
            if (k == 0.0) continue;
            const std::size_t idx = full & ~(std::size_t{1} << i) & ~(std::size_t{1} << j);
            psi.amplitudes[idx] -= dlambda / field_h * std::conj(k);
        }
    }
    psi.normalize();
    return psi;
}

std::vector<double> default_lambda_grid(const CouplingSpec& spec, double field_h,
                                        int npts) {
    if (!(field_h > 0.0))
        throw std::invalid_argument("default_lambda_grid: field must be positive");
    const double bound = std::max(hamiltonian_norm_bound(spec), 1e-30);
    std::vector<double> grid = geometric_grid(1e-4, 1e-2, npts);
    for (double& l : grid) l *= field_h / bound;
    return grid;
}

SlopeResult adiabatic_slope(const CouplingSpec& spec, double field_h, XiKind xi,
                            const std::vector<double>& lambda_grid,
                            std::vector<SqueezingReport>* reports) {
    if (!(field_h > 0.0))
        throw std::invalid_argument("adiabatic_slope: field must be positive");
    const int n = spec.n_sites;
    const CouplingSpec active = active_kernel_view(spec);
    const KernelMaxResult rmax = maximize_real(active);
    const double predicted = -2.0 * rmax.value / (field_h * n);

    LocalOptions local_opts;
    local_opts.extra_seeds.push_back(rmax.angles);

    if (reports) reports->clear();
    std::vector<double> xi2(lambda_grid.size());
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        const GroundStateResult gs = ground_state(spec, lambda_grid[k], field_h);
        if (gs.gap < 1e-8 * field_h)
            throw std::runtime_error(
                "adiabatic_slope: ground level degenerate at lambda=" +
                std::to_string(lambda_grid[k]) + " (gap " + std::to_string(gs.gap) + ")");
        min_gap = std::min(min_gap, gs.gap);
        if (reports) {
            reports->push_back(analyze_squeezing(gs.state, local_opts));
            xi2[k] = xi == XiKind::local ? reports->back().xi2_local
                                         : reports->back().xi2_uniform;
        } else {
            xi2[k] = xi == XiKind::local ? xi2_local(gs.state, local_opts).xi2
                                         : xi2_uniform(gs.state).xi2;
        }
    }
    SlopeResult result = fit_initial_slope(lambda_grid, xi2, predicted);
    if (min_gap < 0.5 * field_h) result.reliable = false;  // left the perturbative window
    return result;
}

double perturbed_jz_check(const CouplingSpec& spec, double dlambda, double field_h) {
    const int n = spec.n_sites;
    if (dlambda == 0.0) return 0.0;
    const GroundStateResult gs = ground_state(spec, dlambda, field_h);
    const StateVector jz_psi = apply_collective(gs.state, Axis::z);
    return std::abs(inner(gs.state, jz_psi).real() - n / 2.0);
}

Complex matrix_element_oracle(const AngleSet& angles, int i, int j, int n) {
    if (i == j)
        throw std::invalid_argument("matrix_element_oracle: sites must differ");
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::invalid_argument("matrix_element_oracle: site out of range");
    if (angles.n() != n)
        throw std::invalid_argument("matrix_element_oracle: angle count mismatch");
    const Eigen::MatrixXcd jp = dense_transverse(n, angles);
    const Eigen::MatrixXcd jp2 = jp * jp;
    const std::size_t css = (std::size_t{1} << n) - 1;
    const std::size_t idx = css & ~(std::size_t{1} << i) & ~(std::size_t{1} << j);
    return jp2(idx, css);
}

}  // namespace sqz
