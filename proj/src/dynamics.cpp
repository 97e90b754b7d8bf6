#include "sqz/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

#include "sqz/dense.hpp"

namespace sqz {

CouplingSpec active_kernel_view(const CouplingSpec& spec) {
    CouplingSpec active = spec;
    active.include_diagonal_in_kernel = false;
    return active;
}

std::vector<double> default_time_grid(const CouplingSpec& spec, int npts) {
    const double scale = coupling_scale(spec);
    std::vector<double> grid = geometric_grid(1e-4, 1e-2, npts);
    for (double& t : grid) t /= scale;
    return grid;
}

SlopeResult short_time_slope(const CouplingSpec& spec, XiKind xi,
                             const std::vector<double>& t_grid,
                             std::vector<SqueezingReport>* reports) {
    const int n = spec.n_sites;
    const CouplingSpec active = active_kernel_view(spec);
    const KernelMaxResult imax = maximize_imag(active);
    const double predicted = -4.0 * imax.value / n;

    LocalOptions local_opts;
    local_opts.extra_seeds.push_back(imax.angles);

    if (reports) reports->clear();
    std::vector<double> xi2(t_grid.size());
    StateVector psi = css_state(n);
    double t_prev = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        psi = evolve(spec, psi, t_grid[k] - t_prev);
        t_prev = t_grid[k];
        if (reports) {
            reports->push_back(analyze_squeezing(psi, local_opts));
            xi2[k] = xi == XiKind::local ? reports->back().xi2_local
                                         : reports->back().xi2_uniform;
        } else {
            xi2[k] = xi == XiKind::local ? xi2_local(psi, local_opts).xi2
                                         : xi2_uniform(psi).xi2;
        }
    }
    return fit_initial_slope(t_grid, xi2, predicted);
}

Complex commutator_oracle(const CouplingSpec& spec, const AngleSet& angles) {
    const int n = spec.n_sites;
    const Eigen::MatrixXcd jp = dense_transverse(n, angles);
    const Eigen::MatrixXcd jp2 = jp * jp;
    const Eigen::MatrixXcd h = dense_hamiltonian(spec);
    const Eigen::Index css = (Eigen::Index{1} << n) - 1;
    return (jp2 * h - h * jp2)(css, css);
}

bool pair_commutator_check(int n) {
    if (n < 2 || n > 4)
        throw std::invalid_argument("pair_commutator_check: n must be 2..4");
    const Eigen::Matrix2cd ops[2] = {site_sp(), site_sm()};
    const Eigen::Index css = (Eigen::Index{1} << n) - 1;

    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
            if (m == l) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            for (int c = 0; c < 2; ++c)
                                for (int d = 0; d < 2; ++d) {
                                    const Eigen::MatrixXcd p =
                                        dense_two_site(n, l, ops[a], m, ops[b]);
                                    const Eigen::MatrixXcd q =
                                        dense_two_site(n, i, ops[c], j, ops[d]);
                                    const Complex got = (p * q - q * p)(css, css);
                                    Complex want(0.0, 0.0);
                                    const double delta =
                                        (l == i && m == j ? 1.0 : 0.0) +
                                        (l == j && m == i ? 1.0 : 0.0);
                                    if (a == 0 && b == 0 && c == 1 && d == 1)
                                        want = delta;  // [S+S+, S-S-]
                                    else if (a == 1 && b == 1 && c == 0 && d == 0)
                                        want = -delta;  // [S-S-, S+S+]
                                    if (std::abs(got - want) > 1e-12) return false;
                                }
                }
        }
    return true;
}

double jz_first_order_check(const CouplingSpec& spec, double dt) {
    const int n = spec.n_sites;
    if (dt == 0.0) return 0.0;
    const StateVector psi = evolve(spec, css_state(n), dt);
    const StateVector jz_psi = apply_collective(psi, Axis::z);
    return std::abs(inner(psi, jz_psi).real() - n / 2.0);
}

}  // namespace sqz
