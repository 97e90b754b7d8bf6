#include "sqz/generalize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqz/dense.hpp"
#include "sqz/dynamics.hpp"
#include "sqz/kernel.hpp"

namespace sqz {

namespace {

constexpr Complex kI(0.0, 1.0);

bool is_real_spec(const CouplingSpec& spec) {
    return spec.k_matrix.imag().cwiseAbs().maxCoeff() == 0.0 &&
           spec.j_matrix.imag().cwiseAbs().maxCoeff() == 0.0;
}

// Shared diagonal/field bookkeeping: under a flip S_i^z -> -S_i^z, so fields
// flip sign on flipped sites; a flipped i == i exchange entry turns
// 2 j(i,i) S+S- into 2 j(i,i) (1 - S+S-).
void transform_diagonal(const CouplingSpec& spec, const SpinConfig& config,
                        CouplingSpec& out) {
    const int n = spec.n_sites;
    out.z_fields = spec.z_fields;
    out.scalar_offset = spec.scalar_offset;
    for (int i = 0; i < n; ++i) {
        if (config.sigmas[i] == -1) {
            out.z_fields(i) = -out.z_fields(i);
            out.k_matrix(i, i) = std::conj(spec.k_matrix(i, i));
            const double jd = spec.j_matrix(i, i).real();
            out.j_matrix(i, i) = -jd;
            out.scalar_offset += 2.0 * jd;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.zz_matrix(i, j) =
                config.sigmas[i] * config.sigmas[j] * spec.zz_matrix(i, j);
}

CouplingSpec transform_closed_form(const CouplingSpec& spec, const SpinConfig& config) {
    const int n = spec.n_sites;
    CouplingSpec out = spec;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int si = config.sigmas[i], sj = config.sigmas[j];
            if (si * sj == -1) {
                // One flipped end: raising one spin now lowers the other, so
                // the raise-raise and exchange roles swap on this bond.
                out.k_matrix(i, j) = spec.j_matrix(i, j).real();
                out.j_matrix(i, j) = spec.k_matrix(i, j).real();
            } else if (si == -1) {
                out.k_matrix(i, j) = std::conj(spec.k_matrix(i, j));
                out.j_matrix(i, j) = std::conj(spec.j_matrix(i, j));
            }
        }
    }
    transform_diagonal(spec, config, out);
    return out;
}

CouplingSpec transform_dense(const CouplingSpec& spec, const SpinConfig& config) {
    const int n = spec.n_sites;
    if (n > kDenseCap)
        throw std::invalid_argument(
            "transform_spec: complex couplings need dense conjugation, capped at 10 sites");
    std::size_t mask = 0;
    for (int i = 0; i < n; ++i)
        if (config.sigmas[i] == -1) mask |= std::size_t{1} << i;

    // U is a phase times the bit-flip permutation, so conjugation is an
    // index relabeling: (U H U+)(a, b) = H(a ^ mask, b ^ mask).
    const Eigen::MatrixXcd h = dense_hamiltonian(spec);
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd hu(dim, dim);
    for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t a = 0; a < dim; ++a) hu(a, b) = h(a ^ mask, b ^ mask);

    CouplingSpec out = spec;
    const std::size_t full = dim - 1;
    for (int i = 0; i < n; ++i) {
        const std::size_t mi = std::size_t{1} << i;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::size_t mj = std::size_t{1} << j;
            // Coefficients read off matrix elements between basis states with
            // spectator sites up; the ordered sums put 2k / 2j on each entry.
            const std::size_t pair_down = full & ~mi & ~mj;
            out.k_matrix(i, j) = hu(full, pair_down) / 2.0;
            out.j_matrix(i, j) = hu((pair_down | mi), (pair_down | mj)) / 2.0;
        }
    }
    // Inert raise-raise diagonals and the purely diagonal blocks are not
    // visible in off-diagonal matrix elements; apply the flip rules directly.
    transform_diagonal(spec, config, out);
    return out;
}

}  // namespace

CouplingSpec transform_spec(const CouplingSpec& spec, const SpinConfig& config) {
    if (config.n() != spec.n_sites)
        throw std::invalid_argument("transform_spec: config length mismatch");
    for (int s : config.sigmas)
        if (s != 1 && s != -1)
            throw std::invalid_argument("transform_spec: sigma entries must be +-1");
    if (config.all_up()) return spec;
    const CouplingSpec raw =
        is_real_spec(spec) ? transform_closed_form(spec, config) : transform_dense(spec, config);
    // Revalidate: the class is closed under the transformation.
    return make_spec(raw.n_sites, raw.k_matrix, raw.j_matrix, raw.zz_matrix,
                     raw.z_fields, raw.scalar_offset);
}

StateVector apply_flip_unitary(const StateVector& psi, const SpinConfig& config) {
    if (config.n() != psi.n_sites)
        throw std::invalid_argument("apply_flip_unitary: config length mismatch");
    std::size_t mask = 0;
    int flips = 0;
    for (int i = 0; i < psi.n_sites; ++i) {
        if (config.sigmas[i] == -1) {
            mask |= std::size_t{1} << i;
            ++flips;
        }
    }
    static constexpr Complex kPhases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const Complex phase = kPhases[flips % 4];
    StateVector out;
    out.n_sites = psi.n_sites;
    out.amplitudes.assign(psi.dim(), Complex(0.0, 0.0));
    for (std::size_t x = 0; x < psi.dim(); ++x)
        out.amplitudes[x ^ mask] = phase * psi.amplitudes[x];
    return out;
}

CollectiveMoments modified_collective_moments(const StateVector& psi,
                                              const SpinConfig& config) {
    return collective_moments(psi, &config);
}

SlopeResult verify_generalized_t1(const CouplingSpec& spec, const SpinConfig& config,
                                  XiKind xi, const std::vector<double>& t_grid,
                                  std::vector<SqueezingReport>* reports) {
    const int n = spec.n_sites;
    const CouplingSpec transformed = transform_spec(spec, config);
    const KernelMaxResult imax = maximize_imag(active_kernel_view(transformed));
    const double predicted = -4.0 * imax.value / n;

    LocalOptions local_opts;
    local_opts.extra_seeds.push_back(imax.angles);

    if (reports) reports->clear();
    std::vector<double> xi2(t_grid.size());
    StateVector psi = product_state(config);
    double t_prev = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        psi = evolve(spec, psi, t_grid[k] - t_prev);
        t_prev = t_grid[k];
        if (reports) {
            reports->push_back(analyze_squeezing(psi, local_opts, &config));
            xi2[k] = xi == XiKind::local ? reports->back().xi2_local
                                         : reports->back().xi2_uniform;
        } else {
            xi2[k] = xi == XiKind::local ? xi2_local(psi, local_opts, &config).xi2
                                         : xi2_uniform(psi, &config).xi2;
        }
    }
    return fit_initial_slope(t_grid, xi2, predicted);
}

SlopeResult verify_generalized_t2(const CouplingSpec& spec, const SpinConfig& config,
                                  double field_h, XiKind xi,
                                  const std::vector<double>& lambda_grid,
                                  std::vector<SqueezingReport>* reports) {
    if (!(field_h > 0.0))
        throw std::invalid_argument("verify_generalized_t2: field must be positive");
    const int n = spec.n_sites;
    const CouplingSpec transformed = transform_spec(spec, config);
    const KernelMaxResult rmax = maximize_real(active_kernel_view(transformed));
    const double predicted = -2.0 * rmax.value / (field_h * n);

    LocalOptions local_opts;
    local_opts.extra_seeds.push_back(rmax.angles);

    RVector fields(n);
    for (int i = 0; i < n; ++i) fields(i) = field_h * config.sigmas[i];

    if (reports) reports->clear();
    std::vector<double> xi2(lambda_grid.size());
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        const GroundStateResult gs = ground_state(spec, lambda_grid[k], fields);
        if (gs.gap < 1e-8 * field_h)
            throw std::runtime_error("verify_generalized_t2: ground level degenerate");
        min_gap = std::min(min_gap, gs.gap);
        if (reports) {
            reports->push_back(analyze_squeezing(gs.state, local_opts, &config));
            xi2[k] = xi == XiKind::local ? reports->back().xi2_local
                                         : reports->back().xi2_uniform;
        } else {
            xi2[k] = xi == XiKind::local ? xi2_local(gs.state, local_opts, &config).xi2
                                         : xi2_uniform(gs.state, &config).xi2;
        }
    }
    SlopeResult result = fit_initial_slope(lambda_grid, xi2, predicted);
    if (min_gap < 0.5 * field_h) result.reliable = false;
    return result;
}

}  // namespace sqz
