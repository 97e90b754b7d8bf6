#include "sqz/squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqz {

namespace {

constexpr Complex kI(0.0, 1.0);

void check_state(const StateVector& psi, const SpinConfig* config, const char* who) {
    if (psi.dim() != (std::size_t{1} << psi.n_sites))
        throw std::invalid_argument(std::string(who) + ": inconsistent state");
    if (config && config->n() != psi.n_sites)
        throw std::invalid_argument(std::string(who) + ": config length mismatch");
}

Eigen::VectorXcd conj_phases(const Eigen::VectorXd& thetas, const SpinConfig* config) {
    Eigen::VectorXd eff = thetas;
    if (config)
        for (Eigen::Index i = 0; i < eff.size(); ++i) eff(i) *= config->sigmas[i];
    return (-kI * eff.cast<Complex>().array()).exp();
}

}  // namespace

StateVector apply_collective(const StateVector& psi, Axis axis, const SpinConfig* config) {
    check_state(psi, config, "apply_collective");
    const int n = psi.n_sites;
    const std::size_t dim = psi.dim();
    StateVector out;
    out.n_sites = n;
    out.amplitudes.assign(dim, Complex(0.0, 0.0));
    const std::vector<Complex>& in = psi.amplitudes;

    if (axis == Axis::z) {
        for (std::size_t x = 0; x < dim; ++x) {
            double m = 0.0;
            for (int i = 0; i < n; ++i) {
                const double w = config ? config->sigmas[i] : 1.0;
                m += w * (((x >> i) & 1) ? 0.5 : -0.5);
            }
            out.amplitudes[x] = m * in[x];
        }
        return out;
    }

    for (int i = 0; i < n; ++i) {
        const std::size_t mi = std::size_t{1} << i;
        // sigma weights touch only the y component of the modified spin
        const double w = (config && axis == Axis::y) ? config->sigmas[i] : 1.0;
        for (std::size_t x = 0; x < dim; ++x) {
            const bool up = (x & mi) != 0;
            if (axis == Axis::x) {
                out.amplitudes[x ^ mi] += 0.5 * w * in[x];
            } else {
                // Sy: up -> (i/2) down, down -> -(i/2) up
                out.amplitudes[x ^ mi] += (up ? 0.5 * kI : -0.5 * kI) * w * in[x];
            }
        }
    }
    return out;
}

CollectiveMoments collective_moments(const StateVector& psi, const SpinConfig* config) {
    check_state(psi, config, "collective_moments");
    const StateVector jx = apply_collective(psi, Axis::x, config);
    const StateVector jy = apply_collective(psi, Axis::y, config);
    const StateVector jz = apply_collective(psi, Axis::z, config);
    const StateVector* j[3] = {&jx, &jy, &jz};

    CollectiveMoments m;
    for (int a = 0; a < 3; ++a) {
        m.mean(a) = inner(psi, *j[a]).real();
        for (int b = a; b < 3; ++b) {
            m.second(a, b) = m.second(b, a) = inner(*j[a], *j[b]).real();
        }
    }
    return m;
}

PairExpectations pair_expectations(const StateVector& psi) {
    check_state(psi, nullptr, "pair_expectations");
    const int n = psi.n_sites;
    const std::size_t dim = psi.dim();
    const std::vector<Complex>& a = psi.amplitudes;

    PairExpectations pe;
    pe.n_sites = n;
    pe.raise2 = CMatrix::Zero(n, n);
    pe.exchange = CMatrix::Zero(n, n);
    pe.raise1 = Eigen::VectorXcd::Zero(n);

    for (int i = 0; i < n; ++i) {
        const std::size_t mi = std::size_t{1} << i;
        for (std::size_t x = 0; x < dim; ++x)
            if ((x & mi) == 0) pe.raise1(i) += std::conj(a[x | mi]) * a[x];
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::size_t mj = std::size_t{1} << j;
            Complex r2(0.0, 0.0), ex(0.0, 0.0);
            for (std::size_t x = 0; x < dim; ++x) {
                const bool bi = (x & mi) != 0;
                const bool bj = (x & mj) != 0;
                if (!bi && !bj) r2 += std::conj(a[x | mi | mj]) * a[x];
                if (!bi && bj) ex += std::conj(a[(x & ~mj) | mi]) * a[x];
            }
            pe.raise2(i, j) = r2;
            pe.exchange(i, j) = ex;
        }
    }
    return pe;
}

// Var(J_perp) = N/4 + (1/2) Re[ conj(u)^T raise2 conj(u) + conj(u)^T exchange u ]
//             - (sum_i Re(conj(u_i) raise1_i))^2,   u_i = exp(i theta_i).
double transverse_variance(const PairExpectations& pairs, const AngleSet& angles,
                           const SpinConfig* config) {
    if (angles.n() != pairs.n_sites)
        throw std::invalid_argument("transverse_variance: angle count mismatch");
    const Eigen::VectorXcd ub = conj_phases(angles.thetas, config);
    const Eigen::VectorXcd u = ub.conjugate();
    const Complex quad = (ub.transpose() * pairs.raise2 * ub).value() +
                         (ub.transpose() * pairs.exchange * u).value();
    const double mean = (ub.array() * pairs.raise1.array()).real().sum();
    return pairs.n_sites / 4.0 + 0.5 * quad.real() - mean * mean;
}

Eigen::VectorXd transverse_variance_gradient(const PairExpectations& pairs,
                                             const AngleSet& angles,
                                             const SpinConfig* config) {
    if (angles.n() != pairs.n_sites)
        throw std::invalid_argument("transverse_variance_gradient: angle count mismatch");
    const int n = pairs.n_sites;
    const Eigen::VectorXcd ub = conj_phases(angles.thetas, config);
    const Eigen::VectorXcd u = ub.conjugate();
    const Eigen::VectorXcd a_row = pairs.raise2 * ub;
    const Eigen::VectorXcd c_row = pairs.exchange * u;
    const double mean = (ub.array() * pairs.raise1.array()).real().sum();

    Eigen::VectorXd g(n);
    for (int l = 0; l < n; ++l) {
        double d = (ub(l) * (a_row(l) + c_row(l))).imag();
        d -= 2.0 * mean * (ub(l) * pairs.raise1(l)).imag();
        if (config) d *= config->sigmas[l];
        g(l) = d;
    }
    return g;
}

double transverse_mean(const PairExpectations& pairs, const AngleSet& angles,
                       const SpinConfig* config) {
    const Eigen::VectorXcd ub = conj_phases(angles.thetas, config);
    return (ub.array() * pairs.raise1.array()).real().sum();
}

UniformSqueezing xi2_uniform(const StateVector& psi, const SpinConfig* config) {
    const CollectiveMoments m = collective_moments(psi, config);
    const double len = m.mean.norm();
    if (len <= 1e-12)
        throw std::runtime_error("xi2_uniform: mean spin vanishes, parameter undefined");

    // Exact two-angle rotation taking z onto the mean-spin direction; the
    // transverse plane is spanned by the rotated x and y axes.
    const Eigen::Vector3d nh = m.mean / len;
    const double beta = std::acos(std::clamp(nh.z(), -1.0, 1.0));
    const double alpha = (std::abs(nh.x()) + std::abs(nh.y()) < 1e-12)
                             ? 0.0
                             : std::atan2(nh.y(), nh.x());
    const Eigen::Vector3d e1(std::cos(beta) * std::cos(alpha),
                             std::cos(beta) * std::sin(alpha), -std::sin(beta));
    const Eigen::Vector3d e2(-std::sin(alpha), std::cos(alpha), 0.0);

    // <J.e_a> = 0 exactly for a transverse axis, so the 2x2 covariance is
    // just the projected second-moment block.
    Eigen::Matrix2d cov;
    cov(0, 0) = e1.dot(m.second * e1);
    cov(1, 1) = e2.dot(m.second * e2);
    cov(0, 1) = cov(1, 0) = e1.dot(m.second * e2);

    const double tr = cov.trace();
    const double det = cov.determinant();
    const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
    const double vmin = tr / 2.0 - disc;

    UniformSqueezing result;
    result.variance = vmin;
    result.xi2 = psi.n_sites * vmin / (len * len);
    result.angle = 0.5 * std::atan2(2.0 * cov(0, 1), cov(0, 0) - cov(1, 1)) +
                   std::numbers::pi / 2.0;
    return result;
}

LocalSqueezing xi2_local(const StateVector& psi, const LocalOptions& opts,
                         const SpinConfig* config) {
    check_state(psi, config, "xi2_local");
    const int n = psi.n_sites;
    const StateVector jz = apply_collective(psi, Axis::z, config);
    const double jz_mean = inner(psi, jz).real();
    if (std::abs(jz_mean) <= 1e-12)
        throw std::runtime_error("xi2_local: <Jz> vanishes, parameter undefined");

    const PairExpectations pairs = pair_expectations(psi);

    TorusObjective objective;  // maximize -Var
    objective.value = [&](const Eigen::VectorXd& x) {
        return -transverse_variance(pairs, AngleSet{x}, config);
    };
    objective.gradient = [&](const Eigen::VectorXd& x) {
        return Eigen::VectorXd(-transverse_variance_gradient(pairs, AngleSet{x}, config));
    };

    std::vector<Eigen::VectorXd> seeds;
    seeds.push_back(Eigen::VectorXd::Zero(n));
    // Coarse scan over uniform angle sets; the analytic optima of the
    // short-time and perturbative variances are uniform for real couplings.
    double best_uniform = 0.0, best_val = objective.value(seeds[0]);
    for (int k = 1; k < 64; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 64.0;
        const double v = objective.value(Eigen::VectorXd::Constant(n, th));
        if (v > best_val) {
            best_val = v;
            best_uniform = th;
        }
    }
    seeds.push_back(Eigen::VectorXd::Constant(n, best_uniform));
    for (const AngleSet& s : opts.extra_seeds) {
        if (s.n() == n) seeds.push_back(s.thetas);
    }

    KernelOptions kopts;
    kopts.n_restarts = opts.n_restarts;
    kopts.seed = opts.seed;
    const TorusMaxResult opt = maximize_on_torus(objective, n, seeds, kopts);

    LocalSqueezing result;
    result.variance = -opt.value;
    result.xi2 = n * result.variance / (jz_mean * jz_mean);
    result.angles = AngleSet{opt.x};
    result.angles.canonicalize();
    result.converged = opt.converged;
    return result;
}

SqueezingReport analyze_squeezing(const StateVector& psi, const LocalOptions& opts,
                                  const SpinConfig* config) {
    const CollectiveMoments m = collective_moments(psi, config);
    const UniformSqueezing uni = xi2_uniform(psi, config);
    const LocalSqueezing loc = xi2_local(psi, opts, config);

    SqueezingReport report;
    report.mean_spin = m.mean;
    report.var_min_uniform = uni.variance;
    report.xi2_uniform = uni.xi2;
    report.var_min_local = loc.variance;
    report.xi2_local = loc.xi2;
    report.optimal_local_angles = loc.angles;
    report.optimal_uniform_angle = uni.angle;
    return report;
}

}  // namespace sqz
