#include "sqz/kernel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sqz {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXcd phases(const Eigen::VectorXd& thetas) {
    return (kI * thetas.cast<Complex>().array()).exp();
}

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

void AngleSet::canonicalize() {
    for (Eigen::Index i = 0; i < thetas.size(); ++i) thetas(i) = wrap_angle(thetas(i));
}

AngleSet AngleSet::zeros(int n) { return AngleSet{Eigen::VectorXd::Zero(n)}; }

AngleSet AngleSet::uniform(int n, double theta) {
    return AngleSet{Eigen::VectorXd::Constant(n, theta)};
}

Complex eval_kernel(const CouplingSpec& spec, const AngleSet& angles) {
    if (angles.n() != spec.n_sites)
        throw std::invalid_argument("eval_kernel: angle count mismatch");
    const Eigen::VectorXcd u = phases(angles.thetas);
    Complex k = u.transpose() * spec.k_matrix * u;
    if (!spec.include_diagonal_in_kernel)
        k -= (spec.k_matrix.diagonal().array() * u.array().square()).sum();
    return k;
}

Eigen::VectorXcd kernel_gradient(const CouplingSpec& spec, const AngleSet& angles) {
    if (angles.n() != spec.n_sites)
        throw std::invalid_argument("kernel_gradient: angle count mismatch");
    const Eigen::VectorXcd u = phases(angles.thetas);
    Eigen::VectorXcd row = spec.k_matrix * u;  // sum_j k(l,j) e^{i theta_j}
    if (!spec.include_diagonal_in_kernel)
        row -= (spec.k_matrix.diagonal().array() * u.array()).matrix();
    return 2.0 * kI * (u.array() * row.array()).matrix();
}

Complex kernel_at_zero(const CouplingSpec& spec) {
    return eval_kernel(spec, AngleSet::zeros(spec.n_sites));
}

double squeezing_threshold(const CouplingSpec& spec) {
    const double kmax = spec.k_matrix.cwiseAbs().maxCoeff();
    const double n2 = static_cast<double>(spec.n_sites) * spec.n_sites;
    return 1e-9 * std::max(1.0, kmax * n2);
}

TorusMaxResult maximize_on_torus(const TorusObjective& objective, int dim,
                                 const std::vector<Eigen::VectorXd>& seeds,
                                 const KernelOptions& opts) {
    std::vector<Eigen::VectorXd> starts = seeds;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int r = 0; r < opts.n_restarts; ++r) {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x(i) = angle(rng);
        starts.push_back(std::move(x));
    }

    TorusMaxResult best;
    best.x = Eigen::VectorXd::Zero(dim);
    bool have_best = false;

    for (const Eigen::VectorXd& start : starts) {
        Eigen::VectorXd x = start;
        double f = objective.value(x);
        double step = 0.5;
        bool converged = false;
        double alpha = step;
        for (int iter = 0; iter < opts.max_iterations; ++iter) {
            Eigen::VectorXd g = objective.gradient(x);
            if (g.cwiseAbs().maxCoeff() < opts.grad_tol) {
                converged = true;
                break;
            }
            // Backtracking ascent step with an Armijo acceptance test. Strict
            // improvement is required: once gains drop below one ulp the line
            // search is meaningless and the gradient polish below takes over.
            const double g2 = g.squaredNorm();
            alpha = step;
            bool accepted = false;
            while (alpha > 1e-16) {
                const Eigen::VectorXd cand = x + alpha * g;
                const double fc = objective.value(cand);
                if (fc > f + 1e-4 * alpha * g2) {
                    x = cand;
                    f = fc;
                    accepted = true;
                    break;
                }
                alpha /= 2.0;
            }
            if (!accepted) {
                // Objective improvements fell below double resolution. Plain
                // gradient steps still contract the gradient itself, so
                // polish until the gradient criterion is decidable.
                double ap = 1.0;
                for (int p = 0; p < 500; ++p) {
                    if (g.cwiseAbs().maxCoeff() < opts.grad_tol) {
                        converged = true;
                        break;
                    }
                    const Eigen::VectorXd cand = x + ap * g;
                    const Eigen::VectorXd gc = objective.gradient(cand);
                    if (gc.norm() < g.norm()) {
                        x = cand;
                        g = gc;
                    } else {
                        ap /= 2.0;
                        if (ap < 1e-18) break;
                    }
                }
                f = objective.value(x);
                break;
            }
            step = std::min(2.0 * alpha, 1.0);
        }
        // Near-ties keep the first hit (converged seeds come first).
        const double tie = 1e-12 * std::max(1.0, std::abs(f));
        if (!have_best || f > best.value + tie) {
            have_best = true;
            best.value = f;
            best.x = x;
            best.converged = converged;
        }
    }
    best.n_restarts_used = static_cast<int>(starts.size());
    return best;
}

namespace {

// Closed-form angle sets worth trying before random restarts. The uniform
// rotation e^{2i theta} K0 can always be phased onto the target component;
// the sign recipes cover the real-K and imaginary-K special cases.
std::vector<Eigen::VectorXd> analytic_seeds(const CouplingSpec& spec, bool want_imag) {
    const int n = spec.n_sites;
    const Complex k0 = kernel_at_zero(spec);
    const double r0 = k0.real();
    const double i0 = k0.imag();
    constexpr double pi = std::numbers::pi;

    std::vector<Eigen::VectorXd> seeds;
    seeds.push_back(Eigen::VectorXd::Zero(n));
    if (std::abs(k0) > 0.0) {
        const double target = want_imag ? pi / 2.0 : 0.0;
        seeds.push_back(Eigen::VectorXd::Constant(n, (target - std::arg(k0)) / 2.0));
    }
    if (want_imag) {
        if (r0 != 0.0)
            seeds.push_back(Eigen::VectorXd::Constant(n, pi / 4.0 * sign_of(r0)));
        if (i0 != 0.0)
            seeds.push_back(Eigen::VectorXd::Constant(n, i0 > 0.0 ? 0.0 : pi / 2.0));
    } else {
        if (r0 != 0.0)
            seeds.push_back(Eigen::VectorXd::Constant(n, r0 > 0.0 ? 0.0 : pi / 2.0));
        if (i0 != 0.0)
            seeds.push_back(Eigen::VectorXd::Constant(n, -pi / 4.0 * sign_of(i0)));
    }
    return seeds;
}

KernelMaxResult maximize_component(const CouplingSpec& spec, bool want_imag,
                                   const KernelOptions& opts) {
    const int n = spec.n_sites;

    CMatrix active = spec.k_matrix;
    if (!spec.include_diagonal_in_kernel) active.diagonal().setZero();
    if (active.cwiseAbs().maxCoeff() == 0.0) {
        KernelMaxResult res;
        res.angles = AngleSet::zeros(n);
        res.converged = true;
        return res;
    }

    TorusObjective objective;
    objective.value = [&](const Eigen::VectorXd& x) {
        const Complex k = eval_kernel(spec, AngleSet{x});
        return want_imag ? k.imag() : k.real();
    };
    objective.gradient = [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXcd g = kernel_gradient(spec, AngleSet{x});
        return want_imag ? Eigen::VectorXd(g.imag()) : Eigen::VectorXd(g.real());
    };

    const std::vector<Eigen::VectorXd> seeds = analytic_seeds(spec, want_imag);
    double seed_best = objective.value(seeds.front());
    for (const auto& s : seeds) seed_best = std::max(seed_best, objective.value(s));

    const TorusMaxResult opt = maximize_on_torus(objective, n, seeds, opts);

    KernelMaxResult res;
    res.value = opt.value;
    res.angles = AngleSet{opt.x};
    res.angles.canonicalize();
    res.analytic_lower_bound = seed_best;
    res.converged = opt.converged;
    res.n_restarts_used = opt.n_restarts_used;
    return res;
}

}  // namespace

KernelMaxResult maximize_imag(const CouplingSpec& spec, const KernelOptions& opts) {
    return maximize_component(spec, /*want_imag=*/true, opts);
}

KernelMaxResult maximize_real(const CouplingSpec& spec, const KernelOptions& opts) {
    return maximize_component(spec, /*want_imag=*/false, opts);
}

}  // namespace sqz
