#include "sqz/dense.hpp"

#include <stdexcept>

namespace sqz {

namespace {

constexpr Complex kI(0.0, 1.0);

std::size_t dim_of(int n) { return std::size_t{1} << n; }

void check_dense_size(int n) {
    if (n < 1 || n > kDenseCap)
        throw std::invalid_argument("dense operators limited to 1..10 sites");
}

}  // namespace

// Single-site matrices in the (down, up) basis: row/column 0 is down, 1 is up.
Eigen::Matrix2cd site_sx() {
    Eigen::Matrix2cd m;
    m << 0.0, 0.5, 0.5, 0.0;
    return m;
}

Eigen::Matrix2cd site_sy() {
    Eigen::Matrix2cd m;
    m << 0.0, 0.5 * kI, -0.5 * kI, 0.0;
    return m;
}

Eigen::Matrix2cd site_sz() {
    Eigen::Matrix2cd m;
    m << -0.5, 0.0, 0.0, 0.5;
    return m;
}

Eigen::Matrix2cd site_sp() {
    Eigen::Matrix2cd m;
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}

Eigen::Matrix2cd site_sm() {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}

Eigen::MatrixXcd dense_one_site(int n, int site, const Eigen::Matrix2cd& op) {
    check_dense_size(n);
    const std::size_t dim = dim_of(n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const std::size_t mask = std::size_t{1} << site;
    for (std::size_t col = 0; col < dim; ++col) {
        const int bc = (col & mask) ? 1 : 0;
        for (int br = 0; br < 2; ++br) {
            const Complex amp = op(br, bc);
            if (amp == 0.0) continue;
            const std::size_t row = br ? (col | mask) : (col & ~mask);
            m(row, col) += amp;
        }
    }
    return m;
}

Eigen::MatrixXcd dense_two_site(int n, int i, const Eigen::Matrix2cd& op_i,
                                int j, const Eigen::Matrix2cd& op_j) {
    check_dense_size(n);
    if (i == j) throw std::invalid_argument("dense_two_site: sites must differ");
    const std::size_t dim = dim_of(n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const std::size_t mi = std::size_t{1} << i;
    const std::size_t mj = std::size_t{1} << j;
    for (std::size_t col = 0; col < dim; ++col) {
        const int bci = (col & mi) ? 1 : 0;
        const int bcj = (col & mj) ? 1 : 0;
        for (int bri = 0; bri < 2; ++bri) {
            for (int brj = 0; brj < 2; ++brj) {
                const Complex amp = op_i(bri, bci) * op_j(brj, bcj);
                if (amp == 0.0) continue;
                std::size_t row = col;
                row = bri ? (row | mi) : (row & ~mi);
                row = brj ? (row | mj) : (row & ~mj);
                m(row, col) += amp;
            }
        }
    }
    return m;
}

Eigen::MatrixXcd dense_hamiltonian(const CouplingSpec& spec) {
    const int n = spec.n_sites;
    check_dense_size(n);
    const std::size_t dim = dim_of(n);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    const Eigen::Matrix2cd sp = site_sp();
    const Eigen::Matrix2cd sm = site_sm();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Complex k = spec.k_matrix(i, j);
            if (k != 0.0) {
                const Eigen::MatrixXcd raise2 = dense_two_site(n, i, sp, j, sp);
                h += k * raise2;
                h += std::conj(k) * raise2.adjoint();
            }
            const Complex jj = spec.j_matrix(i, j);
            if (jj != 0.0) {
                const Eigen::MatrixXcd hop = dense_two_site(n, i, sp, j, sm);
                h += jj * hop;
                h += std::conj(jj) * hop.adjoint();
            }
        }
    }

    // All remaining terms are diagonal: i == j exchange entries (S+S- on one
    // site projects onto up), SzSz couplings, fields and the scalar offset.
    for (std::size_t x = 0; x < dim; ++x) {
        double e = spec.scalar_offset;
        for (int i = 0; i < n; ++i) {
            const double si = (x >> i) & 1 ? 1.0 : -1.0;
            e += 2.0 * spec.j_matrix(i, i).real() * ((x >> i) & 1 ? 1.0 : 0.0);
            e += spec.z_fields(i) * si / 2.0;
            for (int j = i + 1; j < n; ++j) {
                const double sj = (x >> j) & 1 ? 1.0 : -1.0;
                e += spec.zz_matrix(i, j) * si * sj / 2.0;
            }
        }
        h(x, x) += e;
    }
    return h;
}

Eigen::MatrixXcd dense_collective(int n, Axis axis, const SpinConfig* config) {
    check_dense_size(n);
    if (config && config->n() != n)
        throw std::invalid_argument("dense_collective: config length mismatch");
    const Eigen::Matrix2cd op =
        axis == Axis::x ? site_sx() : (axis == Axis::y ? site_sy() : site_sz());
    const std::size_t dim = dim_of(n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        // The x component of the modified collective spin is unweighted.
        const double w = (config && axis != Axis::x) ? config->sigmas[i] : 1.0;
        m += w * dense_one_site(n, i, op);
    }
    return m;
}

Eigen::MatrixXcd dense_transverse(int n, const AngleSet& angles) {
    check_dense_size(n);
    if (angles.n() != n)
        throw std::invalid_argument("dense_transverse: angle count mismatch");
    const std::size_t dim = dim_of(n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::Matrix2cd sx = site_sx();
    const Eigen::Matrix2cd sy = site_sy();
    for (int i = 0; i < n; ++i) {
        const double th = angles.thetas(i);
        m += std::cos(th) * dense_one_site(n, i, sx) +
             std::sin(th) * dense_one_site(n, i, sy);
    }
    return m;
}

Eigen::VectorXd parity_diagonal(int n) {
    check_dense_size(n);
    const std::size_t dim = dim_of(n);
    Eigen::VectorXd p(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const int downs = n - __builtin_popcountll(x);
        p(x) = (downs % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

double parity_residual(const Eigen::MatrixXcd& h, int n) {
    const Eigen::VectorXd p = parity_diagonal(n);
    if (h.rows() != p.size() || h.cols() != p.size())
        throw std::invalid_argument("parity_residual: dimension mismatch");
    // P is diagonal, so [H, P](r, c) = h(r, c) (p(c) - p(r)).
    double residual = 0.0;
    for (Eigen::Index c = 0; c < h.cols(); ++c)
        for (Eigen::Index r = 0; r < h.rows(); ++r)
            residual = std::max(residual, std::abs(h(r, c)) * std::abs(p(c) - p(r)));
    return residual;
}

}  // namespace sqz
