#include "sqz/coupling_spec.hpp"

#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>

#include "sqz/dense.hpp"

namespace sqz {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

}  // namespace

bool SpinConfig::all_up() const {
    for (int s : sigmas)
        if (s != 1) return false;
    return true;
}

SpinConfig SpinConfig::all_plus(int n) {
    require(n >= 1, "SpinConfig: need at least one site");
    return SpinConfig{std::vector<int>(static_cast<std::size_t>(n), 1)};
}

SpinConfig SpinConfig::parse(std::string_view text) {
    SpinConfig cfg;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == ',' || c == ' ') continue;
        if (c == '+') {
            if (pos + 1 < text.size() && text[pos + 1] == '1') ++pos;
            cfg.sigmas.push_back(+1);
        } else if (c == '-') {
            if (pos + 1 < text.size() && text[pos + 1] == '1') ++pos;
            cfg.sigmas.push_back(-1);
        } else {
            throw std::invalid_argument("SpinConfig: expected '+' or '-'");
        }
    }
    require(!cfg.sigmas.empty(), "SpinConfig: empty configuration");
    return cfg;
}

CouplingSpec make_spec(int n_sites, CMatrix k, CMatrix j, RMatrix zz,
                       RVector z_fields, double scalar_offset) {
    require(n_sites >= 1, "make_spec: n_sites must be positive");
    const auto n = static_cast<Eigen::Index>(n_sites);
    require(k.rows() == n && k.cols() == n, "make_spec: k_matrix must be N x N");
    require(j.rows() == n && j.cols() == n, "make_spec: j_matrix must be N x N");
    require(zz.rows() == n && zz.cols() == n, "make_spec: zz_matrix must be N x N");
    require(z_fields.size() == n, "make_spec: z_fields must have length N");
    require(all_finite(k) && all_finite(j) && zz.allFinite() && z_fields.allFinite() &&
                std::isfinite(scalar_offset),
            "make_spec: couplings must be finite");

    // Only the symmetric part of K acts on S+S+. Keep the symmetrization
    // explicit and loud: a lopsided input is usually a caller bug.
    const double asym = (k - k.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, k.cwiseAbs().maxCoeff())) {
        std::cerr << "sqz: warning: k_matrix has an antisymmetric part (max "
                  << asym << "); using the symmetric part only\n";
    }
    k = ((k + k.transpose()) / 2.0).eval();

    require((j - j.adjoint()).cwiseAbs().maxCoeff() <=
                1e-12 * std::max(1.0, j.cwiseAbs().maxCoeff()),
            "make_spec: j_matrix must be Hermitian");
    require((zz - zz.transpose()).cwiseAbs().maxCoeff() <=
                1e-12 * std::max(1.0, zz.cwiseAbs().maxCoeff()),
            "make_spec: zz_matrix must be symmetric");
    require(zz.diagonal().cwiseAbs().maxCoeff() == 0.0,
            "make_spec: zz_matrix must have zero diagonal");

    CouplingSpec spec;
    spec.n_sites = n_sites;
    spec.k_matrix = std::move(k);
    spec.j_matrix = std::move(j);
    spec.zz_matrix = std::move(zz);
    spec.z_fields = std::move(z_fields);
    spec.scalar_offset = scalar_offset;
    return spec;
}

CouplingSpec build_xyz(const RMatrix& jx, const RMatrix& jy, const RMatrix& jz) {
    const Eigen::Index n = jx.rows();
    require(n >= 2, "build_xyz: need at least two sites");
    for (const RMatrix* m : {&jx, &jy, &jz}) {
        require(m->rows() == n && m->cols() == n, "build_xyz: dimension mismatch");
        require((*m - m->transpose()).cwiseAbs().maxCoeff() <=
                    1e-12 * std::max(1.0, m->cwiseAbs().maxCoeff()),
                "build_xyz: couplings must be symmetric");
        require(m->diagonal().cwiseAbs().maxCoeff() == 0.0,
                "build_xyz: couplings must have zero diagonal");
    }
    CMatrix k = ((jx - jy) / 4.0).cast<Complex>();
    CMatrix j = ((jx + jy) / 4.0).cast<Complex>();
    return make_spec(static_cast<int>(n), std::move(k), std::move(j), jz,
                     RVector::Zero(n));
}

CouplingSpec build_oat(double chi, int n) {
    require(n >= 2, "build_oat: need at least two sites");
    // (chi/N)(Jx)^2 expands into k = j = chi/(4N) on every pair. The i == j
    // exchange entries produce an extra (chi/2N) Jz + chi/4 beyond the bare
    // operator, cancelled here by uniform z fields; the chi/4 identity piece
    // is exactly the single-site (Sx)^2 content, so the scalar offset is 0.
    const Complex amp(chi / (4.0 * n), 0.0);
    CMatrix k = CMatrix::Constant(n, n, amp);
    CMatrix j = CMatrix::Constant(n, n, amp);
    RVector h = RVector::Constant(n, -chi / (2.0 * n));
    return make_spec(n, std::move(k), std::move(j), RMatrix::Zero(n, n), std::move(h));
}

CouplingSpec build_tact(double chi, int n) {
    require(n >= 2, "build_tact: need at least two sites");
    const Complex amp(0.0, -chi / n);  // chi/(iN) = -i chi/N
    CMatrix k = CMatrix::Constant(n, n, amp);
    return make_spec(n, std::move(k), CMatrix::Zero(n, n), RMatrix::Zero(n, n),
                     RVector::Zero(n));
}

CouplingSpec random_xyz(int n, std::uint64_t seed, int max_range) {
    require(n >= 2, "random_xyz: need at least two sites");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coupling(-1.0, 1.0);
    RMatrix jx = RMatrix::Zero(n, n), jy = RMatrix::Zero(n, n), jz = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (max_range > 0 && j - i > max_range) continue;
            jx(i, j) = jx(j, i) = coupling(rng);
            jy(i, j) = jy(j, i) = coupling(rng);
            jz(i, j) = jz(j, i) = coupling(rng);
        }
    }
    return build_xyz(jx, jy, jz);
}

void xyz_couplings(const CouplingSpec& spec, RMatrix& jx, RMatrix& jy, RMatrix& jz) {
    require(spec.k_matrix.imag().cwiseAbs().maxCoeff() == 0.0 &&
                spec.j_matrix.imag().cwiseAbs().maxCoeff() == 0.0,
            "xyz_couplings: spec has complex couplings");
    const RMatrix k = spec.k_matrix.real();
    const RMatrix j = spec.j_matrix.real();
    jx = 2.0 * (j + k);
    jy = 2.0 * (j - k);
    jz = spec.zz_matrix;
}

double hamiltonian_norm_bound(const CouplingSpec& spec) {
    double bound = 2.0 * (spec.k_matrix.cwiseAbs().sum() + spec.j_matrix.cwiseAbs().sum());
    bound += spec.zz_matrix.cwiseAbs().sum() / 4.0;
    bound += spec.z_fields.cwiseAbs().sum() / 2.0;
    bound += std::abs(spec.scalar_offset);
    return bound;
}

double coupling_scale(const CouplingSpec& spec) {
    const double scale = hamiltonian_norm_bound(spec) / spec.n_sites;
    return scale > 0.0 ? scale : 1.0;
}

double verify_parity(const CouplingSpec& spec, int n_max) {
    require(spec.n_sites <= n_max, "verify_parity: dense construction over cap");
    return parity_residual(dense_hamiltonian(spec), spec.n_sites);
}

}  // namespace sqz
