#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sqz {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class Axis { x, y, z };

/// Largest site count for which dense 2^N x 2^N matrices are built.
inline constexpr int kDenseCap = 10;

/// Parity-conserving bilinear spin-1/2 Hamiltonian
///
///   H = sum_ij ( k(i,j) S_i^+ S_j^+  +  j(i,j) S_i^+ S_j^-  + h.c. )
///     + sum_ij zz(i,j) S_i^z S_j^z  +  sum_i h(i) S_i^z  +  offset
///
/// with both ij sums running over all ordered pairs. The raising-raising
/// block is stored symmetrized (k(j,i) == k(i,j)); the exchange block is
/// Hermitian. Diagonal k entries multiply S_i^+ S_i^+ = 0 and are inert in
/// dynamics, but they are kept in the matrix and counted in the kernel sums
/// when include_diagonal_in_kernel is set.
struct CouplingSpec {
    int n_sites = 0;
    CMatrix k_matrix;   // S+S+ couplings, complex symmetric
    CMatrix j_matrix;   // S+S- couplings, Hermitian
    RMatrix zz_matrix;  // SzSz couplings, real symmetric, zero diagonal
    RVector z_fields;   // per-site Sz coefficients
    double scalar_offset = 0.0;
    bool include_diagonal_in_kernel = true;
};

/// Product state in the computational basis, entries +1 (up) / -1 (down).
struct SpinConfig {
    std::vector<int> sigmas;

    int n() const { return static_cast<int>(sigmas.size()); }
    bool all_up() const;

    static SpinConfig all_plus(int n);
    /// Parses strings like "+-++" or "+1,-1,+1".
    static SpinConfig parse(std::string_view text);
};

/// Validating constructor: checks dimensions and finiteness, symmetrizes K
/// (warning on stderr if the input had an antisymmetric part), verifies J
/// Hermitian and zz symmetric with zero diagonal.
CouplingSpec make_spec(int n_sites, CMatrix k, CMatrix j, RMatrix zz,
                       RVector z_fields, double scalar_offset = 0.0);

/// XYZ exchange model: sum_ij Jx SxSx + Jy SySy + Jz SzSz with real
/// symmetric zero-diagonal coupling matrices.
CouplingSpec build_xyz(const RMatrix& jx, const RMatrix& jy, const RMatrix& jz);

/// One-axis twisting (chi/N) (Jx)^2, expanded into the bilinear class.
CouplingSpec build_oat(double chi, int n);

/// Two-axis countertwisting (chi / iN) [(J+)^2 - (J-)^2].
CouplingSpec build_tact(double chi, int n);

/// Seeded random XYZ instance, couplings i.i.d. uniform in [-1,1] on all
/// pairs (no range cutoff when max_range <= 0; otherwise bonds longer than
/// max_range on the chain are dropped).
CouplingSpec random_xyz(int n, std::uint64_t seed, int max_range = 0);

/// Recovers the (jx, jy, jz) exchange matrices from a real-coupling spec.
void xyz_couplings(const CouplingSpec& spec, RMatrix& jx, RMatrix& jy, RMatrix& jz);

/// Upper bound on the operator norm of the full Hamiltonian.
double hamiltonian_norm_bound(const CouplingSpec& spec);

/// Per-spin energy scale used for default time/lambda grids.
double coupling_scale(const CouplingSpec& spec);

/// Max-entry residual of [H, P] with P = prod_i (2 S_i^z), computed on the
/// dense matrices. Zero (to roundoff) for every spec of this class.
double verify_parity(const CouplingSpec& spec, int n_max = kDenseCap);

}  // namespace sqz
