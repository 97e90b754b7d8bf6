#pragma once

#include <complex>
#include <filesystem>
#include <vector>

#include "sqz/coupling_spec.hpp"

namespace sqz {

/// Cap on exact state-vector work (2^N amplitudes).
inline constexpr int kMaxSites = 16;

/// Normalized state over the 2^N computational basis. Basis index bit i is
/// set iff site i points up along z; site 0 is the least significant bit.
struct StateVector {
    int n_sites = 0;
    std::vector<Complex> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
    void normalize();
};

/// Coherent spin state: every site up along z (amplitude 1 on the all-ones index).
StateVector css_state(int n);

/// Computational-basis product state |sigma_1 ... sigma_N>.
StateVector product_state(const SpinConfig& config);

Complex inner(const StateVector& a, const StateVector& b);

/// H|psi>, unnormalized, computed term by term with bit tests.
StateVector apply_hamiltonian(const CouplingSpec& spec, const StateVector& psi);

/// <psi|H|psi> (real for Hermitian H by construction).
double energy_expectation(const CouplingSpec& spec, const StateVector& psi);

/// <psi| prod_i (2 S_i^z) |psi>.
double parity_expectation(const StateVector& psi);

struct EvolveOptions {
    double tol = 1e-11;   // total accumulated-error budget in norm
    int krylov_cap = 30;  // max Lanczos vectors per step
};

/// exp(-i H t)|psi0> by adaptive Lanczos propagation of the bitwise
/// Hamiltonian application; no dense matrix is formed.
StateVector evolve(const CouplingSpec& spec, const StateVector& psi0, double t,
                   const EvolveOptions& opts = {});

struct GroundStateResult {
    StateVector state;
    double energy = 0.0;
    double gap = 0.0;  // to the first excited level
    double lambda = 0.0;
    double field_h = 0.0;
    bool degenerate = false;
};

/// Ground state of lambda * H - field_h * sum_i S_i^z. Dense Hermitian solve
/// up to kDenseCap sites, Lanczos iteration seeded by the CSS above that.
/// Global phase fixed: the largest-magnitude amplitude is real positive.
GroundStateResult ground_state(const CouplingSpec& spec, double lambda, double field_h);

/// Same with per-site fields: lambda * H - sum_i fields(i) S_i^z.
GroundStateResult ground_state(const CouplingSpec& spec, double lambda,
                               const RVector& fields);

// Binary state dump (test interface): 16-byte header = magic "SQZV1\0" padded
// to 8 bytes, then u32 site count (little endian) and 4 zero pad bytes,
// followed by 2^N little-endian complex doubles.
void write_state(const StateVector& psi, const std::filesystem::path& path);
StateVector read_state(const std::filesystem::path& path);

}  // namespace sqz
