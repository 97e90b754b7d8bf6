#pragma once

#include <random>

#include <Eigen/Dense>

#include "sqz/coupling_spec.hpp"
#include "sqz/state_vector.hpp"

namespace sqz::test {

/// Generic member of the Hamiltonian class: complex symmetric K, Hermitian J,
/// symmetric zero-diagonal zz, fields and offset, all O(1).
inline CouplingSpec random_generic_spec(int n, std::uint64_t seed,
                                        bool complex_couplings = true) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix k = CMatrix::Zero(n, n), j = CMatrix::Zero(n, n);
    RMatrix zz = RMatrix::Zero(n, n);
    RVector h(n);
    for (int a = 0; a < n; ++a) {
        k(a, a) = complex_couplings ? Complex(u(rng), u(rng)) : Complex(u(rng), 0.0);
        j(a, a) = u(rng);
        h(a) = u(rng);
        for (int b = a + 1; b < n; ++b) {
            k(a, b) = k(b, a) =
                complex_couplings ? Complex(u(rng), u(rng)) : Complex(u(rng), 0.0);
            const Complex jab =
                complex_couplings ? Complex(u(rng), u(rng)) : Complex(u(rng), 0.0);
            j(a, b) = jab;
            j(b, a) = std::conj(jab);
            zz(a, b) = zz(b, a) = u(rng);
        }
    }
    return make_spec(n, std::move(k), std::move(j), std::move(zz), std::move(h), u(rng));
}

inline StateVector random_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    StateVector psi;
    psi.n_sites = n;
    psi.amplitudes.resize(std::size_t{1} << n);
    for (Complex& a : psi.amplitudes) a = Complex(g(rng), g(rng));
    psi.normalize();
    return psi;
}

inline Eigen::VectorXcd as_eigen(const StateVector& psi) {
    return Eigen::Map<const Eigen::VectorXcd>(psi.amplitudes.data(),
                                              static_cast<Eigen::Index>(psi.dim()));
}

inline StateVector from_eigen(int n, const Eigen::VectorXcd& v) {
    StateVector psi;
    psi.n_sites = n;
    psi.amplitudes.assign(v.data(), v.data() + v.size());
    return psi;
}

/// exp(-i H t) v by full Hermitian eigendecomposition; the reference
/// propagator the Lanczos evolution is tested against.
inline Eigen::VectorXcd dense_expm_apply(const Eigen::MatrixXcd& h, double t,
                                         const Eigen::VectorXcd& v) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXcd phases =
        (Complex(0.0, -t) * es.eigenvalues().cast<Complex>().array()).exp();
    return es.eigenvectors() *
           (phases.array() * (es.eigenvectors().adjoint() * v).array()).matrix();
}

}  // namespace sqz::test
