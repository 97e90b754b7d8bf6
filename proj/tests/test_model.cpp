#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqz/coupling_spec.hpp"
#include "sqz/dense.hpp"
#include "test_support.hpp"

using namespace sqz;

namespace {

RMatrix pair_matrix(int n, int i, int j, double v) {
    RMatrix m = RMatrix::Zero(n, n);
    m(i, j) = m(j, i) = v;
    return m;
}

}  // namespace

TEST_CASE("xyz mapping") {
    SUBCASE("Heisenberg couplings give no raise-raise block") {
        const RMatrix j = pair_matrix(3, 0, 1, 0.7) + pair_matrix(3, 1, 2, -0.3);
        const CouplingSpec spec = build_xyz(j, j, j);
        CHECK(spec.k_matrix.cwiseAbs().maxCoeff() == 0.0);
        CHECK(spec.j_matrix(0, 1).real() == doctest::Approx(0.35).epsilon(1e-15));
    }
    SUBCASE("single x bond") {
        const CouplingSpec spec =
            build_xyz(pair_matrix(2, 0, 1, 1.0), RMatrix::Zero(2, 2), RMatrix::Zero(2, 2));
        CHECK(spec.k_matrix(0, 1) == Complex(0.25, 0.0));
        CHECK(spec.k_matrix(1, 0) == Complex(0.25, 0.0));
        CHECK(spec.j_matrix(0, 1) == Complex(0.25, 0.0));
        CHECK(spec.j_matrix(1, 0) == Complex(0.25, 0.0));
    }
    SUBCASE("xx minus yy cancels the exchange block") {
        const CouplingSpec spec = build_xyz(pair_matrix(2, 0, 1, 1.0),
                                            pair_matrix(2, 0, 1, -1.0), RMatrix::Zero(2, 2));
        CHECK(spec.k_matrix(0, 1) == Complex(0.5, 0.0));
        CHECK(spec.j_matrix(0, 1) == Complex(0.0, 0.0));
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(build_xyz(RMatrix::Zero(2, 2), RMatrix::Zero(3, 3), RMatrix::Zero(2, 2)),
                        std::invalid_argument);
    }
    SUBCASE("nonzero diagonal rejected") {
        RMatrix bad = RMatrix::Zero(2, 2);
        bad(0, 0) = 1.0;
        CHECK_THROWS_AS(build_xyz(bad, RMatrix::Zero(2, 2), RMatrix::Zero(2, 2)),
                        std::invalid_argument);
    }
}

TEST_CASE("xyz inversion reproduces the exchange couplings") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dyadic(-(1 << 20), 1 << 20);
    const int n = 5;
    RMatrix jx = RMatrix::Zero(n, n), jy = RMatrix::Zero(n, n), jz = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // dyadic rationals keep the quarter/sum arithmetic exact
            jx(i, j) = jx(j, i) = dyadic(rng) / 1048576.0;
            jy(i, j) = jy(j, i) = dyadic(rng) / 1048576.0;
            jz(i, j) = jz(j, i) = dyadic(rng) / 1048576.0;
        }
    const CouplingSpec spec = build_xyz(jx, jy, jz);
    RMatrix rx, ry, rz;
    xyz_couplings(spec, rx, ry, rz);
    CHECK((rx - jx).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ry - jy).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rz - jz).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("one-axis twisting build") {
    SUBCASE("couplings chi/(4N)") {
        const CouplingSpec spec = build_oat(1.0, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                CHECK(spec.k_matrix(i, j) == Complex(1.0 / 16.0, 0.0));
                CHECK(spec.j_matrix(i, j) == Complex(1.0 / 16.0, 0.0));
            }
    }
    SUBCASE("zero-angle kernel sum is chi N / 4") {
        const CouplingSpec spec = build_oat(1.0, 4);
        Complex sum(0.0, 0.0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) sum += spec.k_matrix(i, j);
        CHECK(sum.real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sum.imag() == 0.0);
    }
    SUBCASE("chi = 0 gives the zero spec") {
        const CouplingSpec spec = build_oat(0.0, 4);
        CHECK(spec.k_matrix.cwiseAbs().maxCoeff() == 0.0);
        CHECK(spec.j_matrix.cwiseAbs().maxCoeff() == 0.0);
        CHECK(spec.z_fields.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("too few sites rejected") {
        CHECK_THROWS_AS(build_oat(1.0, 1), std::invalid_argument);
    }
    SUBCASE("dense operator equals (chi/N) Jx^2") {
        const int n = 4;
        const CouplingSpec spec = build_oat(0.7, n);
        const Eigen::MatrixXcd jx = dense_collective(n, Axis::x);
        const Eigen::MatrixXcd want = (0.7 / n) * jx * jx;
        CHECK((dense_hamiltonian(spec) - want).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("two-axis countertwisting build") {
    SUBCASE("couplings -i chi / N and kernel sums") {
        const CouplingSpec spec = build_tact(1.0, 4);
        CHECK(spec.k_matrix(1, 2) == Complex(0.0, -0.25));
        CHECK(spec.j_matrix.cwiseAbs().maxCoeff() == 0.0);
        double i0 = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) i0 += spec.k_matrix(i, j).imag();
        CHECK(i0 == doctest::Approx(-4.0).epsilon(1e-14));
    }
    SUBCASE("dense operator is Hermitian at three sites") {
        const Eigen::MatrixXcd h = dense_hamiltonian(build_tact(1.0, 3));
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("chi = 0 gives the zero spec") {
        CHECK(build_tact(0.0, 4).k_matrix.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("too few sites rejected") {
        CHECK_THROWS_AS(build_tact(1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("validating constructor") {
    SUBCASE("asymmetric raise-raise input is symmetrized") {
        CMatrix k = CMatrix::Zero(2, 2);
        k(0, 1) = Complex(1.0, 0.0);  // lopsided on purpose
        const CouplingSpec spec = make_spec(2, k, CMatrix::Zero(2, 2), RMatrix::Zero(2, 2),
                                            RVector::Zero(2));
        CHECK(spec.k_matrix(0, 1) == Complex(0.5, 0.0));
        CHECK(spec.k_matrix(1, 0) == Complex(0.5, 0.0));
    }
    SUBCASE("non-Hermitian exchange rejected") {
        CMatrix j = CMatrix::Zero(2, 2);
        j(0, 1) = Complex(0.0, 1.0);
        j(1, 0) = Complex(0.0, 1.0);
        CHECK_THROWS_AS(make_spec(2, CMatrix::Zero(2, 2), j, RMatrix::Zero(2, 2),
                                  RVector::Zero(2)),
                        std::invalid_argument);
    }
    SUBCASE("nonzero zz diagonal rejected") {
        RMatrix zz = RMatrix::Zero(2, 2);
        zz(1, 1) = 0.5;
        CHECK_THROWS_AS(make_spec(2, CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), zz,
                                  RVector::Zero(2)),
                        std::invalid_argument);
    }
    SUBCASE("non-finite entries rejected") {
        CMatrix k = CMatrix::Zero(2, 2);
        k(0, 1) = k(1, 0) = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(make_spec(2, k, CMatrix::Zero(2, 2), RMatrix::Zero(2, 2),
                                  RVector::Zero(2)),
                        std::invalid_argument);
    }
}

TEST_CASE("dense Hamiltonian against the hand-built two-site XYZ matrix") {
    const double a = 0.8, b = -0.4, c = 0.6;
    const CouplingSpec spec = build_xyz(pair_matrix(2, 0, 1, a), pair_matrix(2, 0, 1, b),
                                        pair_matrix(2, 0, 1, c));
    Eigen::MatrixXcd want(4, 4);
    // index bits: site 0 = LSB; 0 = both down, 3 = both up
    want << c / 2, 0, 0, (a - b) / 2,
            0, -c / 2, (a + b) / 2, 0,
            0, (a + b) / 2, -c / 2, 0,
            (a - b) / 2, 0, 0, c / 2;
    CHECK((dense_hamiltonian(spec) - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("parity commutation") {
    SUBCASE("xyz instance") {
        CHECK(verify_parity(random_xyz(4, 11)) <= 1e-12);
    }
    SUBCASE("tact instance") {
        CHECK(verify_parity(build_tact(1.0, 4)) <= 1e-12);
    }
    SUBCASE("generic complex instances, Hermitian and parity conserving") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const CouplingSpec spec = test::random_generic_spec(5, 100 + seed);
            const Eigen::MatrixXcd h = dense_hamiltonian(spec);
            CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(parity_residual(h, 5) <= 1e-12);
        }
    }
    SUBCASE("single-spin-flip term breaks parity") {
        const int n = 3;
        Eigen::MatrixXcd h = dense_hamiltonian(random_xyz(n, 13));
        h += dense_one_site(n, 0, site_sx());
        CHECK(parity_residual(h, n) > 0.1);
    }
    SUBCASE("over the dense cap rejected") {
        CHECK_THROWS_AS(verify_parity(build_oat(1.0, 12)), std::invalid_argument);
    }
}

TEST_CASE("spin configuration parsing") {
    CHECK(SpinConfig::parse("+-+").sigmas == std::vector<int>{1, -1, 1});
    CHECK(SpinConfig::parse("+1,-1").sigmas == std::vector<int>{1, -1});
    CHECK(SpinConfig::all_plus(3).all_up());
    CHECK_THROWS_AS(SpinConfig::parse("+x"), std::invalid_argument);
    CHECK_THROWS_AS(SpinConfig::parse(""), std::invalid_argument);
}

TEST_CASE("norm bound and scale") {
    const CouplingSpec oat = build_oat(1.0, 8);
    CHECK(hamiltonian_norm_bound(oat) == doctest::Approx(8.25));
    CHECK(coupling_scale(oat) > 0.0);
    // zero spec falls back to unit scale
    const CouplingSpec zero = build_oat(0.0, 4);
    CHECK(coupling_scale(zero) == 1.0);
}
