#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "jordanenv/matrix.hpp"

using namespace jordanenv;

namespace {

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = d(rng);
        for (int j = i + 1; j < n; ++j) {
            const Complex z(d(rng), d(rng));
            m.at(i, j) = z;
            m.at(j, i) = std::conj(z);
        }
    }
    return m;
}

double reconstruction_residual(const HermitianMatrix& h, const Eigensystem& es) {
    const int n = h.dim();
    ComplexMatrix rec(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rec.at(i, j) += es.values[k] * es.vectors.at(i, k) * std::conj(es.vectors.at(j, k));
    return (h.matrix() - rec).frobenius_norm();
}

} // namespace

TEST_CASE("jordan_block basic shapes") {
    const auto j1 = jordan_block(1, Complex(3.0, 0.0));
    CHECK(j1.rows() == 1);
    CHECK(j1.at(0, 0) == Complex(3.0, 0.0));

    // the upper 2x2 corner of the disk-plus-point example is jordan_block(2,0)
    const auto j3 = jordan_block(3, Complex(0.0, 0.0));
    CHECK(j3.at(0, 1) == Complex(1.0, 0.0));
    CHECK(j3.at(1, 2) == Complex(1.0, 0.0));
    CHECK(j3.at(0, 2) == Complex(0.0, 0.0));
    CHECK(j3.at(2, 2) == Complex(0.0, 0.0));

    const auto jh = jordan_block(2, Complex(0.5, 0.0));
    CHECK(jh.at(0, 0) == Complex(0.5, 0.0));
    CHECK(jh.at(0, 1) == Complex(1.0, 0.0));
    CHECK(jh.at(1, 0) == Complex(0.0, 0.0));
    CHECK(jh.at(1, 1) == Complex(0.5, 0.0));

    CHECK_THROWS_AS(jordan_block(0, Complex(0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("hermitian admit rejects asymmetry and non-finite entries") {
    ComplexMatrix bad(2, 2);
    bad.at(0, 1) = Complex(1.0, 0.0);
    bad.at(1, 0) = Complex(0.5, 0.0);
    CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);

    std::vector<Complex> entries{Complex(1.0, 0.0), Complex(0.0, std::nan(""))};
    CHECK_THROWS_AS(ComplexMatrix(1, 2, entries), std::invalid_argument);
}

TEST_CASE("hermitian_eigen on fixed small cases") {
    const Tolerances tol;

    SUBCASE("identity") {
        const HermitianMatrix h(ComplexMatrix::identity(2));
        const auto es = hermitian_eigen(h);
        CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("Re of nilpotent 2x2 jordan block") {
        const auto j = jordan_block(2, Complex(0.0, 0.0));
        const auto h = real_part_rotated(j, 0.0);
        const auto es = hermitian_eigen(h);
        CHECK(es.values[0] == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(es.values[1] == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("Re of nilpotent 3x3 jordan block hits cos(pi/4)") {
        const auto j = jordan_block(3, Complex(0.0, 0.0));
        const auto h = real_part_rotated(j, 0.0);
        const auto es = hermitian_eigen(h);
        CHECK(es.values[2] == doctest::Approx(std::cos(std::numbers::pi / 4)).epsilon(1e-10));
        CHECK(es.values[1] == doctest::Approx(0.0).epsilon(1e-10));
    }

    // max eigenvalue of Re(c * J_m(0)) is cos(pi/(m+1)) for every unit phase c
    SUBCASE("rotation invariance of the nilpotent block profile") {
        for (int m = 1; m <= 8; ++m) {
            const auto j = jordan_block(m, Complex(0.0, 0.0));
            for (double theta : {0.0, 0.7, 2.1, 4.4}) {
                const auto h = real_part_rotated(j, theta);
                const auto es = hermitian_eigen(h, tol);
                const double expect = m == 1 ? 0.0 : std::cos(std::numbers::pi / (m + 1));
                CHECK(es.values.back() == doctest::Approx(expect).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("hermitian_eigen residual and unitarity on random matrices") {
    std::mt19937_64 rng(20240811);
    const Tolerances tol;
    for (int n : {1, 2, 3, 5, 9, 16}) {
        const HermitianMatrix h(random_hermitian(n, rng));
        const auto es = hermitian_eigen(h, tol);
        const double scale = std::max(1e-30, h.matrix().frobenius_norm());
        CHECK(reconstruction_residual(h, es) <= tol.eigen_residual_rel * scale);
        const auto vtv = es.vectors.adjoint() * es.vectors;
        CHECK((vtv - ComplexMatrix::identity(n)).frobenius_norm() <= 1e-10 * n);
        for (int k = 1; k < n; ++k) CHECK(es.values[k - 1] <= es.values[k]);
    }
}

TEST_CASE("warm start reproduces the cold result") {
    std::mt19937_64 rng(7);
    const HermitianMatrix h(random_hermitian(8, rng));
    const auto cold = hermitian_eigen(h);

    ComplexMatrix drift = h.matrix();
    drift.at(0, 1) += Complex(1e-3, -2e-3);
    drift.at(1, 0) += Complex(1e-3, 2e-3);
    const HermitianMatrix h2(drift);
    const auto warm = hermitian_eigen(h2, default_tolerances(), &cold.vectors);
    const auto reference = hermitian_eigen(h2);
    for (int k = 0; k < 8; ++k)
        CHECK(warm.values[k] == doctest::Approx(reference.values[k]).epsilon(1e-9));
}

TEST_CASE("operator_norm") {
    CHECK(operator_norm(ComplexMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(jordan_block(2, Complex(0.0, 0.0))) == doctest::Approx(1.0).epsilon(1e-12));

    // ||J_2(2)||^2 is the top eigenvalue of [[4,2],[2,5]], i.e. (9+sqrt(17))/2
    const double expect = std::sqrt((9.0 + std::sqrt(17.0)) / 2.0);
    CHECK(operator_norm(jordan_block(2, Complex(2.0, 0.0))) ==
          doctest::Approx(expect).epsilon(1e-10));
    CHECK(expect >= std::sqrt(5.0));
    CHECK(expect <= 3.0);
}

TEST_CASE("norm bounds for alpha I + beta J_m(lambda)") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Complex alpha(d(rng), d(rng));
        const Complex beta(d(rng), d(rng));
        const Complex lambda(d(rng), d(rng));
        const int m = 2 + static_cast<int>(trial % 5);
        const ComplexMatrix a =
            ComplexMatrix::identity(m) * alpha + jordan_block(m, lambda) * beta;
        const double nm = operator_norm(a);
        const double lower = std::sqrt(std::norm(alpha + lambda * beta) + std::norm(beta));
        const double upper = std::abs(alpha + lambda * beta) + std::abs(beta);
        CHECK(nm >= lower - 1e-9);
        CHECK(nm <= upper + 1e-9);
    }
}

TEST_CASE("min_eigenvalue positivity thresholds") {
    SUBCASE("k=2 threshold attained at beta=1") {
        const auto j = jordan_block(2, Complex(0.0, 0.0));
        const ComplexMatrix m = ComplexMatrix::identity(2) + j + j.adjoint();
        CHECK(min_eigenvalue(HermitianMatrix(m)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("beta=0 gives alpha") {
        CHECK(min_eigenvalue(HermitianMatrix(ComplexMatrix::identity(3))) ==
              doctest::Approx(1.0));
    }
    SUBCASE("k=3 with beta=0.9 dips negative") {
        const auto j = jordan_block(3, Complex(0.0, 0.0));
        const ComplexMatrix m =
            ComplexMatrix::identity(3) + j * Complex(0.9, 0.0) + j.adjoint() * Complex(0.9, 0.0);
        CHECK(min_eigenvalue(HermitianMatrix(m)) < 0.0);
    }
    SUBCASE("sign flip at (alpha/2) sec(pi/(k+1)) for k in 2..8") {
        for (int k = 2; k <= 8; ++k) {
            const double alpha = 1.25;
            const double threshold = alpha / (2.0 * std::cos(std::numbers::pi / (k + 1)));
            const auto j = jordan_block(k, Complex(0.0, 0.0));
            for (double sign : {-1.0, 1.0}) {
                const double beta = threshold + sign * 1e-6;
                // a complex phase on beta must not matter
                const Complex b = std::polar(beta, 0.3 * k);
                const ComplexMatrix m = ComplexMatrix::identity(k) * Complex(alpha, 0.0) +
                                        j * b + j.adjoint() * std::conj(b);
                const double me = min_eigenvalue(HermitianMatrix(m));
                if (sign < 0)
                    CHECK(me >= 0.0);
                else
                    CHECK(me < 0.0);
            }
        }
    }
}

TEST_CASE("psd_project") {
    const Tolerances tol;

    SUBCASE("PSD input is a fixed point") {
        ComplexMatrix m(2, 2);
        m.at(0, 0) = 2.0;
        m.at(1, 1) = 0.5;
        m.at(0, 1) = Complex(0.1, 0.2);
        m.at(1, 0) = Complex(0.1, -0.2);
        const HermitianMatrix h(m);
        if (min_eigenvalue(h) >= 0) {
            const auto p = psd_project(h);
            CHECK((p.matrix() - h.matrix()).frobenius_norm() <= tol.psd_fixpoint);
        }
    }

    SUBCASE("diag(1,-1) clips to diag(1,0)") {
        ComplexMatrix m(2, 2);
        m.at(0, 0) = 1.0;
        m.at(1, 1) = -1.0;
        const auto p = psd_project(HermitianMatrix(m));
        CHECK(p.matrix().at(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.matrix().at(1, 1).real() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::abs(p.matrix().at(0, 1)) <= 1e-12);
    }

    SUBCASE("Re(J_2(0)) projects onto the +1/2 eigenline") {
        const auto h = real_part_rotated(jordan_block(2, Complex(0.0, 0.0)), 0.0);
        const auto p = psd_project(h);
        // rank-1 projection scaled by 1/2 onto (1,1)/sqrt(2)
        CHECK(p.matrix().at(0, 0).real() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(p.matrix().at(0, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(p.matrix().at(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("idempotent and nonexpansive on random inputs") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 24; ++trial) {
            const int n = 2 + static_cast<int>(trial % 5);
            const HermitianMatrix h(random_hermitian(n, rng));
            const auto p = psd_project(h);
            const auto pp = psd_project(p);
            CHECK((pp.matrix() - p.matrix()).frobenius_norm() <= 1e-9);
            CHECK(p.matrix().frobenius_norm() <= h.matrix().frobenius_norm() + 1e-12);
            CHECK(min_eigenvalue(p) >= -1e-10);
        }
    }
}
