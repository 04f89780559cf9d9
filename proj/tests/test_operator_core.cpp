#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qrms/linalg.hpp"
#include "qrms/qubit.hpp"
#include "qrms/random.hpp"

using namespace qrms;

namespace {

// Independent 2x2 matrix-exponential oracle: exp(i*t*(n.sigma + c)) acting
// on a state, using the closed form cos + i sin(n.sigma)/|n| only.
std::vector<cdouble> exp_qubit_oracle(const Matrix& gen, double t, const std::vector<cdouble>& v) {
    const double c = 0.5 * (gen(0, 0).real() + gen(1, 1).real());
    const double nz = 0.5 * (gen(0, 0).real() - gen(1, 1).real());
    const double nx = gen(0, 1).real();
    const double ny = -gen(0, 1).imag();
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    Matrix u = Matrix::identity(2) * cdouble(std::cos(n * t), 0.0);
    if (n > 0.0) {
        const Matrix nsig = (qubit::sigma_x() * cdouble(nx) + qubit::sigma_y() * cdouble(ny) +
                             qubit::sigma_z() * cdouble(nz)) *
                            cdouble(1.0 / n);
        u = u + nsig * cdouble(0.0, std::sin(n * t));
    }
    u = u * std::exp(cdouble(0.0, c * t));
    return u.apply(v);
}

}  // namespace

TEST_CASE("spectral decomposition of the demonstration operators") {
    const Observable a(Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}));
    const auto sd_a = spectral_decompose(a);
    REQUIRE(sd_a.eigenvalues.size() == 2);
    CHECK(sd_a.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sd_a.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));

    const Observable m(Matrix::from_rows({{1.0, 1.0}, {1.0, -1.0}}));
    const auto sd_m = spectral_decompose(m);
    const double r2 = std::sqrt(2.0);
    CHECK(sd_m.eigenvalues[0] == doctest::Approx(r2).epsilon(1e-12));
    CHECK(sd_m.eigenvalues[1] == doctest::Approx(-r2).epsilon(1e-12));
    // eigenvectors proportional to (1 +- sqrt(2), 1)
    for (int k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const double norm = std::sqrt(4.0 + sign * 2.0 * r2);
        const PureState v({(1.0 + sign * r2) / norm, 1.0 / norm});
        CHECK(expectation(v, sd_m.projectors[k]) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("identity decomposes to a single merged projector") {
    const Observable id(Matrix::identity(2));
    const auto sd = spectral_decompose(id);
    REQUIRE(sd.eigenvalues.size() == 1);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
    CHECK((sd.projectors[0] - Matrix::identity(2)).norm_max() < 1e-12);
}

TEST_CASE("reconstruction, completeness and orthogonality on random Hermitian matrices") {
    RngStream rng(7, 1);
    for (int t = 0; t < 1000; ++t) {
        const int dim = 2 + t % 2;
        const Matrix x = random_hermitian(rng, dim, 1.5);
        const auto sd = spectral_decompose(Observable(x));
        Matrix recon = Matrix::zero(dim, dim);
        Matrix sum = Matrix::zero(dim, dim);
        for (size_t k = 0; k < sd.eigenvalues.size(); ++k) {
            recon = recon + sd.projectors[k] * cdouble(sd.eigenvalues[k]);
            sum = sum + sd.projectors[k];
            for (size_t j = 0; j < sd.eigenvalues.size(); ++j) {
                const Matrix prod = sd.projectors[k] * sd.projectors[j];
                const Matrix want = (k == j) ? sd.projectors[k] : Matrix::zero(dim, dim);
                CHECK((prod - want).norm_max() < 1e-10);
            }
        }
        CHECK((recon - x).norm_max() < 1e-9);
        CHECK((sum - Matrix::identity(dim)).norm_max() < 1e-10);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    CHECK_THROWS_AS(Observable(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), std::invalid_argument);
}

TEST_CASE("evolve matches the direct exponential oracle") {
    const PureState psi = qubit::plus_z();
    const Observable sx(qubit::sigma_x());

    SUBCASE("zero rotation is the identity") {
        CHECK(fidelity(evolve(psi, sx, 0.0), psi) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("pi rotation flips to |-z> up to phase") {
        const auto b = qubit::bloch(evolve(psi, sx, std::numbers::pi));
        CHECK(b[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(b[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(b[2] == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("generic angles trace the (0, sin a, cos a) circle") {
        for (const double alpha : {0.3, 1.1, 2.9, 4.4, 6.0}) {
            const PureState rotated = evolve(psi, sx, alpha);
            const auto b = qubit::bloch(rotated);
            CHECK(b[1] == doctest::Approx(std::sin(alpha)).epsilon(1e-12));
            CHECK(b[2] == doctest::Approx(std::cos(alpha)).epsilon(1e-12));
            const auto oracle = exp_qubit_oracle(qubit::sigma_x(), alpha / 2.0, psi.amps());
            double overlap = std::abs(std::conj(oracle[0]) * rotated.amps()[0] +
                                      std::conj(oracle[1]) * rotated.amps()[1]);
            CHECK(overlap == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("evolve is unitary and a one-parameter group") {
    RngStream rng(11, 2);
    for (int t = 0; t < 200; ++t) {
        const int dim = 2 + t % 3;
        const Observable gen(random_hermitian(rng, dim));
        const PureState u = random_state(rng, dim);
        const PureState v = random_state(rng, dim);
        const double a = 4.0 * rng.uniform() - 2.0;
        const double b = 4.0 * rng.uniform() - 2.0;
        CHECK(std::abs(inner(evolve(u, gen, a), evolve(v, gen, a)) - inner(u, v)) < 1e-12);
        const PureState two_step = evolve(evolve(u, gen, a), gen, b);
        const PureState one_step = evolve(u, gen, a + b);
        CHECK(fidelity(two_step, one_step) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("expectation values") {
    const Observable m(Matrix::from_rows({{1.0, 1.0}, {1.0, -1.0}}));
    CHECK(expectation(qubit::plus_z(), m) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation(qubit::plus_z(), Observable(Matrix::identity(2))) == doctest::Approx(1.0));

    const Observable a(Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}));
    const Matrix a2 = a.mat() * a.mat();
    for (const double alpha : {0.0, 0.7, 2.2, 3.9, 5.6})
        CHECK(expectation(qubit::rotated_plus_z(alpha), a2) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(expectation(qubit::plus_z(), Observable(Matrix::identity(3))), std::invalid_argument);
}

TEST_CASE("psd square root") {
    CHECK((matrix_sqrt_psd(Matrix::identity(3)) - Matrix::identity(3)).norm_max() < 1e-12);

    const Matrix p = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    CHECK((matrix_sqrt_psd(p) - p).norm_max() < 1e-10);

    // square-and-compare on the unsharp effect
    const Matrix e = Matrix::from_rows({{0.75, 0.25}, {0.25, 0.25}});
    const Matrix root = matrix_sqrt_psd(e);
    CHECK((root * root - e).norm_max() < 1e-9);

    const Matrix neg = Matrix::from_rows({{-1.0, 0.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(matrix_sqrt_psd(neg), std::invalid_argument);
}
