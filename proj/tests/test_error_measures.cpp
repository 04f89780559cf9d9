#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qrms/error_measures.hpp"
#include "qrms/qubit.hpp"
#include "qrms/random.hpp"

using namespace qrms;

namespace {
const double kPi = std::numbers::pi;
Observable demo_a() { return Observable(Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}})); }
}  // namespace

TEST_CASE("plain error on the demonstration pair") {
    const PureState psi = qubit::plus_z();
    CHECK(eps_no(demo_a(), sharp_meter_povm(), psi) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eps_no(demo_a(), unsharp_meter_povm(), psi) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    RngStream rng(5, 1);
    const Povm self = sharp_from_observable(demo_a());
    for (int t = 0; t < 50; ++t) CHECK(eps_no(demo_a(), self, random_state(rng, 2)) < 1e-7);
}

TEST_CASE("profiles match the closed forms") {
    const PureState psi = qubit::plus_z();
    const Povm p1 = sharp_meter_povm();
    const Povm p2 = unsharp_meter_povm();
    CHECK(eps_profile_at(demo_a(), p1, psi, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    for (int j = 0; j < 97; ++j) {
        const double alpha = 2.0 * kPi * j / 96.0;
        CHECK(std::abs(eps_profile_at(demo_a(), p1, psi, alpha) - 2.0 * std::abs(std::sin(alpha / 2.0))) <
              1e-10);
        CHECK(std::abs(eps_profile_at(demo_a(), p2, psi, alpha) - std::sqrt(4.0 - 2.0 * std::cos(alpha))) <
              1e-10);
    }
}

TEST_CASE("profile at zero equals the plain error") {
    RngStream rng(5, 2);
    for (int t = 0; t < 1000; ++t) {
        const int dim = 2 + t % 2;
        const Observable a(random_hermitian(rng, dim));
        const Povm p = (t % 2 == 0) ? random_povm(rng, dim, 2 + t % 3) : random_projective_povm(rng, dim);
        const PureState psi = random_state(rng, dim);
        CHECK(std::abs(eps_profile_at(a, p, psi, 0.0) - eps_no(a, p, psi)) < 1e-12);
    }
}

TEST_CASE("locally uniform error via supremum search") {
    const PureState psi = qubit::plus_z();
    const EpsBarResult sharp = eps_bar(demo_a(), sharp_meter_povm(), psi);
    CHECK(sharp.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sharp.argmax_alpha == doctest::Approx(kPi).epsilon(1e-6));

    const EpsBarResult unsharp = eps_bar(demo_a(), unsharp_meter_povm(), psi);
    CHECK(unsharp.value == doctest::Approx(std::sqrt(6.0)).epsilon(1e-9));
    CHECK(unsharp.argmax_alpha == doctest::Approx(kPi).epsilon(1e-6));

    CHECK(eps_bar(demo_a(), sharp_from_observable(demo_a()), psi).value < 1e-6);
}

TEST_CASE("unsharp profile exceeds the sharp profile by exactly 2 in square") {
    const PureState psi = qubit::plus_z();
    for (int j = 0; j < 64; ++j) {
        const double alpha = 2.0 * kPi * j / 63.0;
        const double s = eps_profile_at(demo_a(), sharp_meter_povm(), psi, alpha);
        const double u = eps_profile_at(demo_a(), unsharp_meter_povm(), psi, alpha);
        CHECK(std::abs(u * u - s * s - 2.0) < 1e-10);
    }
}

TEST_CASE("classical rms on commuting instances") {
    const Povm sz = sharp_from_observable(Observable(qubit::sigma_z()));
    RngStream rng(5, 3);
    for (int t = 0; t < 20; ++t)
        CHECK(classical_rms_commuting(Observable(qubit::sigma_z()), sz, random_state(rng, 2)) < 1e-9);

    // value-flipped sharp measurement: every outcome misses by 2 on |+z>
    const Matrix proj_up = Matrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    const Matrix proj_dn = Matrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const Povm flipped({{-1.0, proj_up}, {1.0, proj_dn}});
    CHECK(classical_rms_commuting(Observable(qubit::sigma_z()), flipped, qubit::plus_z()) ==
          doctest::Approx(2.0).epsilon(1e-12));

    // commuting diagonal instances agree with the plain error
    for (int t = 0; t < 100; ++t) {
        Matrix diag_a = Matrix::zero(3, 3);
        for (int i = 0; i < 3; ++i) diag_a(i, i) = 2.0 * rng.normal();
        std::vector<Matrix> effects(2, Matrix::zero(3, 3));
        for (int i = 0; i < 3; ++i) {
            const double w = rng.uniform();
            effects[0](i, i) = w;
            effects[1](i, i) = 1.0 - w;
        }
        const Povm p({{rng.uniform(), effects[0]}, {2.0 + rng.uniform(), effects[1]}});
        const Observable a(diag_a);
        const PureState psi = random_state(rng, 3);
        CHECK(std::abs(classical_rms_commuting(a, p, psi) - eps_no(a, p, psi)) < 1e-9);
    }

    // non-commuting input rejected
    CHECK_THROWS_AS(classical_rms_commuting(Observable(qubit::sigma_x()), sz, qubit::plus_z()),
                    std::invalid_argument);
}

TEST_CASE("dominating property on random instances") {
    RngStream rng(5, 4);
    for (int t = 0; t < 200; ++t) {
        const Observable a(random_hermitian(rng, 2));
        const Povm p = (t % 2 == 0) ? random_povm(rng, 2, 2) : random_projective_povm(rng, 2);
        const PureState psi = random_state(rng, 2);
        CHECK(eps_no(a, p, psi) <= eps_bar(a, p, psi).value + 1e-9);
    }
}

TEST_CASE("conservation for dichotomic measurements") {
    RngStream rng(5, 5);
    for (int t = 0; t < 50; ++t) {
        const Observable a = random_dichotomic_qubit(rng);
        const Povm p = sharp_from_observable(random_dichotomic_qubit(rng));
        const PureState psi = random_state(rng, 2);
        const double base = eps_no(a, p, psi);
        for (int j = 0; j < 128; ++j)
            CHECK(std::abs(eps_profile_at(a, p, psi, 2.0 * kPi * j / 128.0) - base) < 1e-9);
        CHECK(std::abs(eps_bar(a, p, psi).value - base) < 1e-8);
    }
}

TEST_CASE("requirement check suite passes and flags the defect") {
    const RequirementReport report = check_requirements(50, 123);
    for (const auto& s : report.sections) {
        INFO(s.name, ": ", s.detail);
        CHECK(s.pass);
    }
    CHECK(report.all_pass());
    CHECK(report.sections.size() == 5);
}

TEST_CASE("error profile sampling") {
    const ErrorProfile prof = error_profile(demo_a(), sharp_meter_povm(), qubit::plus_z(), 17);
    REQUIRE(prof.samples.size() == 17);
    CHECK(prof.samples[8].alpha == doctest::Approx(kPi));
    CHECK(prof.samples[8].epsilon == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(prof.eps_bar == doctest::Approx(2.0).epsilon(1e-9));
    // the supremum dominates every sample
    for (const auto& s : prof.samples) CHECK(s.epsilon <= prof.eps_bar + 1e-9);
}
