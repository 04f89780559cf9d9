#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qrms/error_measures.hpp"
#include "qrms/qubit.hpp"
#include "qrms/random.hpp"
#include "qrms/three_state.hpp"

using namespace qrms;

namespace {
const double kPi = std::numbers::pi;
Observable demo_a() { return Observable(Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}})); }
Observable demo_m() { return Observable(Matrix::from_rows({{1.0, 1.0}, {1.0, -1.0}})); }
}  // namespace

TEST_CASE("symmetrization identity") {
    CHECK(symmetrization_identity_check(demo_a(), demo_m()) < 1e-12);
    RngStream rng(31, 1);
    CHECK(symmetrization_identity_check(Observable(Matrix::identity(2)),
                                        Observable(random_hermitian(rng, 2))) < 1e-12);
    for (int t = 0; t < 1000; ++t) {
        const int dim = 2 + t % 3;
        CHECK(symmetrization_identity_check(Observable(random_hermitian(rng, dim)),
                                            Observable(random_hermitian(rng, dim))) < 1e-12);
    }
}

TEST_CASE("decomposition of the demonstration measurements") {
    for (const double alpha : {0.0, 0.6, kPi / 2.0, kPi, 4.8}) {
        const PureState psi = qubit::rotated_plus_z(alpha);

        const TermDecomposition sharp = decompose(demo_a(), sharp_meter_povm(), psi);
        CHECK(sharp.t_a2.value == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sharp.t_m2.value == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sharp.t_m.value == doctest::Approx(std::cos(alpha)).epsilon(1e-12));
        CHECK(sharp.t_ama.value == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sharp.t_shift.value == doctest::Approx(-std::cos(alpha)).epsilon(1e-12));
        CHECK(sharp.t_unsharp.value == doctest::Approx(0.0).epsilon(1e-12));
        // the signed sum of six O(1) terms is accurate on the squared scale
        const double want_sq = 4.0 * std::sin(alpha / 2.0) * std::sin(alpha / 2.0);
        CHECK(std::abs(assemble(sharp).epsilon * assemble(sharp).epsilon - want_sq) < 1e-12);

        const TermDecomposition unsharp = decompose(demo_a(), unsharp_meter_povm(), psi);
        CHECK(unsharp.t_unsharp.value == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(unsharp.t_m.value == doctest::Approx(std::cos(alpha)).epsilon(1e-12));
        CHECK(assemble(unsharp).epsilon ==
              doctest::Approx(std::sqrt(4.0 - 2.0 * std::cos(alpha))).epsilon(1e-10));
    }
    CHECK(assemble(decompose(demo_a(), sharp_from_observable(demo_a()), qubit::plus_z())).epsilon < 1e-7);
}

TEST_CASE("assembly of fixed term sets") {
    auto terms = [](double a2, double m2, double m, double ama, double shift, double unsharp) {
        TermDecomposition t;
        t.t_a2.value = a2;
        t.t_m2.value = m2;
        t.t_m.value = m;
        t.t_ama.value = ama;
        t.t_shift.value = shift;
        t.t_unsharp.value = unsharp;
        return t;
    };
    CHECK(assemble(terms(2, 2, 1, 2, -1, 0)).epsilon == doctest::Approx(0.0));
    CHECK(assemble(terms(2, 2, -1, 2, 1, 0)).epsilon == doctest::Approx(2.0));
    CHECK(assemble(terms(2, 2, 1, 2, -1, 2)).epsilon == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(assemble(terms(0, 0, 1, 0, 0, 0)), std::runtime_error);
}

TEST_CASE("sigma propagation through the square root") {
    TermDecomposition t;
    t.t_a2 = {2.0, 0.03};
    t.t_m2 = {2.0, 0.04};
    t.t_m = {-1.0, 0.0};
    t.t_ama = {2.0, 0.0};
    t.t_shift = {1.0, 0.0};
    t.t_unsharp = {0.0, 0.0};
    const AssembledError e = assemble(t);
    CHECK_FALSE(e.sigma_on_squared);
    CHECK(e.epsilon == doctest::Approx(2.0));
    CHECK(e.sigma == doctest::Approx(0.05 / 4.0));

    // near zero the uncertainty is reported on the square
    t.t_m.value = 1.0;
    t.t_shift.value = -1.0;
    const AssembledError z = assemble(t);
    CHECK(z.sigma_on_squared);
    CHECK(z.sigma == doctest::Approx(0.05));
}

TEST_CASE("decompose-assemble equals the plain error on random instances") {
    RngStream rng(31, 2);
    for (int t = 0; t < 1000; ++t) {
        const Observable a(random_hermitian(rng, 2));
        const Povm p = (t % 2 == 0) ? random_povm(rng, 2, 2 + t % 3) : random_projective_povm(rng, 2);
        const PureState psi = random_state(rng, 2);
        CHECK(std::abs(assemble(decompose(a, p, psi)).epsilon - eps_no(a, p, psi)) < 1e-10);
    }
}

TEST_CASE("dichotomic term structure") {
    RngStream rng(31, 3);
    for (int t = 0; t < 100; ++t) {
        const Observable a = random_dichotomic_qubit(rng);
        const Povm p = sharp_from_observable(random_dichotomic_qubit(rng));
        const PureState psi = random_state(rng, 2);
        const TermDecomposition terms = decompose(a, p, psi);
        CHECK(terms.t_a2.value == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(terms.t_m2.value == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("example plan structure") {
    const Povm p1 = sharp_meter_povm();
    const Povm p2 = unsharp_meter_povm();

    SUBCASE("six entries covering the term slots") {
        const MeasurementPlan plan = example_plan(1.2, p1);
        REQUIRE(plan.entries.size() == 6);
        CHECK(plan.entries[0].term == "t_a2");
        CHECK(plan.entries[5].term == "t_unsharp");
        CHECK(plan.entries[5].acquisitions.empty());
    }

    SUBCASE("t_shift state at alpha = 0 is |-z> up to phase") {
        const MeasurementPlan plan = example_plan(0.0, p1);
        CHECK(fidelity(plan.entries[4].state, qubit::minus_z()) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("unsharp plan carries the extra identity term with weight 2") {
        const MeasurementPlan plan = example_plan(0.7, p2);
        REQUIRE(plan.entries[5].acquisitions.size() == 2);
        CHECK(plan.entries[5].acquisitions[0].weight == doctest::Approx(2.0));
        CHECK(plan_entry_value(plan.entries[5]) == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("t_ama state is |+x> independent of alpha") {
        for (const double alpha : {0.0, kPi / 2.0, 3.0}) {
            const MeasurementPlan plan = example_plan(alpha, p2);
            CHECK(fidelity(plan.entries[3].state, qubit::plus_x()) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("plan values reproduce the exact decomposition") {
        for (const Povm& p : {p1, p2}) {
            for (const double alpha : {0.0, 0.9, kPi, 5.1}) {
                const MeasurementPlan plan = example_plan(alpha, p);
                const TermDecomposition exact = decompose(demo_a(), p, qubit::rotated_plus_z(alpha));
                const double values[6] = {exact.t_a2.value, exact.t_m2.value,    exact.t_m.value,
                                          exact.t_ama.value, exact.t_shift.value, exact.t_unsharp.value};
                for (int e = 0; e < 6; ++e)
                    CHECK(plan_entry_value(plan.entries[e]) == doctest::Approx(values[e]).epsilon(1e-10));
            }
        }
    }

    SUBCASE("unsupported POVM rejected") {
        CHECK_THROWS_AS(example_plan(0.0, sharp_from_observable(Observable(qubit::sigma_z()))),
                        std::invalid_argument);
    }
}
