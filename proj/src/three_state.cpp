#include "qrms/three_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrms/qubit.hpp"

namespace qrms {

double TermDecomposition::epsilon_squared() const {
    return t_a2.value + t_m2.value - t_m.value - t_ama.value + t_shift.value + t_unsharp.value;
}

double TermDecomposition::sigma_squared_sum() const {
    double v = 0.0;
    for (const auto* t : {&t_a2, &t_m2, &t_m, &t_ama, &t_shift, &t_unsharp})
        if (t->sigma) v += *t->sigma * *t->sigma;
    return v;
}

double symmetrization_identity_check(const Observable& a, const Observable& m) {
    if (a.dim() != m.dim()) throw std::invalid_argument("symmetrization_identity_check: dimension mismatch");
    const Matrix id = Matrix::identity(a.dim());
    const Matrix shifted = a.mat() - id;
    const Matrix lhs = shifted * m.mat() * shifted - a.mat() * m.mat() * a.mat() - m.mat();
    const Matrix rhs = (m.mat() * a.mat() + a.mat() * m.mat()) * cdouble(-1.0);
    return (lhs - rhs).norm_max();
}

TermDecomposition decompose(const Observable& a, const Povm& p, const PureState& psi) {
    if (a.dim() != p.dim() || a.dim() != psi.dim()) throw std::invalid_argument("decompose: dimension mismatch");
    const Matrix m = moment(p).mat();
    const Matrix m2 = second_moment(p).mat();
    const Matrix id = Matrix::identity(a.dim());
    const Matrix shifted = a.mat() - id;
    TermDecomposition t;
    t.t_a2.value = expectation(psi, a.mat() * a.mat());
    t.t_m2.value = expectation(psi, m * m);
    t.t_m.value = expectation(psi, m);
    t.t_ama.value = expectation(psi, a.mat() * m * a.mat());
    t.t_shift.value = expectation(psi, shifted * m * shifted);
    t.t_unsharp.value = expectation(psi, m2 - m * m);
    return t;
}

AssembledError assemble(const TermDecomposition& terms) {
    const double s = terms.epsilon_squared();
    const double sigma_s = std::sqrt(terms.sigma_squared_sum());
    // exact decompositions tolerate only roundoff; noisy estimates may dip
    // below zero by a statistical fluctuation near an accurate point
    if (s < -std::max(1e-9, 5.0 * sigma_s))
        throw std::runtime_error("assemble: squared error is negative beyond tolerance");
    const double eps = std::sqrt(std::max(s, 0.0));
    if (s < 2.0 * sigma_s || eps == 0.0) {
        // too close to the accurate point for the square root to propagate
        return {eps, sigma_s, true};
    }
    return {eps, sigma_s / (2.0 * eps), false};
}

namespace {

bool povm_matches(const Povm& a, const Povm& b) {
    if (a.size() != b.size() || a.dim() != b.dim()) return false;
    for (int i = 0; i < a.size(); ++i) {
        if (std::abs(a.outcomes()[i].value - b.outcomes()[i].value) > 1e-9) return false;
        if ((a.outcomes()[i].effect - b.outcomes()[i].effect).norm_max() > 1e-9) return false;
    }
    return true;
}

Matrix proj_plus_x() {
    return Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
}
Matrix proj_minus_x() {
    return Matrix::from_rows({{0.5, -0.5}, {-0.5, 0.5}});
}
Matrix proj_plus_z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}); }
Matrix proj_minus_z() { return Matrix::from_rows({{0.0, 0.0}, {0.0, 1.0}}); }

// Value-weighted acquisitions for the POVM's moment in the given state. For
// the unsharp effects the no-measurement identity pair is attached so the
// simulator can realize them by randomization.
std::vector<PlanAcquisition> moment_acquisitions(const Povm& p, double outer_weight, bool unsharp,
                                                 const Matrix& no_a, const Matrix& no_b) {
    std::vector<PlanAcquisition> acq;
    for (const auto& o : p.outcomes()) {
        PlanAcquisition a{outer_weight * o.value, o.effect, std::nullopt};
        if (unsharp) a.no_measurement_pair = std::make_pair(no_a, no_b);
        acq.push_back(std::move(a));
    }
    return acq;
}

}  // namespace

MeasurementPlan example_plan(double alpha, const Povm& p) {
    const bool sharp = povm_matches(p, sharp_meter_povm());
    const bool unsharp = povm_matches(p, unsharp_meter_povm());
    if (!sharp && !unsharp)
        throw std::invalid_argument("example_plan: POVM must be the sharp or unsharp meter measurement");

    const PureState psi_alpha = qubit::rotated_plus_z(alpha);
    const PureState psi_ortho = qubit::rotated_plus_z(alpha + std::numbers::pi);
    const PureState plus_x = qubit::plus_x();

    MeasurementPlan plan{alpha, unsharp, {}};
    plan.entries.push_back({"t_a2", psi_alpha, {{4.0, proj_plus_x(), std::nullopt}}});
    plan.entries.push_back(
        {"t_m2", psi_alpha, {{2.0, proj_plus_x(), std::nullopt}, {2.0, proj_minus_x(), std::nullopt}}});
    plan.entries.push_back(
        {"t_m", psi_alpha, moment_acquisitions(p, 1.0, unsharp, proj_plus_x(), proj_minus_x())});
    // <AMA> = 2 <+x|M|+x> for every alpha; the no-measurement pair switches
    // to +-z, orthogonal to the measured +x state
    plan.entries.push_back(
        {"t_ama", plus_x, moment_acquisitions(p, 2.0, unsharp, proj_plus_z(), proj_minus_z())});
    plan.entries.push_back(
        {"t_shift", psi_ortho, moment_acquisitions(p, 1.0, unsharp, proj_plus_x(), proj_minus_x())});
    if (unsharp) {
        plan.entries.push_back(
            {"t_unsharp", psi_alpha, {{2.0, proj_plus_x(), std::nullopt}, {2.0, proj_minus_x(), std::nullopt}}});
    } else {
        plan.entries.push_back({"t_unsharp", psi_alpha, {}});
    }
    return plan;
}

double plan_entry_value(const PlanEntry& entry) {
    double v = 0.0;
    for (const auto& a : entry.acquisitions) v += a.weight * expectation(entry.state, a.effect);
    return v;
}

}  // namespace qrms
