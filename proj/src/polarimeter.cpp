#include "qrms/polarimeter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrms/povm.hpp"

namespace qrms {

void BeamConfig::validate() const {
    if (!(rate > 0.0) || !(duration > 0.0) || !(slice_hz > 0.0))
        throw std::invalid_argument("BeamConfig: rate, duration, slice_hz must be positive");
}

void RandomizedPlan::validate() const {
    if (settings.empty()) throw std::invalid_argument("RandomizedPlan: no settings");
    double sum = 0.0;
    for (const auto& s : settings) {
        if (s.selection_probability < 0.0) throw std::invalid_argument("RandomizedPlan: negative probability");
        sum += s.selection_probability;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("RandomizedPlan: selection probabilities must sum to 1");
}

namespace {

ExpectationEstimate ratio_estimate(long long n_plus, long long n_minus) {
    const long long n = n_plus + n_minus;
    if (n == 0) throw std::runtime_error("insufficient exposure: zero total counts");
    const double p = static_cast<double>(n_plus) / static_cast<double>(n);
    const double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
    return {p, sigma};
}

std::pair<long long, long long> draw_counts(RngStream& rng, double exposure_counts, double prob) {
    const double p = std::clamp(prob, 0.0, 1.0);
    const long long n_plus = rng.poisson(exposure_counts * p);
    const long long n_minus = rng.poisson(exposure_counts * (1.0 - p));
    return {n_plus, n_minus};
}

}  // namespace

ExpectationEstimate simulate_projector(const PureState& psi, const Matrix& proj, const BeamConfig& cfg,
                                       uint64_t stream_salt) {
    cfg.validate();
    if (proj.rows() != psi.dim() || !proj.is_square())
        throw std::invalid_argument("simulate_projector: dimension mismatch");
    if (!proj.is_hermitian(1e-12) || (proj * proj - proj).norm_max() > 1e-9)
        throw std::invalid_argument("simulate_projector: operator not an orthogonal projector");
    RngStream rng(cfg.seed, 0x707, stream_salt);
    const auto [n_plus, n_minus] = draw_counts(rng, cfg.rate * cfg.duration, expectation(psi, proj));
    return ratio_estimate(n_plus, n_minus);
}

RandomizedResult simulate_randomized_povm(const PureState& psi, const RandomizedPlan& plan,
                                          const BeamConfig& cfg, uint64_t stream_salt) {
    cfg.validate();
    plan.validate();
    const long long n_slices = std::llround(cfg.duration * cfg.slice_hz);

    std::vector<double> probs;
    for (const auto& s : plan.settings) probs.push_back(s.selection_probability);
    RngStream slice_rng(cfg.seed, 0x51C, stream_salt);
    std::vector<long long> slices(plan.settings.size(), 0);
    for (long long i = 0; i < n_slices; ++i) ++slices[slice_rng.pick(probs)];

    RandomizedResult res;
    double combined = 0.0;
    double var = 0.0;
    for (size_t j = 0; j < plan.settings.size(); ++j) {
        if (slices[j] == 0) throw std::runtime_error("insufficient exposure: setting received zero slices");
        const double exposure = cfg.rate * static_cast<double>(slices[j]) / cfg.slice_hz;
        RngStream rng(cfg.seed, 0xC07, stream_salt, j + 1);
        const auto [n_plus, n_minus] =
            draw_counts(rng, exposure, expectation(psi, plan.settings[j].projector));
        const ExpectationEstimate est = ratio_estimate(n_plus, n_minus);
        res.per_setting.push_back(est);
        res.records.push_back({slices[j], n_plus, n_minus});
        combined += plan.settings[j].weight * est.value;
        var += plan.settings[j].weight * plan.settings[j].weight * est.sigma * est.sigma;
    }
    res.combined = {combined, std::sqrt(var)};
    return res;
}

RandomizedPlan randomized_plan_for_effect(const Matrix& effect, const Matrix& no_meas_a,
                                          const Matrix& no_meas_b) {
    const EigenSystem es = hermitian_eigensystem(effect);
    if (es.values.size() != 2) throw std::invalid_argument("randomized_plan_for_effect: qubit effects only");
    const double gamma1 = es.values[1];
    const double gamma2 = es.values[0] - es.values[1];
    if (gamma1 < 1e-12 || gamma2 < 1e-12)
        throw std::invalid_argument("randomized_plan_for_effect: effect is projective or degenerate");
    std::vector<cdouble> top(2);
    for (int i = 0; i < 2; ++i) top[i] = es.vectors(i, 0);
    const Matrix proj_top = Matrix::outer(top, top);

    const double s = gamma1 + gamma2;
    RandomizedPlan plan;
    plan.settings.push_back({no_meas_a, 0.5 * gamma1 / s, gamma1});
    plan.settings.push_back({no_meas_b, 0.5 * gamma1 / s, gamma1});
    plan.settings.push_back({proj_top, gamma2 / s, gamma2});
    return plan;
}

namespace {

constexpr uint64_t kSharedAcquisitionSalt = 0xA17A;

uint64_t acquisition_salt(uint64_t alpha_index, uint64_t entry_index, uint64_t acq_index) {
    return ((alpha_index + 1) << 32) | (entry_index << 16) | acq_index;
}

ExpectationEstimate simulate_entry(const PlanEntry& entry, const BeamConfig& cfg, uint64_t alpha_index,
                                   uint64_t entry_index) {
    double value = 0.0;
    double var = 0.0;
    for (size_t k = 0; k < entry.acquisitions.size(); ++k) {
        const auto& acq = entry.acquisitions[k];
        const uint64_t salt = acquisition_salt(alpha_index, entry_index, k);
        ExpectationEstimate est;
        if (acq.no_measurement_pair) {
            const RandomizedPlan plan = randomized_plan_for_effect(
                acq.effect, acq.no_measurement_pair->first, acq.no_measurement_pair->second);
            est = simulate_randomized_povm(entry.state, plan, cfg, salt).combined;
        } else {
            est = simulate_projector(entry.state, acq.effect, cfg, salt);
        }
        value += acq.weight * est.value;
        var += acq.weight * acq.weight * est.sigma * est.sigma;
    }
    return {value, std::sqrt(var)};
}

}  // namespace

SimProfile run_experiment(MeasurementKind kind, const std::vector<double>& alphas, const BeamConfig& cfg) {
    cfg.validate();
    if (alphas.empty()) throw std::invalid_argument("run_experiment: no alpha values");
    const Povm povm = (kind == MeasurementKind::sharp) ? sharp_meter_povm() : unsharp_meter_povm();

    // The sharp |+x> acquisition has no randomness in its setting sequence
    // and does not depend on alpha: one exposure serves the whole profile.
    std::optional<ExpectationEstimate> shared_ama;
    if (kind == MeasurementKind::sharp) {
        const MeasurementPlan plan = example_plan(0.0, povm);
        shared_ama = simulate_entry(plan.entries[3], cfg, kSharedAcquisitionSalt, 3);
    }

    SimProfile prof;
    prof.eps_bar_est = -1.0;
    prof.argmax_alpha = 0.0;
    for (size_t ai = 0; ai < alphas.size(); ++ai) {
        const MeasurementPlan plan = example_plan(alphas[ai], povm);
        TermDecomposition terms;
        TermValue* slots[6] = {&terms.t_a2, &terms.t_m2,  &terms.t_m,
                               &terms.t_ama, &terms.t_shift, &terms.t_unsharp};
        for (size_t e = 0; e < plan.entries.size(); ++e) {
            ExpectationEstimate est;
            if (e == 3 && shared_ama)
                est = *shared_ama;
            else if (plan.entries[e].acquisitions.empty())
                est = {0.0, 0.0};
            else
                est = simulate_entry(plan.entries[e], cfg, ai, e);
            slots[e]->value = est.value;
            slots[e]->sigma = est.sigma;
        }
        const AssembledError err = assemble(terms);
        prof.points.push_back({alphas[ai], err.epsilon, err.sigma, err.sigma_on_squared, terms});
        if (err.epsilon > prof.eps_bar_est) {
            prof.eps_bar_est = err.epsilon;
            prof.argmax_alpha = alphas[ai];
        }
    }
    return prof;
}

}  // namespace qrms
