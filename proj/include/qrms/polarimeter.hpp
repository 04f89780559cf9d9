#pragma once

#include <cstdint>
#include <vector>

#include "qrms/linalg.hpp"
#include "qrms/random.hpp"
#include "qrms/three_state.hpp"

namespace qrms {

/// Beam exposure for one acquisition setting.
struct BeamConfig {
    double rate = 350.0;      // counts per second
    double duration = 100.0;  // seconds per setting
    double slice_hz = 10.0;   // randomization frequency
    uint64_t seed = 0;

    void validate() const;
};

struct ExpectationEstimate {
    double value;
    double sigma;  // +-1 standard deviation
};

/// Counts accumulated for one randomized setting.
struct CountRecord {
    long long slices;
    long long counts;
    long long complement_counts;
};

/// One leg of a randomized POVM realization: a projector measured during the
/// slices where it is selected, entering the combined probability with a
/// classical weight.
struct RandomizedSetting {
    Matrix projector;
    double selection_probability;
    double weight;
};

struct RandomizedPlan {
    std::vector<RandomizedSetting> settings;

    void validate() const;  // selection probabilities sum to 1
};

struct RandomizedResult {
    std::vector<ExpectationEstimate> per_setting;
    std::vector<CountRecord> records;
    ExpectationEstimate combined;
};

/// Poisson counting of a projective analyzer setting: independent draws for
/// the projector and its complement over the full exposure, reduced as the
/// ratio estimate p = N+/(N+ + N-), sigma = sqrt(p(1-p)/(N+ + N-)).
ExpectationEstimate simulate_projector(const PureState& psi, const Matrix& proj, const BeamConfig& cfg,
                                       uint64_t stream_salt = 0);

/// Slice-randomized acquisition: each of duration*slice_hz slices selects a
/// setting by its probability; per-setting counts are reduced as above and
/// combined with the classical weights.
RandomizedResult simulate_randomized_povm(const PureState& psi, const RandomizedPlan& plan,
                                          const BeamConfig& cfg, uint64_t stream_salt = 0);

/// Randomized realization of a non-projective two-level effect
/// E = gamma1 * 1 + gamma2 * P: the no-measurement pair shares the gamma1
/// weight, the projector onto the top eigenvector carries gamma2.
RandomizedPlan randomized_plan_for_effect(const Matrix& effect, const Matrix& no_meas_a,
                                          const Matrix& no_meas_b);

enum class MeasurementKind { sharp, unsharp };

struct SimPoint {
    double alpha;
    double eps_est;
    double eps_sigma;
    bool sigma_on_squared;
    TermDecomposition terms;
};

struct SimProfile {
    std::vector<SimPoint> points;
    double eps_bar_est;
    double argmax_alpha;
};

/// Full error-profile reconstruction: for each alpha the six-term plan is
/// simulated and assembled. The alpha-independent |+x> acquisition of the
/// sharp plan is simulated once and reused across the profile.
SimProfile run_experiment(MeasurementKind kind, const std::vector<double>& alphas, const BeamConfig& cfg);

}  // namespace qrms
