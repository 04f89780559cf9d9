#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrms/linalg.hpp"
#include "qrms/povm.hpp"

namespace qrms {

/// Noise-operator based q-rms error:
/// sqrt( <psi|(A-M)^2|psi> + <psi|M2 - M^2|psi> )
/// with M, M2 the first and second moment operators of the POVM. A radicand
/// in [-1e-10, 0) is clamped; below -1e-8 signals a broken POVM.
double eps_no(const Observable& a, const Povm& p, const PureState& psi);

/// Error profile: eps_no on the state rotated by the traceless part of `a`
/// through angle alpha (identity components only shift the global phase).
double eps_profile_at(const Observable& a, const Povm& p, const PureState& psi, double alpha);

struct EpsBarResult {
    double value;
    double argmax_alpha;
};

/// Supremum of the error profile over one period of the rotation: a coarse
/// grid (2048 points per 2*pi of period) followed by golden-section
/// refinement of the best grid point to |dalpha| < 1e-8. Ties resolved
/// toward the lowest alpha.
EpsBarResult eps_bar(const Observable& a, const Povm& p, const PureState& psi);

struct ErrorProfile {
    struct Sample {
        double alpha;
        double epsilon;
    };
    std::vector<Sample> samples;
    double eps_bar;
    double argmax_alpha;
};

/// Profile sampled on a uniform inclusive grid over [0, 2*pi] plus the
/// refined supremum.
ErrorProfile error_profile(const Observable& a, const Povm& p, const PureState& psi, int n_samples);

/// Classical rms error from the joint distribution of A and the POVM,
/// valid when all effects commute with `a` (checked within 1e-9).
double classical_rms_commuting(const Observable& a, const Povm& p, const PureState& psi);

struct RequirementReport {
    struct Section {
        std::string name;
        bool pass;
        std::string detail;  // counterexample data on failure
    };
    std::vector<Section> sections;
    bool all_pass() const;
};

/// Randomized property suites for the error-measure requirements:
/// soundness, completeness proxy, dominating, conservation for dichotomic
/// measurements, and correspondence with the classical rms on commuting
/// instances.
RequirementReport check_requirements(int trials, uint64_t seed, int dim = 2);

}  // namespace qrms
