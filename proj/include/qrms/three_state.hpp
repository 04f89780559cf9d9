#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrms/linalg.hpp"
#include "qrms/povm.hpp"

namespace qrms {

struct TermValue {
    double value = 0.0;
    std::optional<double> sigma;
};

/// The six expectation-value terms whose signed sum is the squared error:
/// eps^2 = <A^2> + <M^2> - <M> - <AMA> + <(A-1)M(A-1)> + <M2 - M^2>.
struct TermDecomposition {
    TermValue t_a2;       // <A^2>
    TermValue t_m2;       // <M^2>
    TermValue t_m;        // <M>, enters negatively
    TermValue t_ama;      // <AMA>, enters negatively
    TermValue t_shift;    // <(A-1)M(A-1)>
    TermValue t_unsharp;  // <M2 - M^2>

    double epsilon_squared() const;
    double sigma_squared_sum() const;  // variance of the signed sum
};

/// Max-norm residual of (A-1)M(A-1) - AMA - M + (MA + AM); zero for every
/// Hermitian pair, up to round-off below 1e-12.
double symmetrization_identity_check(const Observable& a, const Observable& m);

/// Exact (noise-free) term values in the given state.
TermDecomposition decompose(const Observable& a, const Povm& p, const PureState& psi);

struct AssembledError {
    double epsilon;
    double sigma;
    /// When the signed sum sits within its own uncertainty of zero, sigma is
    /// reported on eps^2 instead of eps (the derivative blows up at 0).
    bool sigma_on_squared;
};

/// eps = sqrt(max(0, signed sum)), with first-order propagation of the
/// per-term standard deviations. A sum below -1e-9 is an error.
AssembledError assemble(const TermDecomposition& terms);

/// One beam acquisition inside a plan entry: weight times the probability of
/// the effect. Non-projective effects carry the identity-resolving projector
/// pair used for the no-measurement branch of their randomized realization.
struct PlanAcquisition {
    double weight;
    Matrix effect;
    std::optional<std::pair<Matrix, Matrix>> no_measurement_pair;
};

struct PlanEntry {
    std::string term;  // one of the six TermDecomposition slots
    PureState state;
    std::vector<PlanAcquisition> acquisitions;
};

struct MeasurementPlan {
    double alpha;
    bool unsharp;
    std::vector<PlanEntry> entries;  // always the six slots, fixed order
};

/// Concrete plan for the qubit demonstration (A = 1 + sigma_x, initial state
/// |+z>), for either the sharp or the unsharp meter POVM:
///   t_a2    : 4 * P^{sx}(+1) in |psi(alpha)>
///   t_m2    : 2 * (P^{sx}(+1) + P^{sx}(-1)) in |psi(alpha)>
///   t_m     : value-weighted POVM probabilities in |psi(alpha)>
///   t_ama   : 2 * the same in |+x> (alpha-independent)
///   t_shift : the same in |psi(alpha + pi)>
///   t_unsharp: 0 for the sharp meter, 2 * identity for the unsharp one
MeasurementPlan example_plan(double alpha, const Povm& p);

/// Noise-free value of a plan entry: sum of weight * <state|effect|state>.
double plan_entry_value(const PlanEntry& entry);

}  // namespace qrms
