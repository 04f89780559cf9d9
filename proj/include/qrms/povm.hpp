#pragma once

#include <utility>
#include <vector>

#include "qrms/linalg.hpp"

namespace qrms {

struct PovmOutcome {
    double value;
    Matrix effect;
};

/// Positive-operator-valued measure with real outcome values. Construction
/// validates: effects Hermitian and positive (eigenvalues >= -1e-10),
/// effects summing to identity within 1e-10, outcome values pairwise
/// distinct (gap > 1e-9).
class Povm {
  public:
    explicit Povm(std::vector<PovmOutcome> outcomes);

    const std::vector<PovmOutcome>& outcomes() const { return outcomes_; }
    int dim() const { return outcomes_.front().effect.rows(); }
    int size() const { return static_cast<int>(outcomes_.size()); }

  private:
    std::vector<PovmOutcome> outcomes_;
};

/// Isometric extension realizing a POVM as a projective meter measurement on
/// system (x) ancilla: V|psi> = sum_x (sqrt(E_x)|psi>) (x) |x>.
struct Dilation {
    int ancilla_dim;
    Matrix isometry;  // (d * ancilla_dim) x d
    Matrix meter;     // sum_x x (1 (x) |x><x|) on the composite space
};

/// Spectral POVM of a Hermitian observable: one projector per (merged)
/// eigenvalue.
Povm sharp_from_observable(const Observable& m);

/// The projective two-outcome measurement of the meter observable
/// [[1,1],[1,-1]], outcomes +-sqrt(2) with effects (1 +- sigma_m)/2.
Povm sharp_meter_povm();

/// The smeared two-outcome measurement of the same meter: outcomes +-2 with
/// effects (1 +- sigma_x/2 +- sigma_z/2)/2. Its moment operator equals the
/// meter, its second moment is 4*identity.
Povm unsharp_meter_povm();

/// First moment sum_x x E_x.
Observable moment(const Povm& p);
/// Second moment sum_x x^2 E_x.
Observable second_moment(const Povm& p);

/// True iff every effect is idempotent within 1e-9.
bool is_projective(const Povm& p);

/// Born probabilities, clamped to [0,1].
std::vector<std::pair<double, double>> outcome_distribution(const Povm& p, const PureState& psi);

/// Distribution-level accuracy in the given state: for every eigenvalue of
/// `a` the POVM probability mass on matching outcome values (within 1e-9)
/// agrees with the spectral probability within tol, and outcomes away from
/// the spectrum carry probability below tol.
bool is_accurate(const Observable& a, const Povm& p, const PureState& psi, double tol);

/// Naimark dilation with one ancilla level per outcome.
Dilation naimark_dilate(const Povm& p);

/// || (meter V - V A) |psi> || on the composite space; equals the
/// noise-operator error of (a, p, psi).
double dilation_error_norm(const Dilation& d, const Observable& a, const PureState& psi);

}  // namespace qrms
