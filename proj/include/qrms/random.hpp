#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qrms/linalg.hpp"
#include "qrms/povm.hpp"

namespace qrms {

/// Seedable stream of pseudo-random draws. Streams are derived from a base
/// seed plus salt words, so independent simulation legs can each own a
/// deterministic stream regardless of evaluation order.
class RngStream {
  public:
    explicit RngStream(uint64_t seed, uint64_t salt_a = 0, uint64_t salt_b = 0, uint64_t salt_c = 0);

    double uniform();                                // [0, 1)
    double normal();                                 // standard normal
    long long poisson(double mean);                  // mean >= 0
    size_t pick(const std::vector<double>& probs);   // categorical draw

  private:
    std::mt19937_64 eng_;
};

Matrix random_hermitian(RngStream& rng, int dim, double scale = 1.0);
PureState random_state(RngStream& rng, int dim);
/// Random POVM: positive effects G_i conjugated by S^{-1/2} so they sum to
/// identity; outcome values spaced to stay pairwise distinct.
Povm random_povm(RngStream& rng, int dim, int n_outcomes);
/// Random projective POVM (spectral measure of a random observable).
Povm random_projective_povm(RngStream& rng, int dim);
/// Random qubit observable with spectrum {+1, -1}.
Observable random_dichotomic_qubit(RngStream& rng);

}  // namespace qrms
