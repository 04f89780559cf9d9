#pragma once

#include <array>

#include "qrms/linalg.hpp"

namespace qrms::qubit {

Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
/// (sigma_x + sigma_z)/sqrt(2), the diagonal-axis spin component.
Matrix sigma_m();

PureState plus_z();
PureState minus_z();
PureState plus_x();
PureState minus_x();

/// e^{(i alpha sigma_x)/2} |+z>, Bloch vector (0, sin a, cos a).
PureState rotated_plus_z(double alpha);

/// (x, y, z) Bloch components of a qubit state.
std::array<double, 3> bloch(const PureState& psi);

}  // namespace qrms::qubit
