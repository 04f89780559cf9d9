#include "qrms/qubit.hpp"

#include <array>
#include <cmath>

namespace qrms::qubit {

Matrix sigma_x() { return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
Matrix sigma_y() { return Matrix::from_rows({{0.0, cdouble(0.0, -1.0)}, {cdouble(0.0, 1.0), 0.0}}); }
Matrix sigma_z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
Matrix sigma_m() {
    const double w = 1.0 / std::sqrt(2.0);
    return (sigma_x() + sigma_z()) * cdouble(w);
}

PureState plus_z() { return PureState({1.0, 0.0}); }
PureState minus_z() { return PureState({0.0, 1.0}); }
PureState plus_x() {
    const double w = 1.0 / std::sqrt(2.0);
    return PureState({w, w});
}
PureState minus_x() {
    const double w = 1.0 / std::sqrt(2.0);
    return PureState({w, -w});
}

PureState rotated_plus_z(double alpha) {
    return PureState({std::cos(alpha / 2.0), cdouble(0.0, std::sin(alpha / 2.0))});
}

std::array<double, 3> bloch(const PureState& psi) {
    return {expectation(psi, sigma_x()), expectation(psi, sigma_y()), expectation(psi, sigma_z())};
}

}  // namespace qrms::qubit
