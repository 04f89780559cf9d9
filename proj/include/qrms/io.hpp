#pragma once

#include <string>

#include "qrms/error_measures.hpp"
#include "qrms/polarimeter.hpp"

namespace qrms {

/// Shortest decimal representation that round-trips to the same double;
/// locale-independent, '.' separator.
std::string format_double(double x);

/// CSV with header "alpha_rad,epsilon", '\n' line endings, no trailing
/// whitespace.
std::string profile_csv(const ErrorProfile& profile);

/// CSV with header
/// "alpha_rad,eps_est,eps_sigma,t_A2,t_M2,t_M,t_AMA,t_shift,t_unsharp".
std::string simulation_csv(const SimProfile& profile);

}  // namespace qrms
