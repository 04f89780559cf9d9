#include "qrms/io.hpp"

#include <charconv>
#include <stdexcept>

namespace qrms {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string profile_csv(const ErrorProfile& profile) {
    std::string out = "alpha_rad,epsilon\n";
    for (const auto& s : profile.samples) {
        out += format_double(s.alpha);
        out += ',';
        out += format_double(s.epsilon);
        out += '\n';
    }
    return out;
}

std::string simulation_csv(const SimProfile& profile) {
    std::string out = "alpha_rad,eps_est,eps_sigma,t_A2,t_M2,t_M,t_AMA,t_shift,t_unsharp\n";
    for (const auto& pt : profile.points) {
        out += format_double(pt.alpha);
        out += ',';
        out += format_double(pt.eps_est);
        out += ',';
        out += format_double(pt.eps_sigma);
        for (const TermValue* t : {&pt.terms.t_a2, &pt.terms.t_m2, &pt.terms.t_m, &pt.terms.t_ama,
                                   &pt.terms.t_shift, &pt.terms.t_unsharp}) {
            out += ',';
            out += format_double(t->value);
        }
        out += '\n';
    }
    return out;
}

}  // namespace qrms
