// Command-line front end: analytic counter-example and error profiles,
// seeded Monte Carlo polarimeter runs, and the randomized property-check
// suite. Exit codes: 0 success, 1 validation error, 2 property-check
// failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrms/error_measures.hpp"
#include "qrms/io.hpp"
#include "qrms/polarimeter.hpp"
#include "qrms/povm.hpp"
#include "qrms/qubit.hpp"
#include "qrms/random.hpp"
#include "qrms/three_state.hpp"

namespace {

using nlohmann::json;
using namespace qrms;

Observable demo_observable() { return Observable(Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}})); }
Observable demo_meter() { return Observable(Matrix::from_rows({{1.0, 1.0}, {1.0, -1.0}})); }

void print_matrix(const std::string& name, const Matrix& m) {
    std::cout << name << " =\n";
    for (int i = 0; i < m.rows(); ++i) {
        std::cout << "  [";
        for (int j = 0; j < m.cols(); ++j) {
            const cdouble x = m(i, j);
            std::cout << (j ? ", " : "") << x.real();
            if (std::abs(x.imag()) > 1e-14) std::cout << (x.imag() > 0 ? "+" : "") << x.imag() << "i";
        }
        std::cout << "]\n";
    }
}

int cmd_counterexample() {
    const Observable a = demo_observable();
    const Observable m = demo_meter();
    const PureState psi = qubit::plus_z();
    const Povm p1 = sharp_meter_povm();
    const Povm p2 = unsharp_meter_povm();

    print_matrix("A", a.mat());
    print_matrix("M", m.mat());
    std::cout << "psi = [1, 0] (|+z>)\n\n";

    std::cout << "eps_no(A, sharp meter, psi)   = " << format_double(eps_no(a, p1, psi)) << "\n";
    std::cout << "eps_no(A, unsharp meter, psi) = " << format_double(eps_no(a, p2, psi)) << "\n\n";

    const SpectralDecomposition sd = spectral_decompose(a);
    std::cout << "accuracy table (spectral probability vs POVM probability):\n";
    const auto dist = outcome_distribution(p1, psi);
    for (size_t k = 0; k < sd.eigenvalues.size(); ++k) {
        double matched = 0.0;
        for (const auto& [value, prob] : dist)
            if (std::abs(value - sd.eigenvalues[k]) <= 1e-9) matched += prob;
        std::cout << "  a = " << format_double(sd.eigenvalues[k])
                  << "  <psi|P^A|psi> = " << format_double(expectation(psi, sd.projectors[k]))
                  << "  sharp-meter prob = " << format_double(matched) << "\n";
    }
    std::cout << "accurate(A, sharp meter, psi) = " << (is_accurate(a, p1, psi, 1e-9) ? "true" : "false")
              << "\n\n";

    const EpsBarResult b1 = eps_bar(a, p1, psi);
    const EpsBarResult b2 = eps_bar(a, p2, psi);
    std::cout << "eps_bar(A, sharp meter, psi)   = " << format_double(b1.value)
              << " at alpha = " << format_double(b1.argmax_alpha) << "\n";
    std::cout << "eps_bar(A, unsharp meter, psi) = " << format_double(b2.value)
              << " at alpha = " << format_double(b2.argmax_alpha) << "\n";
    return 0;
}

int write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output path: " << path << "\n";
        return 1;
    }
    f << text;
    return f.good() ? 0 : 1;
}

int cmd_profile(const std::string& measurement, int alpha_steps, const std::string& out) {
    const Observable a = demo_observable();
    const PureState psi = qubit::plus_z();
    const Povm p = (measurement == "sharp") ? sharp_meter_povm() : unsharp_meter_povm();
    const ErrorProfile prof = error_profile(a, p, psi, alpha_steps);
    const int rc = write_text(out, profile_csv(prof));
    if (rc != 0) return rc;
    std::cout << "eps_bar = " << format_double(prof.eps_bar)
              << "  argmax_alpha = " << format_double(prof.argmax_alpha) << "\n";
    return 0;
}

int cmd_simulate(const std::string& measurement, const BeamConfig& cfg, int alpha_steps,
                 const std::string& out) {
    std::vector<double> alphas;
    for (int j = 0; j < alpha_steps; ++j) alphas.push_back(2.0 * std::numbers::pi * j / (alpha_steps - 1));
    const MeasurementKind kind =
        (measurement == "sharp") ? MeasurementKind::sharp : MeasurementKind::unsharp;
    const SimProfile prof = run_experiment(kind, alphas, cfg);

    const int rc = write_text(out, simulation_csv(prof));
    if (rc != 0) return rc;

    json summary;
    summary["eps_bar_est"] = prof.eps_bar_est;
    summary["argmax_alpha"] = prof.argmax_alpha;
    summary["seed"] = cfg.seed;
    summary["config"] = {{"measurement", measurement}, {"rate", cfg.rate},     {"time", cfg.duration},
                         {"slice_hz", cfg.slice_hz},   {"seed", cfg.seed},     {"alpha_steps", alpha_steps},
                         {"out", out}};
    if (out.empty()) {
        std::cout << summary.dump(2) << "\n";
        return 0;
    }
    std::filesystem::path jpath(out);
    jpath.replace_extension(".json");
    return write_text(jpath.string(), summary.dump(2) + "\n");
}

int cmd_check(int trials, uint64_t seed, int dim) {
    json report;
    bool ok = true;

    const RequirementReport req = check_requirements(trials, seed, dim);
    for (const auto& s : req.sections) {
        report["requirements"][s.name] = {{"pass", s.pass}, {"detail", s.detail}};
        ok = ok && s.pass;
    }

    // dilation equivalence: the composite-space norm formula reproduces the
    // POVM-level error
    {
        RngStream rng(seed, 0xD1);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const Observable a(random_hermitian(rng, dim));
            const Povm p = (t % 2 == 0) ? random_povm(rng, dim, 2 + t % 3) : random_projective_povm(rng, dim);
            const PureState psi = random_state(rng, dim);
            const Dilation d = naimark_dilate(p);
            worst = std::max(worst, std::abs(dilation_error_norm(d, a, psi) - eps_no(a, p, psi)));
        }
        const bool pass = worst <= 1e-9;
        report["dilation_equivalence"] = {{"pass", pass}, {"max_residual", worst}};
        ok = ok && pass;
    }

    // three-state equivalence: assembled term decomposition reproduces the
    // direct error formula
    {
        RngStream rng(seed, 0xD2);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const Observable a(random_hermitian(rng, dim));
            const Povm p = (t % 2 == 0) ? random_povm(rng, dim, 2 + t % 3) : random_projective_povm(rng, dim);
            const PureState psi = random_state(rng, dim);
            const AssembledError e = assemble(decompose(a, p, psi));
            worst = std::max(worst, std::abs(e.epsilon - eps_no(a, p, psi)));
        }
        const bool pass = worst <= 1e-10;
        report["three_state_equivalence"] = {{"pass", pass}, {"max_residual", worst}};
        ok = ok && pass;
    }

    report["trials"] = trials;
    report["seed"] = seed;
    report["dim"] = dim;
    report["all_pass"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? 0 : 2;
}

int cmd_dilate() {
    for (const auto& [name, povm] : {std::pair{"sharp meter", sharp_meter_povm()},
                                     std::pair{"unsharp meter", unsharp_meter_povm()}}) {
        const Dilation d = naimark_dilate(povm);
        const Matrix vtv = d.isometry.adjoint() * d.isometry;
        std::cout << name << ":\n";
        std::cout << "  ||V'V - 1||_max = " << format_double((vtv - Matrix::identity(povm.dim())).norm_max())
                  << "\n";
        double worst = 0.0;
        for (int x = 0; x < povm.size(); ++x) {
            Matrix meter_proj = Matrix::zero(d.isometry.rows(), d.isometry.rows());
            for (int i = 0; i < povm.dim(); ++i) meter_proj(i * povm.size() + x, i * povm.size() + x) = 1.0;
            const Matrix pulled = d.isometry.adjoint() * meter_proj * d.isometry;
            worst = std::max(worst, (pulled - povm.outcomes()[x].effect).norm_max());
        }
        std::cout << "  max ||V'(1 (x) P_x)V - E_x||_max = " << format_double(worst) << "\n";

        RngStream rng(0, 0xD11A);
        const Observable a = demo_observable();
        double eps_worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const PureState psi = random_state(rng, 2);
            eps_worst =
                std::max(eps_worst, std::abs(dilation_error_norm(d, a, psi) - eps_no(a, povm, psi)));
        }
        std::cout << "  max |norm formula - eps_no| over 100 states = " << format_double(eps_worst) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum rms measurement-error toolkit"};
    app.require_subcommand(1);

    app.add_subcommand("counterexample", "print the two-level demonstration of the plain error defect");

    std::string measurement = "sharp";
    int alpha_steps = 17;
    std::string out;
    auto* profile = app.add_subcommand("profile", "analytic error profile over [0, 2*pi]");
    profile->add_option("--measurement", measurement, "sharp|unsharp")
        ->check(CLI::IsMember({"sharp", "unsharp"}));
    profile->add_option("--alpha-steps", alpha_steps, "grid points (default 17)")->check(CLI::Range(2, 1 << 20));
    profile->add_option("--out", out, "CSV output path (stdout if omitted)");

    BeamConfig cfg;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo polarimeter run");
    simulate->add_option("--measurement", measurement, "sharp|unsharp")
        ->check(CLI::IsMember({"sharp", "unsharp"}));
    simulate->add_option("--rate", cfg.rate, "counts per second (default 350)")->check(CLI::PositiveNumber);
    simulate->add_option("--time", cfg.duration, "seconds per setting (default 100)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--slice-hz", cfg.slice_hz, "randomization frequency (default 10)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    simulate->add_option("--alpha-steps", alpha_steps, "grid points (default 17)")->check(CLI::Range(2, 4096));
    simulate->add_option("--out", out, "CSV output path; JSON summary lands beside it");

    int trials = 1000;
    uint64_t seed = 0;
    int dim = 2;
    auto* check = app.add_subcommand("check", "randomized property-check suite");
    check->add_option("--trials", trials, "instances per property (default 1000)")->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "RNG seed (default 0)");
    check->add_option("--dim", dim, "Hilbert space dimension (default 2)")->check(CLI::IsMember({2, 3, 4}));

    app.add_subcommand("dilate", "print Naimark dilation verification residuals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("counterexample")) return cmd_counterexample();
        if (app.got_subcommand("profile")) return cmd_profile(measurement, alpha_steps, out);
        if (app.got_subcommand("simulate")) return cmd_simulate(measurement, cfg, alpha_steps, out);
        if (app.got_subcommand("check")) return cmd_check(trials, seed, dim);
        if (app.got_subcommand("dilate")) return cmd_dilate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
