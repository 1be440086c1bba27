// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kroncap/equivalents.hpp"
#include "kroncap/errors.hpp"
#include "kroncap/fixed_point.hpp"
#include "kroncap/montecarlo.hpp"
#include "kroncap/profile.hpp"
#include "kroncap/resolvent_diag.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

constexpr double kLn2 = 0.6931471805599453;

// One profile source per run: a JSON file or a generator spec.
struct ProfileArgs {
    std::string path;
    std::string generate;
    int big_n = 0;
    int n = 0;
    std::string save_path;
};

void add_profile_options(CLI::App* cmd, ProfileArgs* args) {
    auto* path = cmd->add_option("--profile", args->path,
                                 "Profile JSON file {n, N, d, d_tilde}");
    auto* gen = cmd->add_option(
        "--generate", args->generate,
        "Generator spec: constant:c0 | linear-ramp:lo,hi | exponential-decay:base");
    path->excludes(gen);
    cmd->add_option("--N", args->big_n, "Receive antennas (with --generate)");
    cmd->add_option("--n", args->n, "Transmit antennas (with --generate)");
    cmd->add_option("--save-profile", args->save_path,
                    "Write the effective profile JSON to this path");
}

kroncap::ValidatedProfile resolve_profile(const ProfileArgs& args) {
    kroncap::VarianceProfile raw;
    if (!args.path.empty()) {
        raw = kroncap::load_profile(args.path);
    } else if (!args.generate.empty()) {
        if (args.big_n < 1 || args.n < 1) {
            throw kroncap::InvalidParams("--generate requires --N and --n");
        }
        raw = kroncap::generate_from_spec(args.generate, args.big_n, args.n);
    } else {
        throw kroncap::InvalidParams("one of --profile or --generate is required");
    }
    if (!args.save_path.empty()) {
        kroncap::save_profile(raw, args.save_path);
    }
    return kroncap::validate(std::move(raw));
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

int run_solve(const ProfileArgs& profile_args, double t, double tol) {
    const auto profile = resolve_profile(profile_args);
    const kroncap::FixedPoint fp = kroncap::solve(profile, t, tol);
    emit(json{{"schema", 1},
              {"t", fp.t},
              {"delta", fp.delta},
              {"delta_tilde", fp.delta_tilde},
              {"gamma", fp.gamma},
              {"gamma_tilde", fp.gamma_tilde},
              {"one_minus_t2gg", fp.one_minus_t2gg()}});
    return kExitOk;
}

int run_equiv(const ProfileArgs& profile_args, double rho, double tol,
              bool bits, std::optional<double> threshold) {
    const auto profile = resolve_profile(profile_args);
    const kroncap::Equivalents eq = kroncap::v_of_rho(profile, rho, tol);
    const double unit_scale = bits ? 1.0 / kLn2 : 1.0;
    json j{{"schema", 1},
           {"rho", eq.rho},
           {"v", eq.v * unit_scale},
           {"sigma2", eq.sigma2 * unit_scale * unit_scale},
           {"unit", bits ? "bits" : "nats"}};
    if (threshold) {
        // Threshold is always given in nats.
        j["threshold"] = *threshold;
        j["outage"] = kroncap::outage(profile, rho, *threshold, tol);
    }
    emit(j);
    return kExitOk;
}

int run_simulate(const ProfileArgs& profile_args, double rho, int trials,
                 uint64_t seed, int threads, double tol, bool bits,
                 const std::string& out_path) {
    const auto profile = resolve_profile(profile_args);
    const kroncap::Equivalents eq = kroncap::v_of_rho(profile, rho, tol);
    const kroncap::TrialBatch batch =
        kroncap::run_batch(profile, rho, trials, seed, threads);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw kroncap::IoError("cannot write '" + out_path + "'");
        char line[64];
        for (double s : batch.samples) {
            std::snprintf(line, sizeof(line), "%.17g\n", s);
            out << line;
        }
        if (!out) throw kroncap::IoError("write failed for '" + out_path + "'");
    }

    const double unit_scale = bits ? 1.0 / kLn2 : 1.0;
    json j{{"schema", 1},
           {"rho", rho},
           {"trials", trials},
           {"seed", seed},
           {"threads", threads},
           {"v", eq.v * unit_scale},
           {"sigma2", eq.sigma2 * unit_scale * unit_scale},
           {"mean", batch.mean * unit_scale},
           {"unit", bits ? "bits" : "nats"}};
    j["var"] = batch.samples.size() >= 2
                   ? json(batch.var * unit_scale * unit_scale)
                   : json(nullptr);
    if (batch.samples.size() >= 100 && eq.sigma2 > 0.0) {
        const kroncap::TestReport report = kroncap::normality_test(batch, eq);
        j["ks_stat"] = report.ks_stat;
        j["ks_p"] = report.ks_p;
        j["var_ratio"] = report.var_ratio;
        j["skewness"] = report.skewness;
        j["excess_kurtosis"] = report.excess_kurtosis;
    } else {
        j["ks_stat"] = nullptr;
        j["ks_p"] = nullptr;
        j["var_ratio"] = batch.samples.size() >= 2 && eq.sigma2 > 0.0
                             ? json(batch.var / eq.sigma2)
                             : json(nullptr);
    }
    emit(j);
    return kExitOk;
}

int run_verify(const std::string& family, double ratio, double rho,
               const std::vector<int>& ns, int trials_base, uint64_t seed,
               int threads, double tol) {
    const kroncap::RateFitReport report = kroncap::rate_fit(
        family, ratio, rho, ns, trials_base, seed, threads, tol);
    auto series_json = [](const kroncap::DiagnosticSeries& s) {
        return json{{"ns", s.ns},
                    {"errors", s.errors},
                    {"fitted_exponent", s.fitted_exponent},
                    {"fit_stderr", s.fit_stderr}};
    };
    emit(json{{"schema", 1},
              {"family", family},
              {"ratio", ratio},
              {"rho", rho},
              {"seed", seed},
              {"trials_base", trials_base},
              {"alpha_bias", series_json(report.alpha_bias)},
              {"trace_gap", series_json(report.trace_gap)}});
    return kExitOk;
}

int emit_error(int code, const std::string& type, const std::string& message) {
    std::cerr << json{{"schema", 1},
                      {"error", {{"type", type}, {"message", message}}}}
                     .dump()
              << std::endl;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic equivalents and Monte Carlo verification for "
                 "the mutual information of separable-variance MIMO channels"};
    app.require_subcommand(1);

    ProfileArgs profile_args;
    double t = 0.0, rho = 0.0, tol = 1e-12, threshold = 0.0, ratio = 1.0;
    int trials = 1000, threads = 1, trials_base = 2000;
    uint64_t seed = 1;
    bool bits = false;
    std::string out_path;
    std::vector<int> ns{8, 16, 32, 64};

    auto* solve_cmd = app.add_subcommand("solve", "Solve the canonical pair at t");
    add_profile_options(solve_cmd, &profile_args);
    solve_cmd->add_option("--t", t, "Argument t >= 0")->required();
    solve_cmd->add_option("--tol", tol, "Residual tolerance");

    auto* equiv_cmd =
        app.add_subcommand("equiv", "Deterministic V(rho) and sigma2(rho)");
    add_profile_options(equiv_cmd, &profile_args);
    equiv_cmd->add_option("--rho", rho, "SNR rho >= 0")->required();
    equiv_cmd->add_option("--tol", tol, "Residual tolerance");
    equiv_cmd->add_flag("--bits", bits, "Display in bits instead of nats");

    auto* outage_cmd =
        app.add_subcommand("outage", "Gaussian-approximation outage probability");
    add_profile_options(outage_cmd, &profile_args);
    outage_cmd->add_option("--rho", rho, "SNR rho > 0")->required();
    outage_cmd->add_option("--threshold", threshold, "Rate threshold in nats")
        ->required();
    outage_cmd->add_option("--tol", tol, "Residual tolerance");
    outage_cmd->add_flag("--bits", bits, "Display V/sigma2 in bits");

    auto* sim_cmd = app.add_subcommand(
        "simulate", "Monte Carlo mutual-information trials with CLT summary");
    add_profile_options(sim_cmd, &profile_args);
    sim_cmd->add_option("--rho", rho, "SNR rho >= 0")->required();
    sim_cmd->add_option("--trials", trials, "Number of realizations")->required();
    sim_cmd->add_option("--seed", seed, "RNG seed");
    sim_cmd->add_option("--threads", threads, "Worker threads");
    sim_cmd->add_option("--tol", tol, "Residual tolerance");
    sim_cmd->add_option("--out", out_path, "CSV path, one sample per line");
    sim_cmd->add_flag("--bits", bits, "Display in bits instead of nats");

    auto* verify_cmd = app.add_subcommand(
        "verify", "Empirical decay of the deterministic-equivalent errors");
    std::string family = "constant:1";
    verify_cmd->add_option("--profile-family", family, "Generator spec per n");
    verify_cmd->add_option("--c", ratio, "Receive/transmit ratio N/n");
    verify_cmd->add_option("--rho", rho, "SNR rho > 0")->required();
    verify_cmd->add_option("--ns", ns, "Dimensions, e.g. --ns 8 16 32 64")
        ->delimiter(',');
    verify_cmd->add_option("--trials-per-n", trials_base,
                           "Trials at the smallest n (scaled by n^2)");
    verify_cmd->add_option("--seed", seed, "RNG seed");
    verify_cmd->add_option("--threads", threads, "Worker threads");
    verify_cmd->add_option("--tol", tol, "Residual tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(profile_args, t, tol);
        if (equiv_cmd->parsed())
            return run_equiv(profile_args, rho, tol, bits, std::nullopt);
        if (outage_cmd->parsed())
            return run_equiv(profile_args, rho, tol, bits, threshold);
        if (sim_cmd->parsed())
            return run_simulate(profile_args, rho, trials, seed, threads, tol,
                                bits, out_path);
        if (verify_cmd->parsed())
            return run_verify(family, ratio, rho, ns, trials_base, seed,
                              threads, tol);
        return emit_error(kExitUsage, "usage", "no subcommand given");
    } catch (const kroncap::IoError& e) {
        return emit_error(kExitIo, "io", e.what());
    } catch (const kroncap::NoConvergence& e) {
        return emit_error(kExitNumerical, "no_convergence", e.what());
    } catch (const kroncap::NumericalFailure& e) {
        return emit_error(kExitNumerical, "numerical_failure", e.what());
    } catch (const kroncap::InsufficientSamples& e) {
        return emit_error(kExitNumerical, "insufficient_samples", e.what());
    } catch (const kroncap::Error& e) {
        // Remaining library errors are malformed inputs.
        return emit_error(kExitUsage, "usage", e.what());
    } catch (const std::exception& e) {
        return emit_error(1, "internal", e.what());
    }
}
