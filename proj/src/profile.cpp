// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#include "kroncap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "kroncap/errors.hpp"

namespace kroncap {

ValidatedProfile validate(VarianceProfile profile) {
    if (profile.n < 1 || profile.big_n < 1) {
        throw InvalidParams("profile dimensions must be positive");
    }
    if (static_cast<int>(profile.d.size()) != profile.big_n ||
        static_cast<int>(profile.d_tilde.size()) != profile.n) {
        throw InvalidParams("profile vector lengths do not match dimensions");
    }
    for (double v : profile.d) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw RejectNegativeEntry("receive-side entry " + std::to_string(v));
        }
    }
    for (double v : profile.d_tilde) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw RejectNegativeEntry("transmit-side entry " + std::to_string(v));
        }
    }

    ValidatedProfile out;
    out.raw_ = std::move(profile);
    const double n = static_cast<double>(out.raw_.n);
    out.ratio_ = static_cast<double>(out.raw_.big_n) / n;
    out.d_max_ = *std::max_element(out.raw_.d.begin(), out.raw_.d.end());
    out.d_tilde_max_ =
        *std::max_element(out.raw_.d_tilde.begin(), out.raw_.d_tilde.end());
    out.trace_d_ =
        std::accumulate(out.raw_.d.begin(), out.raw_.d.end(), 0.0) / n;
    out.trace_d_tilde_ =
        std::accumulate(out.raw_.d_tilde.begin(), out.raw_.d_tilde.end(), 0.0) / n;

    if (out.trace_d_ <= 0.0) {
        throw RejectZeroTrace("normalized trace of D is zero");
    }
    if (out.trace_d_tilde_ <= 0.0) {
        throw RejectZeroTrace("normalized trace of D~ is zero");
    }
    return out;
}

namespace {

std::vector<double> make_family(ProfileKind kind, int len,
                                std::span<const double> params) {
    std::vector<double> v(static_cast<size_t>(len));
    switch (kind) {
        case ProfileKind::kConstant: {
            if (params.size() != 1) throw InvalidParams("constant needs 1 parameter");
            if (params[0] < 0.0) throw InvalidParams("constant level must be >= 0");
            std::fill(v.begin(), v.end(), params[0]);
            break;
        }
        case ProfileKind::kLinearRamp: {
            if (params.size() != 2) throw InvalidParams("linear-ramp needs 2 parameters");
            const double lo = params[0], hi = params[1];
            if (lo < 0.0 || hi < 0.0) throw InvalidParams("ramp endpoints must be >= 0");
            if (len == 1) {
                v[0] = lo;
            } else {
                const double step = (hi - lo) / static_cast<double>(len - 1);
                for (int i = 0; i < len; ++i) v[static_cast<size_t>(i)] = lo + step * i;
            }
            break;
        }
        case ProfileKind::kExponentialDecay: {
            if (params.size() != 1) throw InvalidParams("exponential-decay needs 1 parameter");
            const double base = params[0];
            if (base <= 0.0) throw InvalidParams("decay base must be > 0");
            double cur = 1.0;
            for (int i = 0; i < len; ++i, cur *= base) v[static_cast<size_t>(i)] = cur;
            break;
        }
        default:
            throw UnknownKind("unknown profile kind");
    }
    return v;
}

}  // namespace

VarianceProfile generate(ProfileKind kind, int big_n, int n,
                         std::span<const double> params) {
    if (big_n < 1 || n < 1) throw InvalidParams("dimensions must be >= 1");
    VarianceProfile p;
    p.n = n;
    p.big_n = big_n;
    p.d = make_family(kind, big_n, params);
    p.d_tilde = make_family(kind, n, params);
    return p;
}

VarianceProfile generate_from_spec(const std::string& spec, int big_n, int n) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t used = 0;
                params.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw InvalidParams("bad generator parameter '" + tok + "'");
            }
        }
    }

    ProfileKind kind;
    if (name == "constant") {
        kind = ProfileKind::kConstant;
    } else if (name == "linear-ramp") {
        kind = ProfileKind::kLinearRamp;
    } else if (name == "exponential-decay") {
        kind = ProfileKind::kExponentialDecay;
    } else {
        throw UnknownKind("unknown profile kind '" + name + "'");
    }
    return generate(kind, big_n, n, params);
}

std::string profile_to_json(const VarianceProfile& profile) {
    nlohmann::json j;
    j["n"] = profile.n;
    j["N"] = profile.big_n;
    j["d"] = profile.d;
    j["d_tilde"] = profile.d_tilde;
    return j.dump(2);
}

VarianceProfile profile_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("profile is not valid JSON: ") + e.what());
    }
    VarianceProfile p;
    try {
        p.n = j.at("n").get<int>();
        p.big_n = j.at("N").get<int>();
        p.d = j.at("d").get<std::vector<double>>();
        p.d_tilde = j.at("d_tilde").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("profile JSON missing field: ") + e.what());
    }
    return p;
}

VarianceProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return profile_from_json(buf.str());
}

void save_profile(const VarianceProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write profile file '" + path + "'");
    out << profile_to_json(profile) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace kroncap
