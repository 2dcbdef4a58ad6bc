// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 pulsim developers

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pulsim/errors.hpp"

namespace pulsim {

using ordered_json = nlohmann::ordered_json;

/// Physics parameters of one transmon. Internal units are rad/ns for
/// angular frequencies and ns for times; platform files use lab units
/// (GHz, MHz, us/ns) and are converted on load.
struct QubitParams {
    int id = 0;
    double frequency = 0.0;       // rad/ns
    double anharmonicity = 0.0;   // rad/ns, negative for transmons
    std::optional<double> t1;     // ns; empty disables amplitude damping
    std::optional<double> t2;     // ns; empty disables dephasing
};

/// Exchange coupling between one unordered qubit pair.
struct Coupling {
    int a = 0;                    // a < b after normalization
    int b = 0;
    double strength = 0.0;        // g_ij, rad/ns
};

struct GateTimings {
    double gpi2_duration = 40.0;        // ns
    double cz_duration = 96.0;          // ns
    double readout_duration = 1000.0;   // ns
    double measurement_buffer = 56.0;   // ns, idle before readout
};

/// Pure-dephasing time from the (T1, T2) pair: 1/Tphi = 1/T2 - 1/(2 T1).
/// Empty result means no dephasing channel (Tphi = infinity).
/// Throws ValidationError when the implied rate is negative.
inline std::optional<double> pure_dephasing_time(const QubitParams& q) {
    if (!q.t2) return std::nullopt;
    const double inv_2t1 = q.t1 ? 1.0 / (2.0 * *q.t1) : 0.0;
    const double rate = 1.0 / *q.t2 - inv_2t1;
    constexpr double kRateFloor = 1e-15; // 1/ns; below this the channel is off
    if (rate < -kRateFloor) {
        throw ValidationError("qubit " + std::to_string(q.id) +
                              ": t2 exceeds 2*t1 (negative pure-dephasing rate)");
    }
    if (rate <= kRateFloor) return std::nullopt;
    return 1.0 / rate;
}

/// Immutable hardware description consumed by every downstream stage.
class PlatformSpec {
public:
    std::string name;
    std::vector<QubitParams> qubits;
    std::vector<Coupling> couplings;
    GateTimings timings;
    int levels_per_qubit = 3;

    int n_qubits() const { return static_cast<int>(qubits.size()); }

    /// Dimension of the truncated Hilbert space, levels^n.
    long hilbert_dim() const {
        long dim = 1;
        for (int i = 0; i < n_qubits(); ++i) dim *= levels_per_qubit;
        return dim;
    }

    bool coupled(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::any_of(couplings.begin(), couplings.end(),
                           [&](const Coupling& c) { return c.a == a && c.b == b; });
    }

    const Coupling* find_coupling(int a, int b) const {
        if (a > b) std::swap(a, b);
        for (const auto& c : couplings)
            if (c.a == a && c.b == b) return &c;
        return nullptr;
    }

    /// Neighbors of a qubit in the coupling graph, ascending.
    std::vector<int> neighbors(int q) const {
        std::vector<int> out;
        for (const auto& c : couplings) {
            if (c.a == q) out.push_back(c.b);
            if (c.b == q) out.push_back(c.a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void validate() const {
        const int n = n_qubits();
        for (int i = 0; i < n; ++i) {
            const auto& q = qubits[i];
            if (q.id != i)
                throw ValidationError("qubits[" + std::to_string(i) + "].id: ids must be 0..n-1 contiguous");
            if (q.anharmonicity == 0.0)
                throw ValidationError("qubit " + std::to_string(i) + ": anharmonicity must be nonzero");
            if (q.t1 && *q.t1 <= 0.0)
                throw ValidationError("qubit " + std::to_string(i) + ": t1 must be positive");
            if (q.t2 && *q.t2 <= 0.0)
                throw ValidationError("qubit " + std::to_string(i) + ": t2 must be positive");
            if (q.t1 && q.t2 && *q.t2 > 2.0 * *q.t1 * (1.0 + 1e-12))
                throw ValidationError("qubit " + std::to_string(i) + ": t2 exceeds 2*t1");
        }
        std::vector<std::pair<int, int>> seen;
        for (const auto& c : couplings) {
            if (c.a == c.b)
                throw ValidationError("couplings: pair members must be distinct");
            if (c.a < 0 || c.b < 0 || c.a >= n || c.b >= n)
                throw ValidationError("couplings: qubit id out of range");
            auto key = std::minmax(c.a, c.b);
            if (std::find(seen.begin(), seen.end(), key) != seen.end())
                throw ValidationError("couplings: duplicate pair (" + std::to_string(key.first) + "," +
                                      std::to_string(key.second) + ")");
            seen.push_back(key);
        }
        if (levels_per_qubit < 2)
            throw ValidationError("levels_per_qubit must be >= 2");
        if (timings.gpi2_duration < 0 || timings.cz_duration < 0 || timings.readout_duration < 0 ||
            timings.measurement_buffer < 0)
            throw ValidationError("timings: durations must be >= 0");
    }
};

namespace detail {

inline double require_number(const ordered_json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError(ctx + ": missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

// Time fields carry an explicit unit suffix: "<name>_us" or "<name>_ns".
inline std::optional<double> optional_time_ns(const ordered_json& j, const std::string& base,
                                              const std::string& ctx) {
    const bool has_us = j.contains(base + "_us");
    const bool has_ns = j.contains(base + "_ns");
    if (has_us && has_ns)
        throw ParseError(ctx + ": both '" + base + "_us' and '" + base + "_ns' given");
    if (has_us) return j[base + "_us"].get<double>() * 1000.0;
    if (has_ns) return j[base + "_ns"].get<double>();
    return std::nullopt;
}

} // namespace detail

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Parse a platform document. File units: frequency_ghz, anharmonicity_mhz,
/// t1_us / t1_ns, t2_us / t2_ns, coupling strength_mhz, timings in ns.
inline PlatformSpec platform_from_json(const ordered_json& doc) {
    PlatformSpec p;
    if (!doc.is_object()) throw ParseError("platform: top level must be a JSON object");
    p.name = doc.value("name", std::string("unnamed"));
    p.levels_per_qubit = doc.value("levels_per_qubit", 3);

    if (!doc.contains("qubits") || !doc["qubits"].is_array())
        throw ParseError("platform: missing 'qubits' array");
    int idx = 0;
    for (const auto& jq : doc["qubits"]) {
        const std::string ctx = "qubits[" + std::to_string(idx) + "]";
        QubitParams q;
        q.id = jq.value("id", idx);
        q.frequency = kTwoPi * detail::require_number(jq, "frequency_ghz", ctx);   // GHz -> rad/ns
        q.anharmonicity = kTwoPi * 1e-3 * detail::require_number(jq, "anharmonicity_mhz", ctx);
        q.t1 = detail::optional_time_ns(jq, "t1", ctx);
        q.t2 = detail::optional_time_ns(jq, "t2", ctx);
        p.qubits.push_back(q);
        ++idx;
    }
    if (doc.contains("couplings")) {
        for (const auto& jc : doc["couplings"]) {
            if (!jc.contains("qubits") || !jc["qubits"].is_array() || jc["qubits"].size() != 2)
                throw ParseError("couplings: each entry needs a 2-element 'qubits' array");
            Coupling c;
            c.a = jc["qubits"][0].get<int>();
            c.b = jc["qubits"][1].get<int>();
            if (c.a > c.b) std::swap(c.a, c.b);
            c.strength = kTwoPi * 1e-3 * jc.value("strength_mhz", 0.0);
            p.couplings.push_back(c);
        }
    }
    if (doc.contains("timings")) {
        const auto& jt = doc["timings"];
        p.timings.gpi2_duration = jt.value("gpi2_duration_ns", p.timings.gpi2_duration);
        p.timings.cz_duration = jt.value("cz_duration_ns", p.timings.cz_duration);
        p.timings.readout_duration = jt.value("readout_duration_ns", p.timings.readout_duration);
        p.timings.measurement_buffer = jt.value("measurement_buffer_ns", p.timings.measurement_buffer);
    }
    p.validate();
    return p;
}

/// Serialize back to the file schema. platform_from_json(platform_to_json(p))
/// is field-for-field equal to p.
inline ordered_json platform_to_json(const PlatformSpec& p) {
    ordered_json doc;
    doc["name"] = p.name;
    doc["levels_per_qubit"] = p.levels_per_qubit;
    doc["qubits"] = ordered_json::array();
    for (const auto& q : p.qubits) {
        ordered_json jq;
        jq["id"] = q.id;
        jq["frequency_ghz"] = q.frequency / kTwoPi;
        jq["anharmonicity_mhz"] = q.anharmonicity / (kTwoPi * 1e-3);
        if (q.t1) jq["t1_ns"] = *q.t1;
        if (q.t2) jq["t2_ns"] = *q.t2;
        doc["qubits"].push_back(jq);
    }
    doc["couplings"] = ordered_json::array();
    for (const auto& c : p.couplings) {
        ordered_json jc;
        jc["qubits"] = {c.a, c.b};
        jc["strength_mhz"] = c.strength / (kTwoPi * 1e-3);
        doc["couplings"].push_back(jc);
    }
    doc["timings"] = {{"gpi2_duration_ns", p.timings.gpi2_duration},
                      {"cz_duration_ns", p.timings.cz_duration},
                      {"readout_duration_ns", p.timings.readout_duration},
                      {"measurement_buffer_ns", p.timings.measurement_buffer}};
    return doc;
}

inline PlatformSpec load_platform(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open platform file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("platform JSON: ") + e.what());
    }
    return platform_from_json(doc);
}

} // namespace pulsim
