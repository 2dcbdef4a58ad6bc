// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 pulsim developers

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pulsim/errors.hpp"

namespace pulsim {

using complexd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

enum class GateKind {
    I, X, Y, Z, H, S, T,
    RX, RY, RZ, U3,
    GPI2,
    CNOT, CZ, CP, SWAP,
    M,
};

inline const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::I: return "I";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::T: return "T";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::U3: return "U3";
        case GateKind::GPI2: return "GPI2";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::CP: return "CP";
        case GateKind::SWAP: return "SWAP";
        case GateKind::M: return "M";
    }
    return "?";
}

inline std::optional<GateKind> gate_kind_from_string(const std::string& s) {
    static const std::pair<const char*, GateKind> table[] = {
        {"I", GateKind::I},     {"X", GateKind::X},       {"Y", GateKind::Y},
        {"Z", GateKind::Z},     {"H", GateKind::H},       {"S", GateKind::S},
        {"T", GateKind::T},     {"RX", GateKind::RX},     {"RY", GateKind::RY},
        {"RZ", GateKind::RZ},   {"U3", GateKind::U3},     {"GPI2", GateKind::GPI2},
        {"CNOT", GateKind::CNOT}, {"CZ", GateKind::CZ},   {"CP", GateKind::CP},
        {"SWAP", GateKind::SWAP}, {"M", GateKind::M},
    };
    for (const auto& [name, kind] : table)
        if (s == name) return kind;
    return std::nullopt;
}

inline int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CP:
        case GateKind::SWAP:
            return 2;
        default:
            return 1;
    }
}

inline int gate_param_count(GateKind k) {
    switch (k) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::GPI2:
        case GateKind::CP:
            return 1;
        case GateKind::U3:
            return 3;
        default:
            return 0;
    }
}

/// One gate application. For M, `clbit` names the classical target.
struct Gate {
    GateKind kind = GateKind::I;
    std::vector<double> params;
    std::vector<int> qubits;
    std::optional<int> clbit;

    Gate() = default;
    Gate(GateKind k, std::vector<int> qs, std::vector<double> ps = {})
        : kind(k), params(std::move(ps)), qubits(std::move(qs)) {}

    static Gate measure(int qubit, int bit) {
        Gate g(GateKind::M, {qubit});
        g.clbit = bit;
        return g;
    }

    bool operator==(const Gate& o) const {
        return kind == o.kind && params == o.params && qubits == o.qubits && clbit == o.clbit;
    }

    void validate() const {
        if (static_cast<int>(qubits.size()) != gate_arity(kind))
            throw ValidationError(std::string(to_string(kind)) + ": wrong qubit count");
        if (static_cast<int>(params.size()) != gate_param_count(kind))
            throw ValidationError(std::string(to_string(kind)) + ": wrong parameter count");
        for (double a : params)
            if (!std::isfinite(a)) throw ValidationError(std::string(to_string(kind)) + ": non-finite angle");
        if (gate_arity(kind) == 2 && qubits[0] == qubits[1])
            throw ValidationError(std::string(to_string(kind)) + ": qubits must be distinct");
        if (kind == GateKind::M && !clbit)
            throw ValidationError("M: missing classical target");
    }
};

/// Ordered gate list over a single qubit register. Qubit 0 is the most
/// significant bit in basis-state labels |q0 q1 ... q_{n-1}>.
struct Circuit {
    int n_qubits = 0;
    int n_clbits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int nq, int nc = 0) : n_qubits(nq), n_clbits(nc) {}

    Circuit& add(Gate g) {
        gates.push_back(std::move(g));
        return *this;
    }

    bool operator==(const Circuit& o) const {
        return n_qubits == o.n_qubits && n_clbits == o.n_clbits && gates == o.gates;
    }

    void validate() const {
        std::vector<bool> measured(n_qubits, false);
        for (const auto& g : gates) {
            g.validate();
            for (int q : g.qubits) {
                if (q < 0 || q >= n_qubits)
                    throw ValidationError(std::string(to_string(g.kind)) + ": qubit index out of range");
                if (measured[q])
                    throw ValidationError("gate after measurement on qubit " + std::to_string(q) +
                                          " (no mid-circuit measurement)");
            }
            if (g.kind == GateKind::M) {
                if (*g.clbit < 0 || *g.clbit >= n_clbits)
                    throw ValidationError("M: classical bit out of range");
                measured[g.qubits[0]] = true;
            }
        }
    }
};

/// Circuit with measurements removed (for unitary comparison).
inline Circuit strip_measurements(const Circuit& c) {
    Circuit out(c.n_qubits, c.n_clbits);
    for (const auto& g : c.gates)
        if (g.kind != GateKind::M) out.gates.push_back(g);
    return out;
}

// ---------------------------------------------------------------------------
// Gate matrices and the brute-force unitary oracle
// ---------------------------------------------------------------------------

/// Defining matrix of a gate on its own qubits (first listed qubit is the
/// most significant bit of the local index). M has no unitary.
inline CMatrix gate_matrix(const Gate& g) {
    using namespace std::complex_literals;
    const double s2 = 1.0 / std::sqrt(2.0);
    auto p = [&](int i) { return g.params[i]; };
    CMatrix m;
    switch (g.kind) {
        case GateKind::I: return CMatrix::Identity(2, 2);
        case GateKind::X:
            m = CMatrix::Zero(2, 2);
            m(0, 1) = 1; m(1, 0) = 1;
            return m;
        case GateKind::Y:
            m = CMatrix::Zero(2, 2);
            m(0, 1) = -1i; m(1, 0) = 1i;
            return m;
        case GateKind::Z:
            m = CMatrix::Identity(2, 2);
            m(1, 1) = -1;
            return m;
        case GateKind::H:
            m.resize(2, 2);
            m << s2, s2, s2, -s2;
            return m;
        case GateKind::S:
            m = CMatrix::Identity(2, 2);
            m(1, 1) = 1i;
            return m;
        case GateKind::T:
            m = CMatrix::Identity(2, 2);
            m(1, 1) = std::exp(1i * (kPi / 4));
            return m;
        case GateKind::RX: {
            const double c = std::cos(p(0) / 2), s = std::sin(p(0) / 2);
            m.resize(2, 2);
            m << c, -1i * s, -1i * s, c;
            return m;
        }
        case GateKind::RY: {
            const double c = std::cos(p(0) / 2), s = std::sin(p(0) / 2);
            m.resize(2, 2);
            m << c, -s, s, c;
            return m;
        }
        case GateKind::RZ:
            m = CMatrix::Zero(2, 2);
            m(0, 0) = std::exp(-1i * (p(0) / 2));
            m(1, 1) = std::exp(1i * (p(0) / 2));
            return m;
        case GateKind::U3: {
            const double th = p(0), ph = p(1), la = p(2);
            const double c = std::cos(th / 2), s = std::sin(th / 2);
            m.resize(2, 2);
            m << c, -std::exp(1i * la) * s, std::exp(1i * ph) * s, std::exp(1i * (ph + la)) * c;
            return m;
        }
        case GateKind::GPI2: {
            const double phi = p(0);
            m.resize(2, 2);
            m << s2, -1i * std::exp(-1i * phi) * s2, -1i * std::exp(1i * phi) * s2, s2;
            return m;
        }
        case GateKind::CNOT:
            m = CMatrix::Zero(4, 4);
            m(0, 0) = 1; m(1, 1) = 1; m(2, 3) = 1; m(3, 2) = 1;
            return m;
        case GateKind::CZ:
            m = CMatrix::Identity(4, 4);
            m(3, 3) = -1;
            return m;
        case GateKind::CP:
            m = CMatrix::Identity(4, 4);
            m(3, 3) = std::exp(1i * p(0));
            return m;
        case GateKind::SWAP:
            m = CMatrix::Zero(4, 4);
            m(0, 0) = 1; m(1, 2) = 1; m(2, 1) = 1; m(3, 3) = 1;
            return m;
        case GateKind::M:
            throw ValidationError("M has no unitary");
    }
    throw ValidationError("unknown gate kind");
}

namespace detail {

inline int bit_of(long index, int qubit, int n) {
    return static_cast<int>((index >> (n - 1 - qubit)) & 1);
}

} // namespace detail

/// Embed a 1- or 2-qubit gate matrix into the full 2^n space.
inline CMatrix embed_gate(const CMatrix& local, const std::vector<int>& qubits, int n) {
    const long dim = 1L << n;
    const int k = static_cast<int>(qubits.size());
    CMatrix full = CMatrix::Zero(dim, dim);
    for (long col = 0; col < dim; ++col) {
        int lc = 0;
        for (int i = 0; i < k; ++i) lc = (lc << 1) | detail::bit_of(col, qubits[i], n);
        for (int lr = 0; lr < (1 << k); ++lr) {
            const complexd amp = local(lr, lc);
            if (amp == complexd(0.0, 0.0)) continue;
            long row = col;
            for (int i = 0; i < k; ++i) {
                const long mask = 1L << (n - 1 - qubits[i]);
                const int bit = (lr >> (k - 1 - i)) & 1;
                row = bit ? (row | mask) : (row & ~mask);
            }
            full(row, col) += amp;
        }
    }
    return full;
}

inline constexpr int kUnitaryOracleMaxQubits = 6;

/// Brute-force product of embedded gate matrices, first gate applied first
/// (rightmost factor). Measurements must be stripped beforehand.
inline CMatrix circuit_unitary(const Circuit& c) {
    if (c.n_qubits > kUnitaryOracleMaxQubits)
        throw ValidationError("circuit_unitary: oracle capped at " +
                              std::to_string(kUnitaryOracleMaxQubits) + " qubits");
    const long dim = 1L << c.n_qubits;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::M)
            throw ValidationError("circuit_unitary: strip measurements first");
        u = embed_gate(gate_matrix(g), g.qubits, c.n_qubits) * u;
    }
    return u;
}

/// Permutation operator moving logical wire l to physical wire perm[l]:
/// P |x_0 x_1 ...> = |y>, y_{perm[l]} = x_l.
inline CMatrix permutation_unitary(const std::vector<int>& perm, int n) {
    const long dim = 1L << n;
    CMatrix p = CMatrix::Zero(dim, dim);
    for (long col = 0; col < dim; ++col) {
        long row = 0;
        for (int l = 0; l < n; ++l)
            if (detail::bit_of(col, l, n)) row |= 1L << (n - 1 - perm[l]);
        p(row, col) = 1.0;
    }
    return p;
}

/// Frobenius distance min over unit-modulus lambda of ||u - lambda v||_F.
/// lambda is taken from the trace of v^dag u, falling back to the
/// largest-magnitude entry when the trace vanishes.
inline double phase_distance(const CMatrix& u, const CMatrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw ValidationError("phase_distance: dimension mismatch");
    const CMatrix m = v.adjoint() * u;
    complexd lambda = m.trace();
    if (std::abs(lambda) < 1e-12 * static_cast<double>(m.rows())) {
        Eigen::Index r = 0, c = 0;
        m.cwiseAbs().maxCoeff(&r, &c);
        lambda = m(r, c);
    }
    if (std::abs(lambda) == 0.0) return (u - v).norm();
    lambda /= std::abs(lambda);
    return (u - lambda * v).norm();
}

inline bool equivalent_up_to_global_phase(const CMatrix& u, const CMatrix& v, double tol) {
    return phase_distance(u, v) < tol;
}

// ---------------------------------------------------------------------------
// Circuit builders
// ---------------------------------------------------------------------------

/// Standard QFT: for j in 0..n-1: H(j); then CP(pi/2^{k-j}) with control k,
/// target j for k > j; optionally the final qubit-reversal SWAP layer.
inline Circuit build_qft(int n, bool include_final_swaps = true) {
    if (n < 1) throw ValidationError("build_qft: n must be >= 1");
    Circuit c(n);
    for (int j = 0; j < n; ++j) {
        c.add(Gate(GateKind::H, {j}));
        for (int k = j + 1; k < n; ++k)
            c.add(Gate(GateKind::CP, {k, j}, {kPi / std::pow(2.0, k - j)}));
    }
    if (include_final_swaps)
        for (int i = 0; i < n / 2; ++i) c.add(Gate(GateKind::SWAP, {i, n - 1 - i}));
    return c;
}

/// DFT matrix with entries e^{2 pi i jk / 2^n} / sqrt(2^n); the reference
/// unitary for build_qft with final swaps.
inline CMatrix dft_matrix(int n) {
    using namespace std::complex_literals;
    const long dim = 1L << n;
    CMatrix f(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (long j = 0; j < dim; ++j)
        for (long k = 0; k < dim; ++k)
            f(j, k) = norm * std::exp(2i * kPi * static_cast<double>(j * k) / static_cast<double>(dim));
    return f;
}

/// Seeded random circuit over the full supported kind set (no measurements).
inline Circuit random_circuit(int n_qubits, int depth, std::uint64_t seed) {
    static const GateKind kinds[] = {GateKind::I,  GateKind::X,    GateKind::Y,  GateKind::Z,
                                     GateKind::H,  GateKind::S,    GateKind::T,  GateKind::RX,
                                     GateKind::RY, GateKind::RZ,   GateKind::U3, GateKind::GPI2,
                                     GateKind::CNOT, GateKind::CZ, GateKind::CP, GateKind::SWAP};
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    auto pick_int = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
    Circuit c(n_qubits);
    for (int i = 0; i < depth; ++i) {
        GateKind k = kinds[pick_int(static_cast<int>(std::size(kinds)))];
        if (n_qubits < 2 && gate_arity(k) == 2) k = GateKind::H;
        std::vector<int> qs;
        if (gate_arity(k) == 1) {
            qs = {pick_int(n_qubits)};
        } else {
            int a = pick_int(n_qubits);
            int b = pick_int(n_qubits - 1);
            if (b >= a) ++b;
            qs = {a, b};
        }
        std::vector<double> ps;
        for (int j = 0; j < gate_param_count(k); ++j) ps.push_back(uniform(-2.0 * kPi, 2.0 * kPi));
        c.add(Gate(k, qs, ps));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Circuit JSON (the inter-stage artifact format)
// ---------------------------------------------------------------------------

inline ordered_json circuit_to_json(const Circuit& c) {
    ordered_json doc;
    doc["n_qubits"] = c.n_qubits;
    doc["n_clbits"] = c.n_clbits;
    doc["gates"] = ordered_json::array();
    for (const auto& g : c.gates) {
        ordered_json jg;
        jg["kind"] = to_string(g.kind);
        jg["qubits"] = g.qubits;
        jg["params"] = g.params;
        if (g.clbit) jg["clbit"] = *g.clbit;
        doc["gates"].push_back(jg);
    }
    return doc;
}

inline Circuit circuit_from_json(const ordered_json& doc) {
    Circuit c;
    c.n_qubits = doc.value("n_qubits", 0);
    c.n_clbits = doc.value("n_clbits", 0);
    if (doc.contains("gates")) {
        for (const auto& jg : doc["gates"]) {
            const std::string name = jg.value("kind", std::string());
            auto kind = gate_kind_from_string(name);
            if (!kind) throw ParseError("circuit JSON: unknown gate kind '" + name + "'");
            Gate g;
            g.kind = *kind;
            g.qubits = jg.value("qubits", std::vector<int>{});
            g.params = jg.value("params", std::vector<double>{});
            if (jg.contains("clbit")) g.clbit = jg["clbit"].get<int>();
            c.gates.push_back(std::move(g));
        }
    }
    c.validate();
    return c;
}

} // namespace pulsim
