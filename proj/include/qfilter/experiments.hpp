// Filter and noise sweeps over the three named 3-qubit states, closed-form
// reference curves, and entanglement-sudden-death onset search.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfilter/channels.hpp"
#include "qfilter/measures.hpp"
#include "qfilter/states.hpp"

namespace qfilter {

enum class StateName { W3, GHZ3, WWbar3 };
enum class QubitPair { P12, P13, P23 };

inline std::string_view to_string(StateName s) {
    switch (s) {
    case StateName::W3: return "W3";
    case StateName::GHZ3: return "GHZ3";
    case StateName::WWbar3: return "WWbar3";
    }
    return "?";
}

inline std::string_view to_string(QubitPair p) {
    switch (p) {
    case QubitPair::P12: return "12";
    case QubitPair::P13: return "13";
    case QubitPair::P23: return "23";
    }
    return "?";
}

namespace detail {
inline std::string lowered(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}
} // namespace detail

inline std::optional<StateName> parse_state_name(std::string_view text) {
    const std::string s = detail::lowered(text);
    if (s == "w3" || s == "w") return StateName::W3;
    if (s == "ghz3" || s == "ghz") return StateName::GHZ3;
    if (s == "wwbar3" || s == "wwbar") return StateName::WWbar3;
    return std::nullopt;
}

inline std::optional<QubitPair> parse_pair(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ',' && ch != '-' && ch != ' ') s.push_back(ch);
    if (s == "12" || s == "21") return QubitPair::P12;
    if (s == "13" || s == "31") return QubitPair::P13;
    if (s == "23" || s == "32") return QubitPair::P23;
    return std::nullopt;
}

inline StateVector make_state(StateName s) {
    switch (s) {
    case StateName::W3: return w3();
    case StateName::GHZ3: return ghz3();
    case StateName::WWbar3: return wwbar3();
    }
    throw contract_error("make_state: unknown state");
}

struct SweepRecord {
    StateName state_name = StateName::W3;
    double k = 0.5;
    double gamma_t = 0.0;
    double c12 = 0, c13 = 0, c23 = 0;
    double g12 = 0, g13 = 0, g23 = 0;
    double success_prob = 0;
};

inline double pair_concurrence(const SweepRecord& r, QubitPair p) {
    switch (p) {
    case QubitPair::P12: return r.c12;
    case QubitPair::P13: return r.c13;
    case QubitPair::P23: return r.c23;
    }
    return 0.0;
}

/// Fills the pairwise concurrences and purities of a 3-qubit state.
inline SweepRecord measure_pairs(StateName name, double k, double gamma_t, const DensityMatrix& rho,
                                 double success_prob) {
    const DensityMatrix r12 = partial_trace(rho, {1, 2});
    const DensityMatrix r13 = partial_trace(rho, {1, 3});
    const DensityMatrix r23 = partial_trace(rho, {2, 3});
    return SweepRecord{name,
                       k,
                       gamma_t,
                       concurrence(r12),
                       concurrence(r13),
                       concurrence(r23),
                       purity(r12),
                       purity(r13),
                       purity(r23),
                       success_prob};
}

// Depolarizing noise on qubits 2 and 3 for time gamma_t, then the filter on
// qubit 1. gamma_t = 0 is the noiseless filter.
inline SweepRecord evaluate_point(StateName name, double k, double gamma_t) {
    if (!(k >= 0.0 && k <= 1.0)) throw contract_error("k = " + std::to_string(k) + " outside [0, 1]");
    if (!(gamma_t >= 0.0) || std::isinf(gamma_t))
        throw contract_error("gamma_t = " + std::to_string(gamma_t) + " must be finite and >= 0");
    DensityMatrix rho = density(make_state(name));
    if (gamma_t > 0.0) rho = apply_noise(rho, NoiseParams{gamma_t, {2, 3}});
    auto [state, prob] = apply_filter(rho, FilterParams{k, 1});
    return measure_pairs(name, k, gamma_t, state, prob);
}

inline std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw contract_error("linspace: points must be >= 1");
    if (points == 1) return {lo};
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    out.back() = hi;
    return out;
}

inline std::vector<SweepRecord> sweep_filter(StateName name, const std::vector<double>& k_grid) {
    std::vector<SweepRecord> out;
    out.reserve(k_grid.size());
    for (double k : k_grid) out.push_back(evaluate_point(name, k, 0.0));
    return out;
}

inline std::vector<SweepRecord> sweep_noise_filter(StateName name, double k, const std::vector<double>& gamma_t_grid) {
    std::vector<SweepRecord> out;
    out.reserve(gamma_t_grid.size());
    for (double gt : gamma_t_grid) {
        if (!(gt >= 0.0)) throw contract_error("gamma_t grid values must be >= 0");
        out.push_back(evaluate_point(name, k, gt));
    }
    return out;
}

struct WClosedForm {
    double c12, c23, g12, g23;
};

struct WWbarPurity {
    double g12, g23;
};

/// Reference curves for the W state filtered on qubit 1.
inline WClosedForm closed_form_w(double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw contract_error("closed_form_w: k outside [0, 1]");
    const double d = 2.0 - k;
    return {std::max(0.0, 2.0 * std::sqrt(k * (1.0 - k)) / d), std::max(0.0, 2.0 * (1.0 - k) / d),
            (2.0 - d * k) / (d * d), (4.0 - k * (8.0 - 5.0 * k)) / (d * d)};
}

/// Reference pair purities for W-Wbar filtered on qubit 1.
inline WWbarPurity closed_form_wwbar_purity(double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw contract_error("closed_form_wwbar_purity: k outside [0, 1]");
    const double q = k * (1.0 - k);
    return {(7.0 - 2.0 * q) / 9.0, (9.0 - 10.0 * q) / 9.0};
}

struct EsdOptions {
    double tol = 1e-6;
    double scan_step = 0.05;
    double horizon = 20.0;
    double persistence = 0.5; // concurrence must stay zero this long after onset
    double persistence_step = 0.01;
};

struct EsdResult {
    double gamma_t_star; // upper end of the final bracket (concurrence is zero here)
    double bracket_lo;   // concurrence positive here
    double bracket_hi;
};

// Smallest gamma_t at which the pair's concurrence reaches zero and stays
// zero over the persistence window. Grid scan to bracket, then bisection.
inline EsdResult esd_onset(StateName name, double k, QubitPair pair, const EsdOptions& opt = {}) {
    if (!(opt.tol > 0.0) || !(opt.scan_step > 0.0) || !(opt.horizon > 0.0))
        throw contract_error("esd_onset: tol, scan_step and horizon must be positive");
    auto c = [&](double gt) { return pair_concurrence(evaluate_point(name, k, gt), pair); };
    auto dead = [&](double gt) { return c(gt) == 0.0; };

    if (dead(0.0))
        throw never_entangled(std::string(to_string(name)) + " pair " + std::string(to_string(pair)) +
                              " has zero concurrence at gamma_t = 0");

    auto persists = [&](double onset) {
        const int steps = static_cast<int>(std::ceil(opt.persistence / opt.persistence_step));
        for (int j = 1; j <= steps; ++j)
            if (!dead(onset + j * opt.persistence_step)) return false;
        return true;
    };

    double last_alive = 0.0;
    const int scan_points = static_cast<int>(std::ceil(opt.horizon / opt.scan_step));
    for (int i = 1; i <= scan_points; ++i) {
        const double x = std::min(i * opt.scan_step, opt.horizon);
        if (!dead(x)) {
            last_alive = x;
            continue;
        }
        if (x - last_alive > opt.scan_step * 1.5) continue; // already rejected this zero run
        double lo = last_alive, hi = x;
        while (hi - lo >= opt.tol) {
            const double mid = 0.5 * (lo + hi);
            (dead(mid) ? hi : lo) = mid;
        }
        if (persists(hi)) return {hi, lo, hi};
    }
    throw no_death_found(std::string(to_string(name)) + " pair " + std::string(to_string(pair)) +
                         " still entangled at gamma_t = " + std::to_string(opt.horizon));
}

} // namespace qfilter
