// SPDX-License-Identifier: MIT
/**
 * @file pseudopotential.hpp
 * @brief Sagdeev pseudopotential of the travelling-wave reduction.
 *
 * In the frame xi = x - Lambda t with v -> v0 at both infinities the
 * profile obeys the energy relation (1/2) v'^2 + S(v) = 0, where
 *
 *     S(v) = (Lambda - v v0^2) (v - v0)^2 / (2 v v0^2).
 *
 * S has a double root at v0 (the background) and a simple root at
 * Lambda / v0^2 (the bottom of the depression). A localized solution needs
 * S''(v0) = (Lambda - v0^3)/v0^3 < 0 together with a positive turning value.
 */

#pragma once

#include "fhd/core_model.hpp"
#include "fhd/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fhd {

/// |Lambda - v0^3| below this fraction of v0^3 is treated as the triple-root case.
inline constexpr double kDegeneracyTolerance = 1e-10;

inline double eval_S(double v, const SolitonParams& p) {
    if (!(v > 0.0)) throw DomainError("pseudopotential is singular for v <= 0");
    const double v02 = p.v0 * p.v0;
    const double d = v - p.v0;
    return (p.lambda_speed - v * v02) * d * d / (2.0 * v * v02);
}

/// Conditions for a localized solution, with finite-difference evidence.
struct ExistenceDiagnostic {
    bool admissible = false;
    double S_at_v0 = 0.0;
    double dS_at_v0 = 0.0;    ///< Richardson-extrapolated central difference
    double d2S_at_v0 = 0.0;   ///< Richardson-extrapolated central difference
    double d2S_exact = 0.0;   ///< (Lambda - v0^3) / v0^3
    std::string message;
};

namespace detail {

// One Richardson step on a second-order central difference.
template <typename Fn>
double richardson(Fn&& central, double h) {
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace detail

inline ExistenceDiagnostic existence_check(const SolitonParams& p) {
    p.validate();
    ExistenceDiagnostic d;
    const double v0 = p.v0;
    const double v03 = v0 * v0 * v0;
    const double h = 1e-5 * v0;
    auto S = [&](double v) { return eval_S(v, p); };

    d.S_at_v0 = S(v0);
    d.dS_at_v0 = detail::richardson([&](double s) { return (S(v0 + s) - S(v0 - s)) / (2.0 * s); }, h);
    d.d2S_at_v0 = detail::richardson(
        [&](double s) { return (S(v0 + s) - 2.0 * S(v0) + S(v0 - s)) / (s * s); }, h);
    d.d2S_exact = (p.lambda_speed - v03) / v03;

    if (std::abs(p.lambda_speed - v03) < kDegeneracyTolerance * v03) {
        d.message = "degenerate: Lambda = v0^3 gives a triple root at v0, no soliton";
    } else if (p.lambda_speed <= 0.0) {
        d.message = "Lambda <= 0: no positive turning point, orbit reaches v = 0";
    } else if (p.lambda_speed > v03) {
        d.message = "Lambda > v0^3: S''(v0) > 0, background is not a saddle";
    } else {
        d.admissible = true;
        d.message = "0 < Lambda < v0^3: localized depression exists";
    }
    return d;
}

inline void require_existence(const SolitonParams& p) {
    const auto d = existence_check(p);
    if (!d.admissible) {
        throw DomainError("no soliton for Lambda=" + std::to_string(p.lambda_speed) +
                          ", v0=" + std::to_string(p.v0) + ": " + d.message);
    }
}

struct TurningPoints {
    double v_equilibrium = 0.0;  ///< double root, v0
    double v_turn = 0.0;         ///< simple root, Lambda / v0^2
    double v_turn_bisected = 0.0;
    bool degenerate = false;
};

/**
 * Roots of S. The simple root is computed from the factorization and then
 * re-located by bisection on eval_S alone; disagreement beyond 1e-12 is a
 * numerical error.
 */
inline TurningPoints turning_points(const SolitonParams& p) {
    p.validate();
    const double v03 = p.v0 * p.v0 * p.v0;
    TurningPoints tp;
    tp.v_equilibrium = p.v0;
    tp.v_turn = p.turning_value();
    if (std::abs(p.lambda_speed - v03) < kDegeneracyTolerance * v03) {
        tp.degenerate = true;
        tp.v_turn_bisected = tp.v_turn;
        return tp;
    }
    require_existence(p);

    auto S = [&](double v) { return eval_S(v, p); };
    // S -> +inf as v -> 0+ and S < 0 just below v0; walk outwards until the
    // signs are established.
    double lo = 0.5 * p.v0;
    while (!(S(lo) > 0.0)) {
        lo *= 0.5;
        if (lo < 1e-300) throw NumericalError("failed to bracket turning point from below");
    }
    double gap = 0.5 * p.v0;
    double hi = p.v0 - gap;
    while (!(S(hi) < 0.0)) {
        gap *= 0.5;
        hi = p.v0 - gap;
        if (gap < 1e-15 * p.v0) throw NumericalError("failed to bracket turning point from above");
    }
    std::uintmax_t max_iter = 200;
    const auto bracket = boost::math::tools::bisect(
        S, lo, hi, [](double a, double b) { return std::abs(b - a) <= 1e-14; }, max_iter);
    tp.v_turn_bisected = 0.5 * (bracket.first + bracket.second);
    if (std::abs(tp.v_turn_bisected - tp.v_turn) > 1e-12) {
        throw NumericalError("bisected turning point " + std::to_string(tp.v_turn_bisected) +
                             " disagrees with Lambda/v0^2 = " + std::to_string(tp.v_turn));
    }
    return tp;
}

/// Both branches of v' = +-sqrt(-2 S(v)) on the soliton orbit.
inline std::pair<double, double> phase_branch(double v, const SolitonParams& p) {
    const double s = eval_S(v, p);
    if (s > 0.0) {
        throw DomainError("v=" + std::to_string(v) + " lies outside the orbit (S > 0)");
    }
    const double r = std::sqrt(-2.0 * s);
    return {r, -r};
}

struct PotentialSample {
    double v;
    double S;
};

struct PhaseSample {
    double v;
    double vp_plus;
    double vp_minus;
};

/// S(v) on n equally spaced points of [v_lo, v_hi].
inline std::vector<PotentialSample> potential_table(const SolitonParams& p, double v_lo,
                                                    double v_hi, std::size_t n) {
    if (!(v_lo > 0.0) || !(v_hi > v_lo) || n < 2) {
        throw DomainError("potential table needs 0 < v_lo < v_hi and n >= 2");
    }
    std::vector<PotentialSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = v_lo + (v_hi - v_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = {v, eval_S(v, p)};
    }
    return out;
}

/// Phase portrait of the homoclinic orbit, sampled on [v_turn, v0].
inline std::vector<PhaseSample> phase_table(const SolitonParams& p, std::size_t n) {
    require_existence(p);
    if (n < 2) throw DomainError("phase table needs n >= 2");
    const double a = p.turning_value();
    std::vector<PhaseSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = a + (p.v0 - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        if (i == n - 1) v = p.v0;
        // Round-off can leave S a hair above zero at the two roots.
        const double s = std::min(eval_S(v, p), 0.0);
        const double r = std::sqrt(-2.0 * s);
        out[i] = {v, r, -r};
    }
    return out;
}

}  // namespace fhd
