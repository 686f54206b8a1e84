#pragma once
// Closed-form exponent tuples for the twisted-Duhamel contraction scheme and
// exact validation of every admissibility hypothesis used by the estimates:
//
//   decay embedding       s >= 1-1/p-1/r,  q(1/p-1/2) < 1        (L^q L^r vs twisted sup)
//   inhomogeneous pair    2+2/q+1/r = 2/gamma+1/rho, 1/q+1/r < 1/2, 3/2-1/rho < 1/gamma < 1
//   homogeneous pair      2/q+1/r = 1/p,  1/q+1/r < 1/2
//   Fourier-side pair     2/q+1/r = 1/p,  0 < 1/q < min(1/2-1/r, 1/4),  4/3 < p <= 2
//
// Everything runs in exact rational arithmetic; margins at the boundary are
// exactly 0 and strict hypotheses fail there. Exponents are carried as
// reciprocals so q = infinity is the honest value 0 rather than a sentinel.

#include <optional>
#include <string>
#include <vector>

#include "nls/rational.hpp"

namespace nls::exponents {

struct ExponentTuple {
    Rational p, s;
    Rational inv_q, inv_r, inv_gamma, inv_rho;
    std::optional<Rational> inv_sigma;  // weighted-Duhamel time exponent (main tuple)
    std::optional<Rational> inv_kappa;  // fractional-Leibniz companion (main tuple)
    std::optional<Rational> delta;      // slack parameter (uniqueness tuples)
};

struct Condition {
    std::string name;    // which hypothesis
    std::string detail;  // the inequality with both sides evaluated
    Rational margin;     // signed distance to the boundary (violation < 0)
    bool strict = true;  // strict hypotheses fail at margin 0
    bool pass = false;
};

struct ValidationReport {
    std::vector<Condition> conditions;
    bool overall = true;

    const Condition* find(const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Admissible ranges 2 <= q,r <= infinity, 1 < gamma,rho <= 2, scaling
/// 2+2/q+1/r = 2/gamma+1/rho, 1/q+1/r < 1/2, 3/2-1/rho < 1/gamma < 1.
ValidationReport validate_inhomogeneous_strichartz(const Rational& inv_q, const Rational& inv_r,
                                                   const Rational& inv_gamma,
                                                   const Rational& inv_rho);

/// 2 <= q,r <= infinity, 2/q+1/r = 1/p, 1/q+1/r < 1/2.
ValidationReport validate_homogeneous_strichartz(const Rational& p, const Rational& inv_q,
                                                 const Rational& inv_r);

/// 4/3 < p <= 2, 2/q+1/r = 1/p, 0 < 1/q < min(1/2-1/r, 1/4).
ValidationReport validate_fefferman_stein(const Rational& p, const Rational& inv_q,
                                          const Rational& inv_r);

/// 1 <= p <= 2, s >= 0, 2 <= q,r <= infinity, s >= 1-1/p-1/r,
/// q(1/p-1/2) < 1 with the convention infinity*0 = 0.
ValidationReport validate_decay_embedding(const Rational& p, const Rational& s,
                                          const Rational& inv_q, const Rational& inv_r);

/// The workhorse tuple:
///   1/q = 1/(2p)-1/8-s/4   1/r = (1+2s)/4   1/rho = 3/4-s/2
///   1/gamma = 5/8+s/4+1/(2p)   1/sigma = 9/8-1/(2p)+s/4 (= 1-1/q)
///   1/kappa = 1/rho-1/r (= 1/2-s)
/// Box: 4/3 < p <= 2, 0 < s < 3/2-2/p. Outside -> ValidationError naming the
/// violated bound.
ExponentTuple main_exponents(const Rational& p, const Rational& s);

/// The three gates the main tuple must clear, as (label, report) pairs:
/// inhomogeneous (q,r,gamma,rho), homogeneous (p,q,r), and the Fourier-side
/// condition on the dual weighted-Duhamel pair (sigma', rho').
std::vector<std::pair<std::string, ValidationReport>> validate_main_tuple(const ExponentTuple& t);

/// Uniqueness tuple, 4/3 < p <= 3/2:
///   1/q = 1/p-1/2+delta/2   1/r = 1-1/p-delta   1/rho = 3-3/p-3delta (= 3/r)
///   1/gamma = 2/p-1/2+(3/2)delta,  s = delta.
/// Throws ValidationError when delta is infeasible (report in the message).
ExponentTuple uniqueness_exponents_case1(const Rational& p, const Rational& delta);

enum class Case2Variant { paper_literal, consistent };

/// Uniqueness tuples, 3/2 < p <= 2, s = 2/3-1/p+delta:
///   shared: 1/q = 1/6+delta/2, 1/r = 1/3-delta
///   paper-literal: 1/rho = 1-(3/2)delta, 1/gamma = 5/6+(3/4)delta
///   consistent:    1/rho = 1-3delta (= 3/r), 1/gamma = 5/6+(3/2)delta
/// The two closures disagree: the stated coefficient 1-(3/2)delta breaks the
/// r-scaling identity 1/rho = 3/r, which forces 1-3delta instead. Both
/// candidates are returned, each with its own inhomogeneous-validation
/// report, rather than silently picking one.
struct Case2Result {
    ExponentTuple paper_literal;
    ValidationReport paper_literal_report;
    ExponentTuple consistent;
    ValidationReport consistent_report;
    Rational delta;
};
Case2Result uniqueness_exponents_case2(const Rational& p, const Rational& s);

/// Critical threshold s_c(p) = max(0, 2/3-1/p) for p in [1,2].
Rational threshold_sc(const Rational& p);

struct DeltaInterval {
    Rational lo, hi;
    bool lo_open = true, hi_open = true;
    bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
    bool contains(const Rational& d) const {
        if (d < lo || (d == lo && lo_open)) return false;
        if (d > hi || (d == hi && hi_open)) return false;
        return true;
    }
};

/// Exact feasibility interval of delta for the named uniqueness case
/// (all validators pass on the case's tuple). Case 2 needs a variant choice.
DeltaInterval feasible_delta_range(const Rational& p, int case_id,
                                   Case2Variant variant = Case2Variant::paper_literal);

}  // namespace nls::exponents
