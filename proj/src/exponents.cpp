#include "nls/exponents.hpp"

#include <algorithm>
#include <sstream>

namespace nls::exponents {

namespace {

const Rational kZero(0);
const Rational kHalf(1, 2);
const Rational kOne(1);

Condition strict_less(std::string name, const Rational& lhs, const Rational& rhs) {
    Condition c;
    c.name = std::move(name);
    c.detail = lhs.str() + " < " + rhs.str();
    c.margin = rhs - lhs;
    c.strict = true;
    c.pass = c.margin.positive();
    return c;
}

Condition less_eq(std::string name, const Rational& lhs, const Rational& rhs) {
    Condition c;
    c.name = std::move(name);
    c.detail = lhs.str() + " <= " + rhs.str();
    c.margin = rhs - lhs;
    c.strict = false;
    c.pass = !c.margin.negative();
    return c;
}

Condition equals(std::string name, const Rational& lhs, const Rational& rhs) {
    Condition c;
    c.name = std::move(name);
    c.detail = lhs.str() + " = " + rhs.str();
    const Rational d = lhs - rhs;
    c.margin = d.negative() ? d : -d;  // -|lhs-rhs|, 0 iff equal
    c.strict = false;
    c.pass = d.is_zero();
    return c;
}

void finish(ValidationReport& rep) {
    rep.overall = true;
    for (const auto& c : rep.conditions) rep.overall = rep.overall && c.pass;
}

// 2 <= e <= infinity in reciprocal form: 0 <= inv <= 1/2
void range_2_inf(ValidationReport& rep, const std::string& label, const Rational& inv) {
    rep.conditions.push_back(less_eq(label + " >= 2", inv, kHalf));
    rep.conditions.push_back(less_eq(label + " <= inf", kZero, inv));
}

// 1 < e <= 2 in reciprocal form: 1/2 <= inv < 1
void range_1_2(ValidationReport& rep, const std::string& label, const Rational& inv) {
    rep.conditions.push_back(strict_less(label + " > 1", inv, kOne));
    rep.conditions.push_back(less_eq(label + " <= 2", kHalf, inv));
}

std::string report_text(const ValidationReport& rep) {
    std::ostringstream os;
    for (const auto& c : rep.conditions)
        if (!c.pass) os << " [" << c.name << ": " << c.detail << ", margin " << c.margin.str() << "]";
    return os.str();
}

}  // namespace

ValidationReport validate_inhomogeneous_strichartz(const Rational& inv_q, const Rational& inv_r,
                                                   const Rational& inv_gamma,
                                                   const Rational& inv_rho) {
    ValidationReport rep;
    range_2_inf(rep, "q", inv_q);
    range_2_inf(rep, "r", inv_r);
    range_1_2(rep, "gamma", inv_gamma);
    range_1_2(rep, "rho", inv_rho);
    rep.conditions.push_back(equals("scaling 2+2/q+1/r = 2/gamma+1/rho",
                                    Rational(2) + Rational(2) * inv_q + inv_r,
                                    Rational(2) * inv_gamma + inv_rho));
    rep.conditions.push_back(strict_less("1/q+1/r < 1/2", inv_q + inv_r, kHalf));
    rep.conditions.push_back(
        strict_less("3/2-1/rho < 1/gamma", Rational(3, 2) - inv_rho, inv_gamma));
    finish(rep);
    return rep;
}

ValidationReport validate_homogeneous_strichartz(const Rational& p, const Rational& inv_q,
                                                 const Rational& inv_r) {
    ValidationReport rep;
    rep.conditions.push_back(strict_less("p > 1", kOne, p));
    rep.conditions.push_back(less_eq("p <= 2", p, Rational(2)));
    range_2_inf(rep, "q", inv_q);
    range_2_inf(rep, "r", inv_r);
    rep.conditions.push_back(
        equals("scaling 2/q+1/r = 1/p", Rational(2) * inv_q + inv_r, p.inv()));
    rep.conditions.push_back(strict_less("1/q+1/r < 1/2", inv_q + inv_r, kHalf));
    finish(rep);
    return rep;
}

ValidationReport validate_fefferman_stein(const Rational& p, const Rational& inv_q,
                                          const Rational& inv_r) {
    ValidationReport rep;
    rep.conditions.push_back(strict_less("p > 4/3", Rational(4, 3), p));
    rep.conditions.push_back(less_eq("p <= 2", p, Rational(2)));
    range_2_inf(rep, "q", inv_q);
    range_2_inf(rep, "r", inv_r);
    rep.conditions.push_back(
        equals("scaling 2/q+1/r = 1/p", Rational(2) * inv_q + inv_r, p.inv()));
    rep.conditions.push_back(strict_less("1/q > 0", kZero, inv_q));
    rep.conditions.push_back(
        strict_less("1/q < min(1/2-1/r, 1/4)", inv_q, std::min(kHalf - inv_r, Rational(1, 4))));
    finish(rep);
    return rep;
}

ValidationReport validate_decay_embedding(const Rational& p, const Rational& s,
                                          const Rational& inv_q, const Rational& inv_r) {
    ValidationReport rep;
    rep.conditions.push_back(less_eq("p >= 1", kOne, p));
    rep.conditions.push_back(less_eq("p <= 2", p, Rational(2)));
    rep.conditions.push_back(less_eq("s >= 0", kZero, s));
    range_2_inf(rep, "q", inv_q);
    range_2_inf(rep, "r", inv_r);
    rep.conditions.push_back(less_eq("s >= 1-1/p-1/r", kOne - p.inv() - inv_r, s));
    // q(1/p-1/2) < 1 with the convention inf*0 = 0: in reciprocal form
    // 1/p-1/2 < 1/q, except the pair (p,q) = (2,inf) passes by convention.
    {
        const Rational lhs = p.inv() - kHalf;
        Condition c = strict_less("q(1/p-1/2) < 1", lhs, inv_q);
        if (lhs.is_zero() && inv_q.is_zero()) {
            c.pass = true;  // inf * 0 = 0 < 1
            c.detail += " (convention inf*0=0)";
        }
        rep.conditions.push_back(c);
    }
    finish(rep);
    return rep;
}

ExponentTuple main_exponents(const Rational& p, const Rational& s) {
    if (!(Rational(4, 3) < p) || !(p <= Rational(2)))
        throw ValidationError("main_exponents: p = " + p.str() + " outside (4/3, 2]");
    const Rational s_hi = Rational(3, 2) - Rational(2) / p;
    if (!s.positive() || !(s < s_hi))
        throw ValidationError("main_exponents: s = " + s.str() + " outside (0, 3/2-2/p) = (0, " +
                              s_hi.str() + ") at p = " + p.str());

    ExponentTuple t;
    t.p = p;
    t.s = s;
    const Rational inv2p = (Rational(2) * p).inv();
    t.inv_q = inv2p - Rational(1, 8) - s / 4;
    t.inv_r = (kOne + Rational(2) * s) / 4;
    t.inv_rho = Rational(3, 4) - s / 2;
    t.inv_gamma = Rational(5, 8) + s / 4 + inv2p;
    t.inv_sigma = Rational(9, 8) - inv2p + s / 4;  // = 1 - 1/q identically
    t.inv_kappa = t.inv_rho - t.inv_r;             // = 1/2 - s identically
    return t;
}

std::vector<std::pair<std::string, ValidationReport>> validate_main_tuple(const ExponentTuple& t) {
    std::vector<std::pair<std::string, ValidationReport>> out;
    out.emplace_back("inhomogeneous_strichartz",
                     validate_inhomogeneous_strichartz(t.inv_q, t.inv_r, t.inv_gamma, t.inv_rho));
    out.emplace_back("homogeneous_strichartz",
                     validate_homogeneous_strichartz(t.p, t.inv_q, t.inv_r));
    // Weighted-Duhamel gate: the Fourier-side hypothesis on the dual pair
    // (sigma', rho') of the weighted norm actually appearing in the estimate.
    // 1/sigma' = 1 - 1/sigma = 1/q for this family.
    const Rational inv_sigma_dual = t.inv_sigma ? kOne - *t.inv_sigma : t.inv_q;
    const Rational inv_rho_dual = kOne - t.inv_rho;
    out.emplace_back("fefferman_stein_dual(sigma',rho')",
                     validate_fefferman_stein(t.p, inv_sigma_dual, inv_rho_dual));
    return out;
}

namespace {

ExponentTuple case1_tuple(const Rational& p, const Rational& delta) {
    ExponentTuple t;
    t.p = p;
    t.s = delta;
    t.delta = delta;
    t.inv_q = p.inv() - kHalf + delta / 2;
    t.inv_r = kOne - p.inv() - delta;
    t.inv_rho = Rational(3) - Rational(3) / p - Rational(3) * delta;  // = 3/r
    t.inv_gamma = Rational(2) / p - kHalf + Rational(3, 2) * delta;
    return t;
}

ExponentTuple case2_tuple(const Rational& p, const Rational& delta, Case2Variant variant) {
    ExponentTuple t;
    t.p = p;
    t.s = Rational(2, 3) - p.inv() + delta;
    t.delta = delta;
    t.inv_q = Rational(1, 6) + delta / 2;
    t.inv_r = Rational(1, 3) - delta;
    if (variant == Case2Variant::paper_literal) {
        t.inv_rho = kOne - Rational(3, 2) * delta;
        t.inv_gamma = Rational(5, 6) + Rational(3, 4) * delta;
    } else {
        t.inv_rho = kOne - Rational(3) * delta;  // = 3/r
        t.inv_gamma = Rational(5, 6) + Rational(3, 2) * delta;
    }
    return t;
}

}  // namespace

ExponentTuple uniqueness_exponents_case1(const Rational& p, const Rational& delta) {
    if (!(Rational(4, 3) < p) || !(p <= Rational(3, 2)))
        throw ValidationError("uniqueness case 1: p = " + p.str() + " outside (4/3, 3/2]");
    const DeltaInterval range = feasible_delta_range(p, 1);
    ExponentTuple t = case1_tuple(p, delta);
    if (!range.contains(delta)) {
        ValidationReport inhomo =
            validate_inhomogeneous_strichartz(t.inv_q, t.inv_r, t.inv_gamma, t.inv_rho);
        ValidationReport decay = validate_decay_embedding(p, delta, t.inv_q, t.inv_r);
        throw ValidationError("uniqueness case 1: delta = " + delta.str() +
                              " outside feasible (" + range.lo.str() + ", " + range.hi.str() +
                              ")" + report_text(inhomo) + report_text(decay));
    }
    return t;
}

Case2Result uniqueness_exponents_case2(const Rational& p, const Rational& s) {
    if (!(Rational(3, 2) < p) || !(p <= Rational(2)))
        throw ValidationError("uniqueness case 2: p = " + p.str() + " outside (3/2, 2]");
    const Rational delta = s - (Rational(2, 3) - p.inv());
    if (!delta.positive())
        throw ValidationError("uniqueness case 2: s = " + s.str() +
                              " not above the threshold 2/3-1/p = " +
                              (Rational(2, 3) - p.inv()).str());
    Case2Result out;
    out.delta = delta;
    out.paper_literal = case2_tuple(p, delta, Case2Variant::paper_literal);
    out.consistent = case2_tuple(p, delta, Case2Variant::consistent);
    out.paper_literal_report = validate_inhomogeneous_strichartz(
        out.paper_literal.inv_q, out.paper_literal.inv_r, out.paper_literal.inv_gamma,
        out.paper_literal.inv_rho);
    out.consistent_report =
        validate_inhomogeneous_strichartz(out.consistent.inv_q, out.consistent.inv_r,
                                          out.consistent.inv_gamma, out.consistent.inv_rho);
    const DeltaInterval lit = feasible_delta_range(p, 2, Case2Variant::paper_literal);
    const DeltaInterval con = feasible_delta_range(p, 2, Case2Variant::consistent);
    if (!lit.contains(delta) && !con.contains(delta))
        throw ValidationError("uniqueness case 2: delta = " + delta.str() +
                              " infeasible for both variants (paper-literal (" + lit.lo.str() +
                              ", " + lit.hi.str() + "), consistent (" + con.lo.str() + ", " +
                              con.hi.str() + "))" + report_text(out.paper_literal_report) +
                              report_text(out.consistent_report));
    return out;
}

Rational threshold_sc(const Rational& p) {
    if (p < kOne || p > Rational(2))
        throw ValidationError("threshold_sc: p = " + p.str() + " outside [1, 2]");
    return std::max(kZero, Rational(2, 3) - p.inv());
}

DeltaInterval feasible_delta_range(const Rational& p, int case_id, Case2Variant variant) {
    DeltaInterval iv;
    if (case_id == 1) {
        if (!(Rational(4, 3) < p) || !(p <= Rational(3, 2)))
            throw ValidationError("feasible_delta_range case 1: p = " + p.str() +
                                  " outside (4/3, 3/2]");
        // Binding constraints on (4/3, 3/2]: rho > 1 gives delta > 2/3-1/p
        // (vacuous for p <= 3/2 where it joins delta > 0 from 1/q+1/r < 1/2),
        // and gamma > 1 gives delta < 1-4/(3p); all other range/scaling
        // conditions are implied there (cross-checked by scan in tests).
        iv.lo = std::max(kZero, Rational(2, 3) - p.inv());
        iv.hi = kOne - Rational(4) / (Rational(3) * p);
        return iv;
    }
    if (case_id == 2) {
        if (!(Rational(3, 2) < p) || !(p <= Rational(2)))
            throw ValidationError("feasible_delta_range case 2: p = " + p.str() +
                                  " outside (3/2, 2]");
        // gamma > 1 binds (2/9 literal, 1/9 consistent); the standing frame
        // s < 3/2-2/p caps delta at 5/6-1/p, which binds for p near 3/2.
        const Rational from_gamma =
            variant == Case2Variant::paper_literal ? Rational(2, 9) : Rational(1, 9);
        iv.lo = kZero;
        iv.hi = std::min(from_gamma, Rational(5, 6) - p.inv());
        return iv;
    }
    throw ValidationError("feasible_delta_range: case must be 1 or 2");
}

}  // namespace nls::exponents
