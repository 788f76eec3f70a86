#include "cqs/representations.hpp"

#include "cqs/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cqs {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw InvalidSingularity(what); }

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Type invariants

NQForm::NQForm(Integer n_, Integer q_) : n(std::move(n_)), q(std::move(q_)) {
    if (n < 2) invalid("nq: n must be >= 2 (n = " + n.str() + ")");
    if (q < 1 || q > n - 1) invalid("nq: q must satisfy 1 <= q <= n-1 (q = " + q.str() + ")");
    if (gcd(n, q) != 1) invalid("nq: gcd(n, q) = " + gcd(n, q).str() + " != 1");
}

ABCForm::ABCForm(Integer a_, Integer b_, Integer c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a < 1) invalid("abc: a must be >= 1");
    if (b < 1) invalid("abc: b must be >= 1");
    if (gcd(a, c) != 1) invalid("abc: gcd(a, c) != 1");
    // c is only defined modulo a
    c = floor_mod(c - 1, a) + 1;
}

ConeForm::ConeForm(NPoint alpha_, NPoint beta_) : alpha(std::move(alpha_)), beta(std::move(beta_)) {
    if (!is_primitive(alpha)) invalid("cone: alpha " + to_string(alpha) + " is not primitive");
    if (!is_primitive(beta)) invalid("cone: beta " + to_string(beta) + " is not primitive");
    if (det2(alpha, beta) == 0) invalid("cone: alpha and beta are parallel (cone is not pointed and 2-dimensional)");
}

MPoint ConeForm::dual_first() const {
    MPoint r{-alpha.y, alpha.x};
    return orientation() > 0 ? r : -r;
}

MPoint ConeForm::dual_last() const {
    MPoint r{beta.y, -beta.x};
    return orientation() > 0 ? r : -r;
}

IntervalUD::IntervalUD(Integer g_, Integer h_, Integer m_) : g(std::move(g_)), h(std::move(h_)), m(std::move(m_)) {
    if (m < 1) invalid("interval: denominator m must be >= 1");
    if (g >= h) invalid("interval: empty or degenerate interval (g >= h)");
    if (gcd(g, m) != 1 || gcd(h, m) != 1) invalid("interval: endpoints do not have uniform denominators");
    Integer t = floor_div(h - 1, m);
    g -= t * m;
    h -= t * m;
}

CFForm::CFForm(std::vector<Integer> coeffs) : coefficients(std::move(coeffs)) {
    if (coefficients.empty()) invalid("cf: empty continued fraction (smooth point)");
    for (const auto& a : coefficients)
        if (a < 2) invalid("cf: coefficient " + a.str() + " < 2");
}

// ---------------------------------------------------------------------------
// Conversions

ABCForm nq_to_abc(const NQForm& s) {
    Integer b = gcd(s.n, s.q + 1);
    return ABCForm(s.n / b, b, (s.q + 1) / b);
}

NQForm abc_to_nq(const ABCForm& s) {
    Integer n = s.a * s.b;
    Integer q = s.b * s.c - 1;
    if (n < 2 || q < 1) invalid("abc: (" + s.a.str() + "," + s.b.str() + "," + s.c.str() + ") gives n = " + n.str() +
                                ", q = " + q.str() + ", which is smooth");
    return NQForm(std::move(n), std::move(q));
}

ConeForm nq_to_cone(const NQForm& s) { return ConeForm(NPoint{1, 0}, NPoint{-s.q, s.n}); }

IntervalUD cone_to_interval(const ConeForm& c) {
    MPoint central = primitive(c.dual_first() + c.dual_last());
    // Complete the central degree to a basis {P, central} of M.
    ExtGcd e = ext_gcd(central.u, central.v);
    // det(p, central) = -1. Any other completion is +-p + t*central, which
    // the orientation flip and the canonical shift below absorb.
    MPoint p{-e.t, e.s};
    Integer m = pairing(c.alpha, central);
    Integer g = pairing(c.alpha, p);
    Integer h = pairing(c.beta, p);
    if (g > h) {
        g = -g;
        h = -h;
    }
    return IntervalUD(g, h, m);
}

ConeForm interval_to_cone(const IntervalUD& i) { return ConeForm(NPoint{i.g, i.m}, NPoint{i.h, i.m}); }

ABCForm interval_to_abc(const IntervalUD& i) {
    Integer c = i.m == 1 ? Integer(1) : mod_inverse(-i.g, i.m);
    return ABCForm(i.m, i.h - i.g, c);
}

Integer c_prime(const IntervalUD& i) { return i.m == 1 ? Integer(1) : mod_inverse(i.h, i.m); }

NQForm q_inverse(const NQForm& s) {
    return NQForm(s.n, mod_inverse(s.q, s.n));
}

CFForm continued_fraction(const Integer& p, const Integer& s) {
    if (!(s >= 1 && p > s) || gcd(p, s) != 1)
        invalid("continued_fraction: need p > s >= 1 with gcd 1 (p = " + p.str() + ", s = " + s.str() + ")");
    std::vector<Integer> out;
    Integer num = p, den = s;
    while (den != 0) {
        Integer a = -floor_div(-num, den);  // ceil
        out.push_back(a);
        Integer rest = a * den - num;
        num = den;
        den = rest;
    }
    return CFForm(std::move(out));
}

CFForm nq_to_cf(const NQForm& s) { return continued_fraction(s.n, s.n - s.q); }

NQForm cf_to_nq(const CFForm& cf) {
    // Bottom-up: value = num/den, a - 1/(num/den) = (a*num - den)/num.
    Integer num = cf.coefficients.back();
    Integer den = 1;
    for (auto it = cf.coefficients.rbegin() + 1; it != cf.coefficients.rend(); ++it) {
        Integer next = *it * num - den;
        den = num;
        num = next;
    }
    if (den <= 0 || gcd(num, den) != 1) invalid("cf: evaluation did not end in a reduced positive fraction");
    return NQForm(num, num - den);
}

NormalFrame normal_frame(const ConeForm& c) {
    Integer n = c.order();
    if (n == 1) invalid("cone: unimodular cone (smooth point)");
    const int s = c.orientation();
    ExtGcd e = ext_gcd(c.alpha.x, c.alpha.y);  // s0*ax + t0*ay = 1
    NPoint gamma = s > 0 ? NPoint{-e.t, e.s} : NPoint{e.t, -e.s};  // det(alpha, gamma) = s
    // beta = x*alpha + n*gamma; x is read off by pairing with the dual basis.
    Integer x = s * det2(c.beta, gamma);
    // Shift gamma by t*alpha so that the alpha-coefficient of beta becomes -q with 1 <= q <= n-1.
    Integer q = floor_mod(-x, n);
    Integer t = (x + q) / n;  // exact: x + q == 0 mod n
    gamma = gamma + t * c.alpha;
    NQForm nq(n, q);
    MPoint m1{s * gamma.y, -s * gamma.x};
    MPoint m2{-s * c.alpha.y, s * c.alpha.x};
    return NormalFrame{std::move(nq), m1, m2};
}

NQForm cone_to_nq(const ConeForm& c) { return normal_frame(c).nq; }

NQForm to_nq(const SingularityForm& s) {
    return std::visit(
        [](const auto& f) -> NQForm {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, NQForm>) return f;
            else if constexpr (std::is_same_v<T, ABCForm>) return abc_to_nq(f);
            else if constexpr (std::is_same_v<T, ConeForm>) return cone_to_nq(f);
            else if constexpr (std::is_same_v<T, IntervalUD>) return abc_to_nq(interval_to_abc(f));
            else return cf_to_nq(f);
        },
        s);
}

NQForm canonical_class(const SingularityForm& s) {
    NQForm nq = to_nq(s);
    NQForm inv = q_inverse(nq);
    return inv.q < nq.q ? inv : nq;
}

SingularityForm convert(const SingularityForm& s, FormTag target) {
    NQForm nq = to_nq(s);
    switch (target) {
        case FormTag::nq: return nq;
        case FormTag::abc: return nq_to_abc(nq);
        case FormTag::cone: return nq_to_cone(nq);
        case FormTag::interval: return cone_to_interval(nq_to_cone(nq));
        case FormTag::cf: return nq_to_cf(nq);
    }
    return nq;
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

NPoint parse_npoint(const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw ParseError("expected a lattice vector '(x,y)', got '" + t + "'");
    auto parts = split(std::string_view(t).substr(1, t.size() - 2), ',');
    if (parts.size() != 2) throw ParseError("expected two coordinates in '" + t + "'");
    return {parse_integer(parts[0]), parse_integer(parts[1])};
}

}  // namespace

FormTag parse_form_tag(std::string_view text) {
    if (text == "nq") return FormTag::nq;
    if (text == "abc") return FormTag::abc;
    if (text == "cone") return FormTag::cone;
    if (text == "interval") return FormTag::interval;
    if (text == "cf") return FormTag::cf;
    throw ParseError("unknown form '" + std::string(text) + "' (expected nq, abc, cone, interval or cf)");
}

std::string_view tag_name(FormTag t) {
    switch (t) {
        case FormTag::nq: return "nq";
        case FormTag::abc: return "abc";
        case FormTag::cone: return "cone";
        case FormTag::interval: return "interval";
        case FormTag::cf: return "cf";
    }
    return "?";
}

FormTag tag_of(const SingularityForm& s) { return static_cast<FormTag>(s.index()); }

SingularityForm parse_form(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("missing form prefix in '" + std::string(text) + "' (e.g. nq:20/11)");
    FormTag tag = parse_form_tag(trim(text.substr(0, colon)));
    std::string body = trim(text.substr(colon + 1));
    if (body.empty()) throw ParseError("empty " + std::string(tag_name(tag)) + " description");

    switch (tag) {
        case FormTag::nq: {
            auto parts = split(body, '/');
            if (parts.size() != 2) throw ParseError("nq: expected 'n/q', got '" + body + "'");
            return NQForm(parse_integer(parts[0]), parse_integer(parts[1]));
        }
        case FormTag::abc: {
            auto parts = split(body, ',');
            if (parts.size() != 3) throw ParseError("abc: expected 'a,b,c', got '" + body + "'");
            ABCForm abc(parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]));
            abc_to_nq(abc);  // reject (a,b,c) that do not describe a singular point
            return abc;
        }
        case FormTag::cone: {
            auto close = body.find(')');
            if (close == std::string::npos || close + 1 >= body.size() || body[close + 1] != ',')
                throw ParseError("cone: expected '(x,y),(x,y)', got '" + body + "'");
            return ConeForm(parse_npoint(body.substr(0, close + 1)), parse_npoint(body.substr(close + 2)));
        }
        case FormTag::interval: {
            auto parts = split(body, ',');
            if (parts.size() != 2) throw ParseError("interval: expected 'g/m,h/m', got '" + body + "'");
            Rational lo = Rational::parse(parts[0]);
            Rational hi = Rational::parse(parts[1]);
            if (lo.den() != hi.den())
                invalid("interval: endpoints " + lo.str() + " and " + hi.str() + " do not have uniform denominators");
            return IntervalUD(lo.num(), hi.num(), lo.den());
        }
        case FormTag::cf: {
            std::vector<Integer> coeffs;
            for (const auto& p : split(body, ',')) coeffs.push_back(parse_integer(p));
            return CFForm(std::move(coeffs));
        }
    }
    throw ParseError("unreachable");
}

std::string format(const NQForm& s) { return "nq:" + s.n.str() + "/" + s.q.str(); }
std::string format(const ABCForm& s) { return "abc:" + s.a.str() + "," + s.b.str() + "," + s.c.str(); }
std::string format(const ConeForm& s) { return "cone:" + to_string(s.alpha) + "," + to_string(s.beta); }
std::string format(const IntervalUD& s) { return "interval:" + s.lower().str() + "," + s.upper().str(); }

std::string format(const CFForm& s) {
    std::string out = "cf:";
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
        if (i) out += ",";
        out += s.coefficients[i].str();
    }
    return out;
}

std::string format(const SingularityForm& s) {
    return std::visit([](const auto& f) { return format(f); }, s);
}

}  // namespace cqs
