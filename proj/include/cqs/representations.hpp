#pragma once

// The five equivalent descriptions of a two-dimensional cyclic quotient
// singularity and exact conversions among them:
//
//   NQForm       1/n(1,q)
//   ABCForm      n = a*b, q = b*c - 1 with b = gcd(n, q+1)
//   ConeForm     sigma = <alpha, beta> in N_Q
//   CFForm       Hirzebruch-Jung expansion of n/(n-q)
//   IntervalUD   [g/m, h/m] with uniform denominators, up to integral shift
//
// All constructors validate their invariants and throw InvalidSingularity.

#include "cqs/lattice.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cqs {

struct NQForm {
    Integer n;
    Integer q;

    NQForm(Integer n_, Integer q_);
    /// q = n - 1, i.e. an A_{n-1} singularity.
    bool is_a_type() const { return q == n - 1; }
    friend bool operator==(const NQForm&, const NQForm&) = default;
};

struct ABCForm {
    Integer a;
    Integer b;
    Integer c;  ///< normalized into [1, a]

    ABCForm(Integer a_, Integer b_, Integer c_);
    friend bool operator==(const ABCForm&, const ABCForm&) = default;
};

/// Two-dimensional pointed cone. Both orientations are accepted: the cone
/// over an interval has det(alpha, beta) < 0, the normal form from (n, q) has
/// det > 0. Everything downstream is orientation-agnostic.
struct ConeForm {
    NPoint alpha;
    NPoint beta;

    ConeForm(NPoint alpha_, NPoint beta_);
    /// |det(alpha, beta)|, the group order.
    Integer order() const { return abs(det2(alpha, beta)); }
    /// Sign of det(alpha, beta), either +1 or -1.
    int orientation() const { return det2(alpha, beta) > 0 ? 1 : -1; }
    /// Primitive generator of sigma^v on alpha's side: <alpha, r1> = 0, <beta, r1> > 0.
    MPoint dual_first() const;
    /// Primitive generator of sigma^v on beta's side: <beta, re> = 0, <alpha, re> > 0.
    MPoint dual_last() const;
    friend bool operator==(const ConeForm&, const ConeForm&) = default;
};

/// [g/m, h/m], stored in the canonical integral shift 0 < h <= m.
struct IntervalUD {
    Integer g;
    Integer h;
    Integer m;

    /// Validates g < h, m >= 1, gcd(g, m) = gcd(h, m) = 1 and then shifts.
    IntervalUD(Integer g_, Integer h_, Integer m_);
    Rational lower() const { return Rational(g, m); }
    Rational upper() const { return Rational(h, m); }
    Rational length() const { return Rational(h - g, m); }
    friend bool operator==(const IntervalUD&, const IntervalUD&) = default;
};

struct CFForm {
    std::vector<Integer> coefficients;  ///< [a_2, ..., a_{e-1}], each >= 2

    explicit CFForm(std::vector<Integer> coeffs);
    friend bool operator==(const CFForm&, const CFForm&) = default;
};

using SingularityForm = std::variant<NQForm, ABCForm, ConeForm, IntervalUD, CFForm>;

enum class FormTag { nq, abc, cone, interval, cf };

// Conversions -----------------------------------------------------------------

ABCForm nq_to_abc(const NQForm& s);
NQForm abc_to_nq(const ABCForm& s);
ConeForm nq_to_cone(const NQForm& s);
IntervalUD cone_to_interval(const ConeForm& c);
ConeForm interval_to_cone(const IntervalUD& i);
ABCForm interval_to_abc(const IntervalUD& i);
NQForm q_inverse(const NQForm& s);
NQForm cf_to_nq(const CFForm& cf);
/// Hirzebruch-Jung expansion of p/s; requires p > s >= 1 and gcd(p, s) = 1.
CFForm continued_fraction(const Integer& p, const Integer& s);
CFForm nq_to_cf(const NQForm& s);

/// A change of N-basis bringing a cone into the normal form <(1,0), (-q,n)>.
/// `m1`, `m2` are the images in the cone's own M-coordinates of the normal
/// form's basis vectors [1,0] and [0,1].
struct NormalFrame {
    NQForm nq;
    MPoint m1;
    MPoint m2;

    MPoint to_cone_coords(const MPoint& normal) const { return normal.u * m1 + normal.v * m2; }
};

/// Throws InvalidSingularity for smooth cones (order 1).
NormalFrame normal_frame(const ConeForm& c);
NQForm cone_to_nq(const ConeForm& c);

NQForm to_nq(const SingularityForm& s);
/// Isomorphism-class representative (n, min(q, q')).
NQForm canonical_class(const SingularityForm& s);

/// Inverse of c' = 1/h mod m, the abc-invariant of the mirrored singularity
/// (n, q'). Equals 1 when m = 1.
Integer c_prime(const IntervalUD& i);

// Text grammar ----------------------------------------------------------------
//
//   nq:20/11   abc:5,4,3   cone:(1,0),(-11,20)   interval:-2/5,2/5   cf:3,2,2,2,3

/// Throws ParseError for grammar problems and InvalidSingularity for
/// well-formed input that violates a type invariant.
SingularityForm parse_form(std::string_view text);
FormTag parse_form_tag(std::string_view text);
std::string_view tag_name(FormTag t);
FormTag tag_of(const SingularityForm& s);

std::string format(const NQForm& s);
std::string format(const ABCForm& s);
std::string format(const ConeForm& s);
std::string format(const IntervalUD& s);
std::string format(const CFForm& s);
std::string format(const SingularityForm& s);

/// Converts any form to the requested description by way of (n, q).
SingularityForm convert(const SingularityForm& s, FormTag target);

}  // namespace cqs
