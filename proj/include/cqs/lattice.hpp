#pragma once

// Exact integer and rational arithmetic on the rank-two lattices M and N.
//
// M holds degrees (written [u, v]), N holds cone generators and derivation
// directions (written (x, y)). The two are kept as distinct types so that
// the pairing N x M -> Z is the only way to combine them.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cqs {

/// Arbitrary precision; expression templates are off so that mixed
/// expressions (ternaries, std::min) have a single concrete type.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// Floor division for signed integers; d must be nonzero.
Integer floor_div(const Integer& a, const Integer& d);
/// Representative of a mod d in [0, |d|).
Integer floor_mod(const Integer& a, const Integer& d);
Integer gcd(const Integer& a, const Integer& b);
/// Checked narrowing; throws std::overflow_error when x does not fit.
std::int64_t to_int64(const Integer& x);
Integer parse_integer(std::string_view text);

/// Exact fraction, always stored in lowest terms with a positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Integer value) : num_(std::move(value)), den_(1) {}  // NOLINT(implicit)
    Rational(int value) : num_(value), den_(1) {}                 // NOLINT(implicit)
    Rational(Integer num, Integer den);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    Integer floor() const { return floor_div(num_, den_); }
    Integer ceil() const { return -floor_div(-num_, den_); }
    /// {x} = x - floor(x), in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    Rational operator-() const { return Rational(-num_, den_); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q", or just "p" when the denominator is one.
    std::string str() const;
    /// Accepts "p/q" or "p"; the result is normalized.
    static Rational parse(std::string_view text);

private:
    Integer num_;
    Integer den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Lattice vector in M (degrees).
struct MPoint {
    Integer u;
    Integer v;

    friend MPoint operator+(const MPoint& a, const MPoint& b) { return {a.u + b.u, a.v + b.v}; }
    friend MPoint operator-(const MPoint& a, const MPoint& b) { return {a.u - b.u, a.v - b.v}; }
    friend MPoint operator*(const Integer& k, const MPoint& p) { return {k * p.u, k * p.v}; }
    MPoint operator-() const { return {-u, -v}; }
    bool is_zero() const { return u == 0 && v == 0; }
    friend bool operator==(const MPoint&, const MPoint&) = default;
};

/// Lattice vector in N (cone generators, derivation directions).
struct NPoint {
    Integer x;
    Integer y;

    friend NPoint operator+(const NPoint& a, const NPoint& b) { return {a.x + b.x, a.y + b.y}; }
    friend NPoint operator-(const NPoint& a, const NPoint& b) { return {a.x - b.x, a.y - b.y}; }
    friend NPoint operator*(const Integer& k, const NPoint& p) { return {k * p.x, k * p.y}; }
    NPoint operator-() const { return {-x, -y}; }
    bool is_zero() const { return x == 0 && y == 0; }
    friend bool operator==(const NPoint&, const NPoint&) = default;
};

/// Rational point of M_Q, e.g. the canonical degree R/m.
struct MRatPoint {
    Rational u;
    Rational v;

    MRatPoint() = default;
    MRatPoint(Rational u_, Rational v_) : u(std::move(u_)), v(std::move(v_)) {}
    explicit MRatPoint(const MPoint& p) : u(p.u), v(p.v) {}

    friend MRatPoint operator+(const MRatPoint& a, const MRatPoint& b) { return {a.u + b.u, a.v + b.v}; }
    friend MRatPoint operator-(const MRatPoint& a, const MRatPoint& b) { return {a.u - b.u, a.v - b.v}; }
    bool is_integral() const { return u.is_integer() && v.is_integer(); }
    /// Throws std::domain_error unless both coordinates are integers.
    MPoint to_integral() const;
    friend bool operator==(const MRatPoint&, const MRatPoint&) = default;
};

std::string to_string(const MPoint& p);
std::string to_string(const NPoint& p);
std::string to_string(const MRatPoint& p);
std::ostream& operator<<(std::ostream& os, const MPoint& p);
std::ostream& operator<<(std::ostream& os, const NPoint& p);
std::ostream& operator<<(std::ostream& os, const MRatPoint& p);

/// <n, m> = x*u + y*v.
Integer pairing(const NPoint& n, const MPoint& m);
Rational pairing(const NPoint& n, const MRatPoint& m);

/// p.x*q.y - p.y*q.x.
Integer det2(const NPoint& p, const NPoint& q);
Integer det2(const MPoint& p, const MPoint& q);
Rational det2(const MRatPoint& p, const MRatPoint& q);

/// Divides out the content; throws std::invalid_argument on the zero vector.
MPoint primitive(const MPoint& p);
NPoint primitive(const NPoint& p);
bool is_primitive(const MPoint& p);
bool is_primitive(const NPoint& p);

struct ExtGcd {
    Integer g;  ///< gcd(u, v) > 0
    Integer s;
    Integer t;  ///< s*u + t*v == g
};

/// Extended Euclid; throws std::invalid_argument when u == v == 0.
ExtGcd ext_gcd(const Integer& u, const Integer& v);

/// The unique inverse of c modulo m in [1, m-1]. Requires m >= 2 and
/// gcd(c, m) == 1, otherwise std::invalid_argument.
Integer mod_inverse(const Integer& c, const Integer& m);

}  // namespace cqs
