#include "cqs/lattice.hpp"

#include "cqs/errors.hpp"

#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cqs {

Integer floor_div(const Integer& a, const Integer& d) {
    if (d == 0) throw std::domain_error("floor_div: division by zero");
    Integer q = a / d;  // truncates toward zero
    if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
    return q;
}

Integer floor_mod(const Integer& a, const Integer& d) {
    Integer ad = abs(d);
    Integer r = a % ad;
    if (r < 0) r += ad;
    return r;
}

Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(abs(a), abs(b));
}

std::int64_t to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer " + x.str() + " does not fit in 64 bits");
    return x.convert_to<std::int64_t>();
}

Integer parse_integer(std::string_view text) {
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    if (pos == text.size()) throw ParseError("expected an integer, got '" + std::string(text) + "'");
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw ParseError("expected an integer, got '" + std::string(text) + "'");
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return Integer(digits);
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Integer g = gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Integer lhs = a.num_ * b.den_;
    Integer rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(std::move(num), std::move(den));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ---------------------------------------------------------------------------
// Points

MPoint MRatPoint::to_integral() const {
    if (!is_integral()) throw std::domain_error("point " + to_string(*this) + " is not integral");
    return {u.num(), v.num()};
}

std::string to_string(const MPoint& p) { return "[" + p.u.str() + "," + p.v.str() + "]"; }
std::string to_string(const NPoint& p) { return "(" + p.x.str() + "," + p.y.str() + ")"; }
std::string to_string(const MRatPoint& p) { return "[" + p.u.str() + "," + p.v.str() + "]"; }
std::ostream& operator<<(std::ostream& os, const MPoint& p) { return os << to_string(p); }
std::ostream& operator<<(std::ostream& os, const NPoint& p) { return os << to_string(p); }
std::ostream& operator<<(std::ostream& os, const MRatPoint& p) { return os << to_string(p); }

Integer pairing(const NPoint& n, const MPoint& m) { return n.x * m.u + n.y * m.v; }

Rational pairing(const NPoint& n, const MRatPoint& m) {
    return Rational(n.x) * m.u + Rational(n.y) * m.v;
}

Integer det2(const NPoint& p, const NPoint& q) { return p.x * q.y - p.y * q.x; }
Integer det2(const MPoint& p, const MPoint& q) { return p.u * q.v - p.v * q.u; }
Rational det2(const MRatPoint& p, const MRatPoint& q) { return p.u * q.v - p.v * q.u; }

MPoint primitive(const MPoint& p) {
    if (p.is_zero()) throw std::invalid_argument("primitive: zero vector");
    Integer g = gcd(p.u, p.v);
    return {p.u / g, p.v / g};
}

NPoint primitive(const NPoint& p) {
    if (p.is_zero()) throw std::invalid_argument("primitive: zero vector");
    Integer g = gcd(p.x, p.y);
    return {p.x / g, p.y / g};
}

bool is_primitive(const MPoint& p) { return !p.is_zero() && gcd(p.u, p.v) == 1; }
bool is_primitive(const NPoint& p) { return !p.is_zero() && gcd(p.x, p.y) == 1; }

ExtGcd ext_gcd(const Integer& u, const Integer& v) {
    if (u == 0 && v == 0) throw std::invalid_argument("ext_gcd: both arguments are zero");
    // Invariant: r0 = s0*u + t0*v, r1 = s1*u + t1*v.
    Integer r0 = u, r1 = v;
    Integer s0 = 1, s1 = 0;
    Integer t0 = 0, t1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    return {r0, s0, t0};
}

Integer mod_inverse(const Integer& c, const Integer& m) {
    if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2, got " + m.str());
    ExtGcd e = ext_gcd(floor_mod(c, m), m);
    if (e.g != 1)
        throw std::invalid_argument("mod_inverse: gcd(" + c.str() + ", " + m.str() + ") != 1");
    return floor_mod(e.s, m);
}

}  // namespace cqs
