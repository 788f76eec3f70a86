#include "cqs/cone_geometry.hpp"

#include "cqs/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace cqs {

namespace {

void finish_hilbert_data(HilbertData& h) {
    h.central_degree = primitive(h.basis.front() + h.basis.back());
    auto it = std::find(h.basis.begin(), h.basis.end(), h.central_degree);
    h.grounded = it != h.basis.end();
    if (h.grounded) h.central_index = static_cast<std::size_t>(it - h.basis.begin()) + 1;
}

HilbertData smooth_record(const ConeForm& cone) {
    HilbertData h;
    h.basis = {cone.dual_first(), cone.dual_last()};
    finish_hilbert_data(h);
    return h;
}

}  // namespace

// ---------------------------------------------------------------------------

EvaluationMap::EvaluationMap(const ConeForm& cone)
    : cone_(cone), det_(det2(cone.alpha, cone.beta)), n_(abs(det_)) {
    ExtGcd e = ext_gcd(cone.alpha.x, cone.alpha.y);
    MPoint unit{e.s, e.t};  // <alpha, unit> = 1
    slope_ = floor_mod(pairing(cone.beta, unit), n_);
}

std::pair<Integer, Integer> EvaluationMap::operator()(const MPoint& r) const {
    return {pairing(cone_.alpha, r), pairing(cone_.beta, r)};
}

std::pair<Rational, Rational> EvaluationMap::operator()(const MRatPoint& r) const {
    return {pairing(cone_.alpha, r), pairing(cone_.beta, r)};
}

MRatPoint EvaluationMap::preimage(const Integer& u, const Integer& v) const {
    const NPoint& a = cone_.alpha;
    const NPoint& b = cone_.beta;
    return {Rational(b.y * u - a.y * v, det_), Rational(-b.x * u + a.x * v, det_)};
}

bool EvaluationMap::in_lattice(const Integer& u, const Integer& v) const {
    return floor_mod(v - slope_ * u, n_) == 0;
}

// ---------------------------------------------------------------------------

HilbertData hilbert_basis(const ConeForm& cone) {
    if (cone.order() == 1) return smooth_record(cone);
    NormalFrame frame = normal_frame(cone);
    CFForm cf = nq_to_cf(frame.nq);

    std::vector<MPoint> normal{MPoint{0, 1}, MPoint{1, 1}};
    for (const Integer& a : cf.coefficients) {
        const MPoint& cur = normal[normal.size() - 1];
        const MPoint& prev = normal[normal.size() - 2];
        normal.push_back(a * cur - prev);
    }
    if (normal.back() != MPoint{frame.nq.n, frame.nq.q})
        throw std::logic_error("hilbert_basis: recursion did not terminate at [n, q]");

    HilbertData h;
    h.coeffs = std::move(cf.coefficients);
    h.basis.reserve(normal.size());
    for (const MPoint& p : normal) h.basis.push_back(frame.to_cone_coords(p));
    finish_hilbert_data(h);
    return h;
}

Integer oracle_bound() {
    if (const char* env = std::getenv("CQS_ORACLE_BOUND")) {
        try {
            Integer b = parse_integer(env);
            if (b >= 1) return b;
        } catch (const ParseError&) {
        }
        throw ParseError(std::string("CQS_ORACLE_BOUND must be a positive integer, got '") + env + "'");
    }
    return Integer(10000);
}

HilbertData hilbert_basis_oracle(const ConeForm& cone, std::optional<Integer> bound) {
    Integer limit = bound ? *bound : oracle_bound();
    EvaluationMap iota(cone);
    if (iota.order() > limit)
        throw OracleBoundExceeded("hilbert_basis_oracle: n = " + iota.order().str() + " exceeds oracle bound " +
                                  limit.str());
    if (iota.order() > 3000000000LL)
        throw OracleBoundExceeded("hilbert_basis_oracle: n too large for 64-bit enumeration");
    if (iota.order() == 1) return smooth_record(cone);

    // Every element of the Hilbert basis lies in the box 0 <= u, v <= n of
    // evaluation coordinates. Column u of iota(M) is {v = slope*u mod n}; only
    // its lowest point can be indecomposable, except for column 0 where the
    // lowest nonzero point is (0, n).
    const std::int64_t n = to_int64(iota.order());
    const std::int64_t slope = to_int64(iota.slope());
    std::vector<std::int64_t> low(static_cast<std::size_t>(n) + 1);
    low[0] = n;
    for (std::int64_t u = 1; u <= n; ++u) low[u] = (slope % n) * (u % n) % n;

    std::vector<std::int64_t> columns;
    for (std::int64_t u = 0; u <= n; ++u) {
        bool decomposable = false;
        // (u, low[u]) = (u', v') + (u - u', v''); both summands sit on or
        // above the lowest point of their column.
        for (std::int64_t split = 1; split < u && !decomposable; ++split)
            decomposable = low[split] + low[u - split] <= low[u];
        if (!decomposable) columns.push_back(u);
    }

    HilbertData h;
    for (std::int64_t u : columns) h.basis.push_back(iota.preimage(u, low[u]).to_integral());

    for (std::size_t i = 1; i + 1 < h.basis.size(); ++i) {
        MPoint sum = h.basis[i - 1] + h.basis[i + 1];
        const MPoint& mid = h.basis[i];
        Integer a = mid.u != 0 ? sum.u / mid.u : sum.v / mid.v;
        if (a * mid != sum) throw std::logic_error("hilbert_basis_oracle: neighbours are not in a three-term relation");
        h.coeffs.push_back(a);
    }
    finish_hilbert_data(h);
    return h;
}

Rational eta(const HilbertData& h, const ConeForm& cone, std::size_t i) {
    if (i < 2 || i + 1 > h.e()) throw std::out_of_range("eta: index must satisfy 2 <= i <= e-1");
    Rational left(pairing(cone.alpha, h.r(i + 1)), pairing(cone.alpha, h.r(i)));
    Rational right(pairing(cone.beta, h.r(i - 1)), pairing(cone.beta, h.r(i)));
    return std::min(left, right);
}

bool is_grounded(const IntervalUD& i) {
    Integer z = floor_div(i.g, i.m) + 1;  // smallest integer > g/m
    return z * i.m < i.h;
}

FloorData ab_floor_data(const IntervalUD& i) {
    if (!is_grounded(i))
        throw InvalidSingularity("ab_floor_data: interval " + format(i) + " is not grounded");
    Integer z = floor_div(i.g, i.m) + 1;
    FloorData d;
    d.A = Rational(z * i.m - i.g, i.m);
    d.B = Rational(i.h - z * i.m, i.m);
    d.floor_a = d.A.floor();
    d.floor_b = d.B.floor();
    d.frac_a = d.A.frac();
    d.frac_b = d.B.frac();
    d.a_central = 2 + d.floor_a + d.floor_b;
    return d;
}

std::vector<MRatPoint> zone_points(const ZoneSpec& zone, const ConeForm& cone) {
    EvaluationMap iota(cone);
    auto [width_u, width_v] = iota(zone.R);
    if (width_u <= 0 || width_v <= 0)
        throw std::invalid_argument("zone_points: degree " + to_string(zone.R) + " is not interior to the dual cone");

    const Integer& n = iota.order();
    const Integer& c = iota.slope();
    const Integer& k = zone.kappa;

    // Column u holds the points with v == offset(u) (mod modulus).
    Integer modulus = n;
    if (zone.lattice == ZoneLattice::M_tilde) modulus = gcd(c - 1, n);

    std::vector<MRatPoint> out;
    for (Integer u = k; u < k + width_u; ++u) {
        Integer offset = zone.lattice == ZoneLattice::M_shifted ? c * (u - 1) + 1 : c * u;
        Integer v = k + floor_mod(offset - k, modulus);
        for (; v < k + width_v; v += modulus) out.push_back(iota.preimage(u, v));
    }
    return out;
}

std::vector<std::string> binomial_equations(const HilbertData& h) {
    std::vector<std::string> out;
    for (std::size_t i = 2; i + 1 <= h.e(); ++i) {
        out.push_back("x" + std::to_string(i - 1) + "*x" + std::to_string(i + 1) + " - x" + std::to_string(i) + "^" +
                      h.a(i).str());
    }
    return out;
}

}  // namespace cqs
