#include "cqs/deformations.hpp"

#include "cqs/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace cqs {

namespace {

void require_embdim(const HilbertData& h, const char* where) {
    if (h.e() <= 3)
        throw DegenerateClass(std::string(where) + ": embedding dimension " + std::to_string(h.e()) +
                              " <= 3; smooth points and A_{n-1} singularities (q = n-1) have no such deformations");
}

/// The (i, k) at which the central degree and its multiples live.
std::size_t central_index_or_throw(const HilbertData& h) {
    if (!h.central_index) throw std::logic_error("central index requested for a non-grounded cone");
    return *h.central_index;
}

void check_grounded_agrees(const HilbertData& h, const IntervalUD& interval, const char* where) {
    if (h.grounded != is_grounded(interval))
        throw std::invalid_argument(std::string(where) + ": Hilbert basis and interval " + format(interval) +
                                    " describe different singularities");
}

/// Degrees k * central with 1 <= k <= bound get dimension 1, everything else 0.
GradedDims central_multiples(const HilbertData& h, const Integer& bound) {
    GradedDims out = t1_graded(h);
    std::size_t l = h.central_index.value_or(0);
    for (GradedDim& g : out) g.dim = (g.degree.i == l && g.degree.k <= bound) ? 1 : 0;
    return out;
}

Integer min3(const Integer& a, const Integer& b, const Integer& c) { return std::min({a, b, c}); }

// Exact linear algebra on N_Q for the rank oracle --------------------------

int rank_of(const std::vector<MPoint>& functionals) {
    const MPoint* first = nullptr;
    for (const MPoint& f : functionals) {
        if (f.is_zero()) continue;
        if (first == nullptr) {
            first = &f;
        } else if (det2(*first, f) != 0) {
            return 2;
        }
    }
    return first == nullptr ? 0 : 1;
}

/// Subspace of N_Q that T^1(-R) is taken modulo.
struct Quotient {
    std::vector<NPoint> spanning;
};

Quotient quotient_for(const MPoint& R, const ConeForm& cone) {
    Quotient k;
    if (pairing(cone.alpha, R) == 1) k.spanning.push_back(cone.alpha);
    if (pairing(cone.beta, R) == 1) k.spanning.push_back(cone.beta);
    return k;
}

/// dim of {a in N_Q / K : f(a) = 0 for all f}. Each f must vanish on K,
/// otherwise the condition would depend on the chosen representative.
int kernel_dim(const std::vector<MPoint>& functionals, const Quotient& k, const MPoint& R) {
    for (const MPoint& f : functionals)
        for (const NPoint& v : k.spanning)
            if (pairing(v, f) != 0)
                throw std::logic_error("rank oracle: functional " + to_string(f) + " does not vanish on " + to_string(v) +
                                       " at degree " + to_string(R));
    return 2 - static_cast<int>(k.spanning.size()) - rank_of(functionals);
}

/// kappa*R - r for every r in Z_{R,kappa} ∩ M.
std::vector<MPoint> iso_functionals(const MPoint& R, const Integer& kappa, const ConeForm& cone) {
    std::vector<MPoint> out;
    for (const MRatPoint& p : zone_points({R, kappa, ZoneLattice::M}, cone)) out.push_back(kappa * R - p.to_integral());
    return out;
}

void append(std::vector<MPoint>& to, const std::vector<MPoint>& from) { to.insert(to.end(), from.begin(), from.end()); }

bool zone_on_line(const MPoint& R, const ConeForm& cone, ZoneLattice lattice) {
    MRatPoint line(central_degree(cone) - canonical_index(cone) * R);
    bool degenerate = line == MRatPoint(MPoint{0, 0});
    for (const MRatPoint& p : zone_points({R, 0, lattice}, cone)) {
        if (degenerate ? !(p == line) : det2(p, line) != 0) return false;
    }
    return true;
}

void require(bool condition, const std::string& what) {
    if (!condition) throw std::logic_error("totals: internal consistency check failed: " + what);
}

IntervalUD interval_of(const SingularityForm& s) {
    if (const auto* i = std::get_if<IntervalUD>(&s)) return *i;
    if (const auto* c = std::get_if<ConeForm>(&s)) return cone_to_interval(*c);
    return cone_to_interval(nq_to_cone(to_nq(s)));
}

}  // namespace

std::string to_string(const DegreeId& d) {
    std::string r = "r^" + std::to_string(d.i);
    return d.k == 1 ? r : std::to_string(d.k) + "*" + r;
}

MPoint degree_vector(const HilbertData& h, const DegreeId& d) { return Integer(d.k) * h.r(d.i); }

int total(const GradedDims& dims) {
    int sum = 0;
    for (const GradedDim& g : dims) sum += g.dim;
    return sum;
}

MPoint central_degree(const ConeForm& cone) { return primitive(cone.dual_first() + cone.dual_last()); }

Integer canonical_index(const ConeForm& cone) { return pairing(cone.alpha, central_degree(cone)); }

// ---------------------------------------------------------------------------

GradedDims t1_graded(const HilbertData& h) {
    require_embdim(h, "t1_graded");
    const std::size_t e = h.e();
    GradedDims out;
    for (std::size_t i = 2; i <= e - 1; ++i) {
        out.push_back({{i, 1}, (i == 2 || i == e - 1) ? 1 : 2});
        const std::int64_t top = to_int64(h.a(i)) - 1;
        for (std::int64_t k = 2; k <= top; ++k) out.push_back({{i, k}, 1});
    }
    return out;
}

GradedDims v_dims(const HilbertData& h) {
    GradedDims out = t1_graded(h);
    const std::size_t e = h.e();
    const std::size_t l = h.central_index.value_or(0);
    for (GradedDim& g : out) {
        if (g.degree.k == 1)
            g.dim = (g.degree.i == 2 || g.degree.i == e - 1) ? 0 : 1;
        else
            g.dim = (h.grounded && g.degree.i == l) ? 1 : 0;
    }
    return out;
}

GradedDims qg_dims(const HilbertData& h, const IntervalUD& interval) {
    require_embdim(h, "qg_dims");
    check_grounded_agrees(h, interval, "qg_dims");
    if (!h.grounded) return central_multiples(h, 0);
    const Integer a_l = h.a(central_index_or_throw(h));
    return central_multiples(h, std::min(a_l - 1, interval.length().floor()));
}

GradedDims vw_dims(const HilbertData& h, const IntervalUD& interval, const ABCForm& abc) {
    require_embdim(h, "vw_dims");
    check_grounded_agrees(h, interval, "vw_dims");
    if (!h.grounded) return central_multiples(h, 0);
    const Integer a_l = h.a(central_index_or_throw(h));
    const Rational len = interval.length();
    const Integer by_c = (Rational(abc.c) * len).floor();
    const Integer by_c_prime = (Rational(c_prime(interval)) * len).floor();
    return central_multiples(h, min3(a_l - 1, by_c, by_c_prime));
}

// ---------------------------------------------------------------------------

Integer phi_functional(const MPoint& R, const NPoint& a, const ConeForm& cone) {
    return pairing(a, central_degree(cone) - canonical_index(cone) * R);
}

bool iso_oracle(const DeformationDirection& xi, const Integer& kappa, const ConeForm& cone) {
    for (const MPoint& f : iso_functionals(xi.R, kappa, cone))
        if (pairing(xi.a, f) != 0) return false;
    return true;
}

bool stable_iso_oracle(const DeformationDirection& xi, const Integer& kappa, const ConeForm& cone) {
    if (zone_points({xi.R, kappa, ZoneLattice::M}, cone).empty()) return true;
    return iso_oracle(xi, kappa, cone) && phi_functional(xi.R, xi.a, cone) == 0;
}

bool qg_oracle(const MPoint& R, const ConeForm& cone) { return zone_on_line(R, cone, ZoneLattice::M_tilde); }

bool vw_oracle(const MPoint& R, const ConeForm& cone) { return zone_on_line(R, cone, ZoneLattice::M_shifted); }

RankOracleDims rank_oracle_dims(const MPoint& R, const ConeForm& cone) {
    const Quotient k = quotient_for(R, cone);
    const Integer m = canonical_index(cone);
    const MPoint phi = central_degree(cone) - m * R;

    const std::vector<MPoint> base = iso_functionals(R, 0, cone);
    const std::vector<MPoint> at_minus_one = iso_functionals(R, -1, cone);

    RankOracleDims d;
    d.t1 = kernel_dim(base, k, R);

    std::vector<MPoint> v = base;
    v.push_back(phi);
    d.v = kernel_dim(v, k, R);

    std::vector<MPoint> shifts = base;
    append(shifts, iso_functionals(R, m, cone));
    d.v_shifts = kernel_dim(shifts, k, R);

    std::vector<MPoint> w = base;
    append(w, at_minus_one);
    d.w = kernel_dim(w, k, R);

    std::vector<MPoint> vw = v;
    append(vw, at_minus_one);
    d.vw = kernel_dim(vw, k, R);

    std::vector<MPoint> qg = v;
    for (Integer kappa = 1; kappa < m; ++kappa) append(qg, iso_functionals(R, kappa, cone));
    d.qg = kernel_dim(qg, k, R);
    return d;
}

GradedDims w_dims_oracle(const HilbertData& h, const ConeForm& cone) {
    require_embdim(h, "w_dims_oracle");
    const Integer bound = oracle_bound();
    if (cone.order() > bound)
        throw OracleBoundExceeded("w_dims_oracle: n = " + cone.order().str() + " exceeds oracle bound " + bound.str());
    GradedDims out = t1_graded(h);
    for (GradedDim& g : out) g.dim = rank_oracle_dims(degree_vector(h, g.degree), cone).w;
    return out;
}

// ---------------------------------------------------------------------------

Singularity Singularity::from(const SingularityForm& form) {
    NQForm nq = to_nq(form);
    ConeForm cone = std::holds_alternative<ConeForm>(form)     ? std::get<ConeForm>(form)
                    : std::holds_alternative<IntervalUD>(form) ? interval_to_cone(std::get<IntervalUD>(form))
                                                               : nq_to_cone(nq);
    IntervalUD interval = cone_to_interval(cone);
    return Singularity{nq, nq_to_abc(nq), cone, interval, nq_to_cf(nq), hilbert_basis(cone)};
}

Classification classify(const SingularityForm& s) {
    const IntervalUD interval = interval_of(s);
    const Rational len = interval.length();
    Classification c;
    c.grounded = is_grounded(interval);
    c.t0_singularity = len == 1;
    c.t_singularity = len.is_integer() && len >= 1;
    c.qg_exists = len >= 1 && c.grounded;
    if ((c.t0_singularity && !c.t_singularity) || (c.t_singularity && !c.qg_exists) || (len >= 1 && !c.grounded))
        throw std::logic_error("classify: implication chain broken for " + format(interval));
    return c;
}

T1Report totals(const SingularityForm& s) { return totals(Singularity::from(s)); }

T1Report totals(const Singularity& s) {
    const HilbertData& h = s.hilbert;
    require_embdim(h, "totals");

    const GradedDims t1 = t1_graded(h);
    const GradedDims v = v_dims(h);
    const GradedDims vw = vw_dims(h, s.interval, s.abc);
    const GradedDims qg = qg_dims(h, s.interval);
    std::optional<GradedDims> w;
    if (s.cone.order() <= oracle_bound()) w = w_dims_oracle(h, s.cone);

    std::optional<DegreeId> last;
    if (h.grounded) last = DegreeId{*h.central_index, to_int64(h.a(*h.central_index)) - 1};

    T1Report report;
    report.embdim = h.e();
    report.flags = classify(s.interval);
    if (w) report.totals.w = 0;
    for (std::size_t j = 0; j < t1.size(); ++j) {
        DegreeReport d;
        d.degree = t1[j].degree;
        d.R = degree_vector(h, d.degree);
        d.dim_t1 = t1[j].dim;
        d.dim_v = v[j].dim;
        d.dim_vw = vw[j].dim;
        d.dim_qg = qg[j].dim;
        if (w) d.dim_w = (*w)[j].dim;
        d.last_deformation = last && *last == d.degree;

        const std::string at = " at " + to_string(d.degree);
        require(d.dim_qg <= d.dim_vw && d.dim_vw <= d.dim_v && d.dim_v <= d.dim_t1, "qG <= VW <= V <= T1" + at);
        if (d.dim_w) require(d.dim_vw <= *d.dim_w && *d.dim_w <= d.dim_t1, "VW <= W <= T1" + at);

        report.totals.t1 += d.dim_t1;
        report.totals.v += d.dim_v;
        report.totals.vw += d.dim_vw;
        report.totals.qg += d.dim_qg;
        if (d.dim_w) *report.totals.w += *d.dim_w;
        report.per_degree.push_back(std::move(d));
    }

    const T1Totals& t = report.totals;
    const auto e = static_cast<std::int64_t>(h.e());
    const std::int64_t gap = t.v - t.vw;
    require(gap == e - 4 || gap == e - 5, "dim V - dim VW in {e-4, e-5}");
    if (s.abc.b == 1) require(t.qg == 0 && t.vw == 0, "gcd(n, q+1) = 1 forces qG = VW = 0");
    if (report.flags.t_singularity) require(t.qg == t.vw, "integral |I| forces qG = VW");
    require(t.qg <= t.vw && t.vw <= t.qg + 1, "qG <= VW <= qG + 1");
    return report;
}

// ---------------------------------------------------------------------------

CayleyFamily cayley_family(const IntervalUD& interval) {
    CayleyFamily f;
    const Integer& m = interval.m;
    Rational lower = interval.lower();
    Rational upper = interval.upper();
    if (is_grounded(interval)) {
        FloorData fd = ab_floor_data(interval);
        f.d = (fd.A + fd.B).floor();
        lower = -fd.A;
        upper = fd.B - Rational(f.d);
    }
    f.i_prime_lower = lower;
    f.i_prime_upper = upper;
    f.degenerate_base = lower == upper;

    const std::int64_t d = to_int64(f.d);
    const auto width = static_cast<std::size_t>(d) + 2;
    auto base_ray = [&](const Rational& x) {
        std::vector<Integer> ray(width, Integer(0));
        ray[0] = (x * Rational(m)).num();
        ray[1] = m;
        return ray;
    };
    f.rays.push_back(base_ray(lower));
    if (!f.degenerate_base) f.rays.push_back(base_ray(upper));
    for (std::int64_t j = 1; j <= d; ++j) {
        for (int x : {0, 1}) {
            std::vector<Integer> ray(width, Integer(0));
            ray[0] = x;
            ray[1 + static_cast<std::size_t>(j)] = 1;
            f.rays.push_back(std::move(ray));
        }
    }
    return f;
}

}  // namespace cqs
