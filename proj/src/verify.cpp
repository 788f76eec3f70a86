#include "cqs/errors.hpp"
#include "cqs/report.hpp"

#include <map>
#include <ostream>
#include <sstream>

namespace cqs {

namespace {

class Checker {
public:
    Checker(NQForm nq, const VerifyOptions& opts) : nq_(std::move(nq)), opts_(opts) {}

    void check(bool ok, const std::string& property, const std::string& degree, const std::string& detail = {}) {
        ++counts_[property];
        if (!ok) failures_.push_back({nq_, degree, property, detail});
    }

    bool fault(const char* name) const { return opts_.inject_fault && *opts_.inject_fault == name; }

    std::map<std::string, std::int64_t> counts_;
    std::vector<VerifyFailure> failures_;

private:
    NQForm nq_;
    const VerifyOptions& opts_;
};

template <class T>
std::string mismatch(const char* what_a, const T& a, const char* what_b, const T& b) {
    std::ostringstream os;
    os << what_a << ' ' << a << " vs " << what_b << ' ' << b;
    return os.str();
}

void check_round_trips(Checker& c, const NQForm& nq) {
    for (FormTag tag : {FormTag::nq, FormTag::abc, FormTag::cone, FormTag::interval, FormTag::cf}) {
        SingularityForm f = convert(nq, tag);
        bool ok = to_nq(f) == nq && to_nq(parse_form(format(f))) == nq;
        c.check(ok, "round-trip", "", std::string(tag_name(tag)) + " " + format(f));
    }
    const ConeForm cone = nq_to_cone(nq);
    const IntervalUD i = cone_to_interval(cone);
    c.check(cone_to_interval(interval_to_cone(i)) == i, "round-trip", "", "interval -> cone -> interval");
    c.check(interval_to_abc(i) == nq_to_abc(nq), "round-trip", "", "abc via interval");
    c.check(q_inverse(q_inverse(nq)) == nq, "round-trip", "", "q' involution");
}

void check_hilbert(Checker& c, const Singularity& s) {
    const HilbertData& h = s.hilbert;
    const HilbertData o = hilbert_basis_oracle(s.cone);
    c.check(o.basis == h.basis && o.coeffs == h.coeffs, "hilbert-oracle", "");
    for (std::size_t i = 2; i + 1 <= h.e(); ++i)
        c.check(h.r(i - 1) + h.r(i + 1) == h.a(i) * h.r(i), "three-term", "r^" + std::to_string(i));
}

/// Totals predicted from the interval data alone.
void check_totals_formula(Checker& c, const Singularity& s, const T1Report& r) {
    const auto e = static_cast<std::int64_t>(s.hilbert.e());
    std::int64_t v = e - 4, vw = 0, qg = 0;
    if (is_grounded(s.interval)) {
        FloorData f = ab_floor_data(s.interval);
        Rational inv_m(1, s.interval.m);
        v += to_int64(f.floor_a + f.floor_b);
        qg = to_int64((f.A + f.B).floor());
        vw = (f.frac_a == inv_m || f.frac_b == inv_m) ? qg : to_int64(f.floor_a + f.floor_b) + 1;
    }
    c.check(r.totals.v == v, "totals-formula", "", mismatch("V", r.totals.v, "expected", v));
    c.check(r.totals.vw == vw, "totals-formula", "", mismatch("VW", r.totals.vw, "expected", vw));
    c.check(r.totals.qg == qg, "totals-formula", "", mismatch("qG", r.totals.qg, "expected", qg));
    const std::int64_t gap = r.totals.v - r.totals.vw;
    c.check(gap == e - 4 || gap == e - 5, "gap-dichotomy", "", mismatch("gap", gap, "e", e));
}

void check_degrees(Checker& c, const Singularity& s, const T1Report& r) {
    const ConeForm& cone = s.cone;
    std::optional<FloorData> floors;
    if (s.hilbert.grounded) floors = ab_floor_data(s.interval);
    const Rational inv_m(1, s.interval.m);

    for (const DegreeReport& d : r.per_degree) {
        const std::string deg = "-" + to_string(d.degree);
        const RankOracleDims o = rank_oracle_dims(d.R, cone);

        int closed_vw = d.dim_vw;
        int closed_qg = d.dim_qg;
        if (c.fault("vw-bound") && d.degree.i == s.hilbert.central_index.value_or(0)) closed_vw = 1 - closed_vw;
        if (c.fault("qg-bound") && d.degree.i == s.hilbert.central_index.value_or(0)) closed_qg = 1 - closed_qg;

        c.check(o.t1 == d.dim_t1, "t1-list", deg, mismatch("oracle", o.t1, "closed form", d.dim_t1));
        c.check(o.v == d.dim_v, "v-kernel", deg, mismatch("oracle", o.v, "closed form", d.dim_v));
        c.check(o.v_shifts == o.v, "shift-stability", deg, mismatch("two shifts", o.v_shifts, "phi kernel", o.v));

        const int qg_containment = (d.dim_v > 0 && qg_oracle(d.R, cone)) ? 1 : 0;
        const int vw_containment = (d.dim_v > 0 && vw_oracle(d.R, cone)) ? 1 : 0;
        c.check(qg_containment == closed_qg, "qg-bound", deg,
                mismatch("containment", qg_containment, "closed form", closed_qg));
        c.check(o.qg == closed_qg, "qg-bound", deg, mismatch("rank oracle", o.qg, "closed form", closed_qg));
        c.check(vw_containment == closed_vw, "vw-bound", deg,
                mismatch("containment", vw_containment, "closed form", closed_vw));
        c.check(o.vw == closed_vw, "vw-bound", deg, mismatch("rank oracle", o.vw, "closed form", closed_vw));
        c.check(o.w >= o.vw && o.w <= o.t1, "w-contains-vw", deg, mismatch("W", o.w, "VW", o.vw));
        if (d.dim_w) c.check(*d.dim_w == o.w, "w-contains-vw", deg, mismatch("report W", *d.dim_w, "oracle", o.w));

        if (d.degree.k >= 2 && d.degree.i != s.hilbert.central_index.value_or(0))
            c.check(o.qg == 0 && o.vw == 0, "central-only", deg);

        if (d.last_deformation) {
            const FloorData& f = *floors;
            const bool qg_expected = f.frac_a + f.frac_b >= 1;
            c.check((o.qg == 1) == qg_expected, "last-deformation", deg, "qG iff {A}+{B} >= 1");
            if (f.frac_a != inv_m && f.frac_b != inv_m) c.check(o.vw == 1, "last-deformation", deg, "VW when {A},{B} != 1/m");
            else c.check(o.vw == o.qg, "last-deformation", deg, "VW iff qG when {A} or {B} = 1/m");
        }
        if (d.degree.k >= 2 && d.dim_qg == 1) {
            bool prev_qg = false;
            for (const DegreeReport& p : r.per_degree)
                if (p.degree.i == d.degree.i && p.degree.k == d.degree.k - 1) prev_qg = p.dim_qg == 1;
            c.check(prev_qg, "qg-initial-segment", deg);
        }
    }
}

void check_invariance(Checker& c, const NQForm& nq, const T1Report& r) {
    const T1Report mirrored = totals(q_inverse(nq));
    c.check(mirrored.totals == r.totals && mirrored.flags == r.flags, "inverse-invariance", "",
            "against " + format(q_inverse(nq)));
}

Checker verify_class(const NQForm& nq, const VerifyOptions& opts) {
    Checker c(nq, opts);
    try {
        check_round_trips(c, nq);
        if (nq.is_a_type()) return c;
        const Singularity s = Singularity::from(nq);
        check_hilbert(c, s);
        const T1Report r = totals(s);
        check_totals_formula(c, s, r);
        check_degrees(c, s, r);
        check_invariance(c, nq, r);
    } catch (const std::logic_error& e) {
        c.check(false, "internal-consistency", "", e.what());
    }
    return c;
}

}  // namespace

VerifySummary verify(std::int64_t n_max, const VerifyOptions& opts) {
    const Integer bound = oracle_bound();
    if (n_max > bound)
        throw OracleBoundExceeded("verify: n_max = " + std::to_string(n_max) + " exceeds oracle bound " + bound.str() +
                                  " (set CQS_ORACLE_BOUND to raise it)");
    std::vector<NQForm> classes;
    for (std::int64_t n = 2; n <= n_max; ++n)
        for (std::int64_t q = 1; q < n; ++q)
            if (gcd(n, q) == 1) classes.emplace_back(n, q);

    std::vector<std::optional<Checker>> results(classes.size());
    parallel_for(classes.size(), opts.jobs, [&](std::size_t i) { results[i].emplace(verify_class(classes[i], opts)); });

    VerifySummary summary;
    std::map<std::string, std::int64_t> counts;
    for (const auto& r : results) {
        for (const auto& [k, v] : r->counts_) counts[k] += v;
        summary.failures.insert(summary.failures.end(), r->failures_.begin(), r->failures_.end());
    }
    summary.classes = static_cast<std::int64_t>(classes.size());
    for (const auto& [k, v] : counts) {
        summary.checks += v;
        summary.checks_by_property.emplace_back(k, v);
    }
    return summary;
}

void write_verify(std::ostream& os, const VerifySummary& s) {
    for (const VerifyFailure& f : s.failures) {
        os << "FAIL n=" << f.nq.n << " q=" << f.nq.q;
        if (!f.degree.empty()) os << " degree=" << f.degree;
        os << " property=" << f.property;
        if (!f.detail.empty()) os << ": " << f.detail;
        os << '\n';
    }
    for (const auto& [property, count] : s.checks_by_property) os << property << ": " << count << " checks\n";
    os << s.classes << " classes, " << s.checks << " checks, " << s.failures.size() << " failures\n";
    os << (s.ok() ? "all checks passed" : "verification FAILED") << '\n';
}

}  // namespace cqs
