// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Reference values come from the test-side oracles in oracles.hpp wherever
// the library would otherwise be checking itself.

#include "cqs/cone_geometry.hpp"
#include "cqs/deformations.hpp"
#include "cqs/report.hpp"
#include "cqs/representations.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace cqs;

namespace {

/// Collects the first few mismatches so a FAIL line says what went wrong.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (samples_.size() < 5) samples_.push_back(what);
    }
    std::int64_t checks() const { return checks_; }
    std::int64_t failures() const { return failures_; }
    const std::vector<std::string>& samples() const { return samples_; }

private:
    std::int64_t checks_ = 0;
    std::int64_t failures_ = 0;
    std::vector<std::string> samples_;
};

std::string where(const NQForm& s, const std::string& detail = "") {
    return format(s) + (detail.empty() ? "" : " " + detail);
}

/// Canonical classes with 2 <= n <= 60, q != n-1: the sweep shared by 2-5 and 8.
const std::vector<NQForm>& sweep() {
    static const std::vector<NQForm> s = cqs_test::classes(60, false, false);
    return s;
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;  // 0 means no limit
    std::function<std::string(Tally&)> body;  // returns an optional note
};

// 1 ---------------------------------------------------------------------------

std::string worked_example(Tally& t) {
    const ReportDocument doc = analyze("nq:20/11");
    const Singularity& s = doc.singularity;
    const HilbertData& h = s.hilbert;
    t.check(s.cf.coefficients == std::vector<Integer>{3, 2, 2, 2, 3}, "continued fraction");
    t.check(h.e() == 7, "e");
    t.check(h.central_index == std::size_t{4} && h.central_degree == h.r(4), "central degree is r^4");
    t.check(canonical_index(s.cone) == 5, "m");
    t.check(s.abc.a == 5 && s.abc.b == 4 && s.abc.c == 3, "abc");
    t.check(s.c_prime() == 3, "c'");
    t.check(s.interval.lower() == Rational(-2, 5) && s.interval.upper() == Rational(2, 5), "interval");

    const T1Report& r = *doc.t1;
    using Row = std::tuple<std::size_t, std::int64_t, int, int, int, int>;  // i, k, T1, V, VW, qG
    const std::vector<Row> expected{{2, 1, 1, 0, 0, 0}, {2, 2, 1, 0, 0, 0}, {3, 1, 2, 1, 0, 0}, {4, 1, 2, 1, 1, 0},
                                    {5, 1, 2, 1, 0, 0}, {6, 1, 1, 0, 0, 0}, {6, 2, 1, 0, 0, 0}};
    std::vector<Row> got;
    for (const DegreeReport& d : r.per_degree)
        got.emplace_back(d.degree.i, d.degree.k, d.dim_t1, d.dim_v, d.dim_vw, d.dim_qg);
    t.check(got == expected, "per-degree split");
    t.check(r.totals.t1 == 10 && r.totals.v == 3 && r.totals.vw == 1 && r.totals.qg == 0, "totals");
    return "";
}

// 2 ---------------------------------------------------------------------------

std::string four_case_totals(Tally& t) {
    for (const NQForm& s : sweep()) {
        const Singularity sing = Singularity::from(s);
        const HilbertData& h = sing.hilbert;
        const cqs_test::PredictedTotals p = cqs_test::predicted_totals(sing.interval, h.e());
        const std::int64_t v = total(v_dims(h));
        const std::int64_t vw = total(vw_dims(h, sing.interval, sing.abc));
        const std::int64_t qg = total(qg_dims(h, sing.interval));
        std::ostringstream d;
        d << "V=" << v << "/" << p.v << " VW=" << vw << "/" << p.vw << " qG=" << qg << "/" << p.qg;
        t.check(v == p.v && vw == p.vw && qg == p.qg, where(s, d.str()));
    }
    return std::to_string(sweep().size()) + " classes";
}

// 3 ---------------------------------------------------------------------------

std::string oracle_equivalence(Tally& t) {
    std::int64_t degrees = 0;
    for (const NQForm& s : sweep()) {
        const Singularity sing = Singularity::from(s);
        const HilbertData& h = sing.hilbert;
        const ConeForm& c = sing.cone;
        const Integer m = canonical_index(c);
        const GradedDims v = v_dims(h);
        const GradedDims vw = vw_dims(h, sing.interval, sing.abc);
        const GradedDims qg = qg_dims(h, sing.interval);
        for (std::size_t j = 0; j < v.size(); ++j) {
            ++degrees;
            const DegreeId deg = v[j].degree;
            const MPoint R = degree_vector(h, deg);
            const std::string at = where(s, to_string(deg));
            const RankOracleDims o = rank_oracle_dims(R, c);

            t.check(o.v == v[j].dim, at + " phi kernel vs V");
            t.check(o.v_shifts == v[j].dim, at + " two shifts vs V");
            t.check(o.qg == qg[j].dim, at + " rank oracle vs qG bound");
            t.check(o.vw == vw[j].dim, at + " rank oracle vs VW bound");
            if (v[j].dim > 0) {
                t.check(qg_oracle(R, c) == (qg[j].dim == 1), at + " qg_oracle vs qG bound");
                t.check(vw_oracle(R, c) == (vw[j].dim == 1), at + " vw_oracle vs VW bound");
            }

            // Direction-level: stable iso against iso at kappa and kappa + m.
            std::vector<NPoint> dirs{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
            const MPoint phi = central_degree(c) - m * R;
            if (phi != MPoint{0, 0}) dirs.push_back(primitive(NPoint{phi.v, -phi.u}));
            for (const NPoint& a : dirs) {
                const DeformationDirection xi{a, deg, R};
                for (const Integer kappa : {Integer(-1), Integer(0)}) {
                    const bool two = iso_oracle(xi, kappa, c) && iso_oracle(xi, kappa + m, c);
                    t.check(stable_iso_oracle(xi, kappa, c) == two, at + " stable iso vs two shifts");
                }
            }
        }
    }
    return std::to_string(degrees) + " degrees";
}

// 4 ---------------------------------------------------------------------------

std::string gap_dichotomy(Tally& t) {
    std::vector<std::string> witnesses;
    for (const NQForm& s : sweep()) {
        const T1Report r = totals(s);
        const std::int64_t e = r.embdim;
        const std::int64_t gap = r.totals.v - r.totals.vw;
        t.check(gap == e - 4 || gap == e - 5, where(s, "gap " + std::to_string(gap)));
        if (e < 6) continue;
        for (const DegreeReport& d : r.per_degree)
            if (d.dim_v > d.dim_vw) {
                witnesses.push_back(format(s));
                break;
            }
    }
    t.check(!witnesses.empty(), "no witness with e >= 6");
    std::string note = std::to_string(witnesses.size()) + " witnesses with e >= 6, e.g.";
    for (std::size_t j = 0; j < witnesses.size() && j < 3; ++j) note += " " + witnesses[j];
    return note;
}

// 5 ---------------------------------------------------------------------------

std::string inequalities(Tally& t) {
    std::int64_t coprime = 0, integral = 0;
    for (const NQForm& s : sweep()) {
        const Singularity sing = Singularity::from(s);
        const T1Totals x = totals(sing).totals;
        if (cqs::gcd(s.n, s.q + 1) == 1) {
            ++coprime;
            t.check(x.qg == 0 && x.vw == 0, where(s, "gcd(n,q+1)=1"));
        }
        if (sing.interval.length().den() == 1) {
            ++integral;
            t.check(x.qg == x.vw, where(s, "integral length"));
        }
        t.check(x.qg <= x.vw && x.vw <= x.qg + 1, where(s, "qG <= VW <= qG+1"));
    }
    return std::to_string(coprime) + " with gcd(n,q+1)=1, " + std::to_string(integral) + " with integral |I|";
}

// 6 ---------------------------------------------------------------------------

std::string round_trips(Tally& t) {
    std::int64_t n_conv = 0, n_tot = 0;
    for (const NQForm& s : cqs_test::classes(200, true, true)) {
        ++n_conv;
        const ABCForm abc = nq_to_abc(s);
        const ConeForm cone = nq_to_cone(s);
        const IntervalUD iv = cone_to_interval(cone);
        const CFForm cf = nq_to_cf(s);
        const std::string at = where(s);
        t.check(abc_to_nq(abc) == s, at + " abc");
        t.check(cone_to_nq(cone) == s, at + " cone");
        t.check(cone_to_nq(interval_to_cone(iv)) == s, at + " interval");
        t.check(interval_to_abc(iv) == abc, at + " interval->abc");
        t.check(cf_to_nq(cf) == s, at + " cf");
        for (const SingularityForm& f : {SingularityForm(s), SingularityForm(abc), SingularityForm(cone),
                                         SingularityForm(iv), SingularityForm(cf)}) {
            t.check(parse_form(format(f)) == f, at + " text " + format(f));
            t.check(to_nq(f) == s, at + " to_nq " + format(f));
        }
    }
    for (const NQForm& s : cqs_test::classes(60, false, true)) {
        ++n_tot;
        t.check(totals(s).totals == totals(q_inverse(s)).totals, where(s, "q_inverse totals"));
    }
    return std::to_string(n_conv) + " conversions, " + std::to_string(n_tot) + " totals pairs";
}

// 7 ---------------------------------------------------------------------------

std::string hilbert_oracle(Tally& t) {
    std::int64_t eta_checks = 0;
    for (const NQForm& s : cqs_test::classes(200, true, true)) {
        const ConeForm c = nq_to_cone(s);
        const HilbertData h = hilbert_basis(c);
        const std::string at = where(s);
        t.check(cqs_test::hull_hilbert_basis(c) == h.basis, at + " recursion vs hull");
        for (std::size_t i = 2; i + 1 <= h.e(); ++i)
            t.check(h.r(i - 1) + h.r(i + 1) == h.a(i) * h.r(i), at + " three-term at " + std::to_string(i));
        // With e = 3 both ratios equal a_2 exactly; the floor identity is for e >= 4.
        if (h.e() >= 4)
            for (std::size_t i = 2; i + 1 <= h.e(); ++i) {
                ++eta_checks;
                t.check(eta(h, c, i).floor() == h.a(i) - 1, at + " floor(eta) at " + std::to_string(i));
            }
        if (h.grounded && h.e() >= 4) {
            const FloorData f = ab_floor_data(cone_to_interval(c));
            const std::size_t l = *h.central_index;
            t.check(h.a(l) == f.a_central, at + " a at the central index");
            const Rational expected =
                Rational(1) + std::min(Rational(f.floor_a) + f.B, f.A + Rational(f.floor_b));
            t.check(eta(h, c, l) == expected, at + " eta at the central index");
        }
    }
    return std::to_string(eta_checks) + " eta checks";
}

// 8 ---------------------------------------------------------------------------

std::string w_consistency(Tally& t) {
    for (const NQForm& s : sweep()) {
        const Singularity sing = Singularity::from(s);
        const HilbertData& h = sing.hilbert;
        const GradedDims w = w_dims_oracle(h, sing.cone);
        const GradedDims vw = vw_dims(h, sing.interval, sing.abc);
        for (std::size_t j = 0; j < w.size(); ++j) {
            const MPoint R = degree_vector(h, w[j].degree);
            const RankOracleDims o = rank_oracle_dims(R, sing.cone);
            const std::string at = where(s, to_string(w[j].degree));
            // V ∩ W by intersecting the two constraint sets directly.
            t.check(o.vw == vw[j].dim, at + " dim(V∩W) vs VW");
            t.check(w[j].dim >= vw[j].dim, at + " W >= VW");
            t.check(o.w == w[j].dim, at + " W");
        }
    }
    return "";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "worked example nq:20/11", 1.0, worked_example},
        {2, "four-case totals, n <= 60", 30.0, four_case_totals},
        {3, "oracle equivalence per degree, n <= 60", 120.0, oracle_equivalence},
        {4, "V/VW gap dichotomy with witnesses", 0.0, gap_dichotomy},
        {5, "qG/VW inequalities", 0.0, inequalities},
        {6, "round-trips and q_inverse invariance", 0.0, round_trips},
        {7, "Hilbert basis against convex hull, n <= 200", 0.0, hilbert_oracle},
        {8, "W consistency, n <= 60", 0.0, w_consistency},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Tally t;
        std::string note;
        std::string error;
        const auto start = std::chrono::steady_clock::now();
        try {
            note = c.body(t);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_seconds == 0.0 || secs < c.limit_seconds;
        const bool ok = error.empty() && t.failures() == 0 && t.checks() > 0 && in_time;
        if (!ok) ++failed;

        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (ok ? "PASS" : "FAIL") << " AC" << c.id << " " << c.name << ": " << t.checks() << " checks, "
             << t.failures() << " failures, " << secs << " s";
        if (c.limit_seconds > 0) line << " (limit " << c.limit_seconds << " s)";
        if (!note.empty()) line << "; " << note;
        std::cout << line.str() << "\n";
        if (!error.empty()) std::cout << "    exception: " << error << "\n";
        if (!in_time) std::cout << "    over the time limit\n";
        for (const std::string& s : t.samples()) std::cout << "    " << s << "\n";
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
