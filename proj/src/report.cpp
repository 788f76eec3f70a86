#include "cqs/report.hpp"

#include "cqs/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace cqs {

using nlohmann::json;

namespace {

// JSON primitives -------------------------------------------------------------

json int_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

Integer int_from(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw ParseError("expected an integer, got " + j.dump());
}

json int_list(const std::vector<Integer>& xs) {
    json out = json::array();
    for (const Integer& x : xs) out.push_back(int_json(x));
    return out;
}

std::vector<Integer> int_list_from(const json& j) {
    std::vector<Integer> out;
    for (const json& x : j) out.push_back(int_from(x));
    return out;
}

json point_json(const MPoint& p) { return json::array({int_json(p.u), int_json(p.v)}); }
json point_json(const NPoint& p) { return json::array({int_json(p.x), int_json(p.y)}); }

MPoint mpoint_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [u, v], got " + j.dump());
    return {int_from(j[0]), int_from(j[1])};
}

NPoint npoint_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [x, y], got " + j.dump());
    return {int_from(j[0]), int_from(j[1])};
}

Rational rat_from(const json& j) {
    if (!j.is_string()) throw ParseError("expected a rational string \"p/q\", got " + j.dump());
    return Rational::parse(j.get<std::string>());
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

// Sections ------------------------------------------------------------------

json forms_json(const Singularity& s) {
    return {
        {"nq", {{"n", int_json(s.nq.n)}, {"q", int_json(s.nq.q)}, {"text", format(s.nq)}}},
        {"abc",
         {{"a", int_json(s.abc.a)},
          {"b", int_json(s.abc.b)},
          {"c", int_json(s.abc.c)},
          {"c_prime", int_json(s.c_prime())},
          {"text", format(s.abc)}}},
        {"cone", {{"alpha", point_json(s.cone.alpha)}, {"beta", point_json(s.cone.beta)}, {"text", format(s.cone)}}},
        {"interval",
         {{"g", int_json(s.interval.g)},
          {"h", int_json(s.interval.h)},
          {"m", int_json(s.interval.m)},
          {"length", s.interval.length().str()},
          {"text", format(s.interval)}}},
        {"cf", {{"coefficients", int_list(s.cf.coefficients)}, {"text", format(s.cf)}}},
    };
}

json hilbert_json(const HilbertData& h) {
    json basis = json::array();
    for (const MPoint& p : h.basis) basis.push_back(point_json(p));
    json central_index = h.central_index ? json(*h.central_index) : json(nullptr);
    return {
        {"e", h.e()},
        {"basis", basis},
        {"coefficients", int_list(h.coeffs)},
        {"central_degree", point_json(h.central_degree)},
        {"central_index", central_index},
        {"grounded", h.grounded},
        {"equations", binomial_equations(h)},
    };
}

HilbertData hilbert_from(const json& j) {
    HilbertData h;
    for (const json& p : field(j, "basis")) h.basis.push_back(mpoint_from(p));
    h.coeffs = int_list_from(field(j, "coefficients"));
    h.central_degree = mpoint_from(field(j, "central_degree"));
    const json& ci = field(j, "central_index");
    if (!ci.is_null()) h.central_index = ci.get<std::size_t>();
    h.grounded = field(j, "grounded").get<bool>();
    return h;
}

json floors_json(const FloorData& f) {
    return {
        {"A", f.A.str()},           {"B", f.B.str()},           {"floor_A", int_json(f.floor_a)},
        {"floor_B", int_json(f.floor_b)}, {"frac_A", f.frac_a.str()}, {"frac_B", f.frac_b.str()},
        {"a_central", int_json(f.a_central)},
    };
}

FloorData floors_from(const json& j) {
    FloorData f;
    f.A = rat_from(field(j, "A"));
    f.B = rat_from(field(j, "B"));
    f.floor_a = int_from(field(j, "floor_A"));
    f.floor_b = int_from(field(j, "floor_B"));
    f.frac_a = rat_from(field(j, "frac_A"));
    f.frac_b = rat_from(field(j, "frac_B"));
    f.a_central = int_from(field(j, "a_central"));
    return f;
}

json flags_json(const Classification& c) {
    return {
        {"grounded", c.grounded},
        {"t_singularity", c.t_singularity},
        {"t0_singularity", c.t0_singularity},
        {"qg_exists", c.qg_exists},
    };
}

Classification flags_from(const json& j) {
    Classification c;
    c.grounded = field(j, "grounded").get<bool>();
    c.t_singularity = field(j, "t_singularity").get<bool>();
    c.t0_singularity = field(j, "t0_singularity").get<bool>();
    c.qg_exists = field(j, "qg_exists").get<bool>();
    return c;
}

template <class T>
json optional_json(const std::optional<T>& x) {
    return x ? json(*x) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

json t1_json(const T1Report& r) {
    json rows = json::array();
    for (const DegreeReport& d : r.per_degree) {
        rows.push_back({
            {"i", d.degree.i},
            {"k", d.degree.k},
            {"degree", "-" + to_string(d.degree)},
            {"R", point_json(d.R)},
            {"dim_t1", d.dim_t1},
            {"dim_v", d.dim_v},
            {"dim_w", optional_json(d.dim_w)},
            {"dim_vw", d.dim_vw},
            {"dim_qg", d.dim_qg},
            {"last_deformation", d.last_deformation},
        });
    }
    return {
        {"per_degree", rows},
        {"totals",
         {{"t1", r.totals.t1},
          {"v", r.totals.v},
          {"w", optional_json(r.totals.w)},
          {"vw", r.totals.vw},
          {"qg", r.totals.qg},
          {"gap", r.totals.v - r.totals.vw}}},
        {"w_source", r.totals.w ? "lattice enumeration" : "skipped: n above oracle bound"},
        {"flags", flags_json(r.flags)},
        {"embdim", r.embdim},
    };
}

T1Report t1_from(const json& j) {
    T1Report r;
    for (const json& row : field(j, "per_degree")) {
        DegreeReport d;
        d.degree = {field(row, "i").get<std::size_t>(), field(row, "k").get<std::int64_t>()};
        d.R = mpoint_from(field(row, "R"));
        d.dim_t1 = field(row, "dim_t1").get<int>();
        d.dim_v = field(row, "dim_v").get<int>();
        d.dim_w = optional_from<int>(field(row, "dim_w"));
        d.dim_vw = field(row, "dim_vw").get<int>();
        d.dim_qg = field(row, "dim_qg").get<int>();
        d.last_deformation = field(row, "last_deformation").get<bool>();
        r.per_degree.push_back(d);
    }
    const json& t = field(j, "totals");
    r.totals.t1 = field(t, "t1").get<std::int64_t>();
    r.totals.v = field(t, "v").get<std::int64_t>();
    r.totals.w = optional_from<std::int64_t>(field(t, "w"));
    r.totals.vw = field(t, "vw").get<std::int64_t>();
    r.totals.qg = field(t, "qg").get<std::int64_t>();
    r.flags = flags_from(field(j, "flags"));
    r.embdim = field(j, "embdim").get<std::size_t>();
    return r;
}

json cayley_json(const CayleyFamily& f) {
    json rays = json::array();
    for (const auto& ray : f.rays) rays.push_back(int_list(ray));
    return {
        {"d", int_json(f.d)},
        {"i_prime", json::array({f.i_prime_lower.str(), f.i_prime_upper.str()})},
        {"i_prime_length", (f.i_prime_upper - f.i_prime_lower).str()},
        {"degenerate_base", f.degenerate_base},
        {"rays", rays},
    };
}

CayleyFamily cayley_from(const json& j) {
    CayleyFamily f;
    f.d = int_from(field(j, "d"));
    const json& ip = field(j, "i_prime");
    if (!ip.is_array() || ip.size() != 2) throw ParseError("i_prime must be a pair of rationals");
    f.i_prime_lower = rat_from(ip[0]);
    f.i_prime_upper = rat_from(ip[1]);
    f.degenerate_base = field(j, "degenerate_base").get<bool>();
    for (const json& ray : field(j, "rays")) f.rays.push_back(int_list_from(ray));
    return f;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

// ---------------------------------------------------------------------------

ReportDocument analyze(const std::string& input, const AnalyzeOptions& opts) {
    Singularity s = Singularity::from(parse_form(input));
    if (s.hilbert.e() <= 3 && !opts.allow_degenerate)
        throw DegenerateClass("embedding dimension " + std::to_string(s.hilbert.e()) + ": " + format(s.nq) +
                              " is an A_{n-1} singularity (q = n-1), which is excluded from the deformation "
                              "analysis; pass --allow-degenerate for the remaining data");
    ReportDocument doc{kSchemaVersion, input, s, std::nullopt, std::nullopt, classify(s.interval), std::nullopt};
    if (s.hilbert.grounded) doc.floors = ab_floor_data(s.interval);
    if (s.hilbert.e() >= 4) doc.t1 = totals(s);
    if (opts.cayley) doc.cayley = cayley_family(s.interval);
    return doc;
}

std::string to_json(const ReportDocument& doc, int indent) {
    json j = {
        {"schema_version", doc.schema_version},
        {"input", doc.input},
        {"forms", forms_json(doc.singularity)},
        {"hilbert", hilbert_json(doc.singularity.hilbert)},
        {"central", doc.floors ? floors_json(*doc.floors) : json(nullptr)},
        {"t1", doc.t1 ? t1_json(*doc.t1) : json(nullptr)},
        {"classification", flags_json(doc.flags)},
    };
    j["classification"]["embdim"] = doc.singularity.hilbert.e();
    if (doc.cayley) j["cayley"] = cayley_json(*doc.cayley);
    return j.dump(indent);
}

ReportDocument report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        const std::string version = field(j, "schema_version").get<std::string>();
        if (version != kSchemaVersion) throw ParseError("unsupported schema_version '" + version + "'");
        const json& forms = field(j, "forms");
        const json& nq = field(forms, "nq");
        const json& abc = field(forms, "abc");
        const json& cone = field(forms, "cone");
        const json& iv = field(forms, "interval");
        Singularity s{
            NQForm(int_from(field(nq, "n")), int_from(field(nq, "q"))),
            ABCForm(int_from(field(abc, "a")), int_from(field(abc, "b")), int_from(field(abc, "c"))),
            ConeForm(npoint_from(field(cone, "alpha")), npoint_from(field(cone, "beta"))),
            IntervalUD(int_from(field(iv, "g")), int_from(field(iv, "h")), int_from(field(iv, "m"))),
            CFForm(int_list_from(field(field(forms, "cf"), "coefficients"))),
            hilbert_from(field(j, "hilbert")),
        };
        ReportDocument doc{version, field(j, "input").get<std::string>(), s, std::nullopt, std::nullopt,
                           flags_from(field(j, "classification")), std::nullopt};
        if (const json& c = field(j, "central"); !c.is_null()) doc.floors = floors_from(c);
        if (const json& t = field(j, "t1"); !t.is_null()) doc.t1 = t1_from(t);
        if (auto it = j.find("cayley"); it != j.end()) doc.cayley = cayley_from(*it);
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report JSON does not match schema: ") + e.what());
    }
}

void write_text(std::ostream& os, const ReportDocument& doc) {
    const Singularity& s = doc.singularity;
    const HilbertData& h = s.hilbert;
    os << "input     " << doc.input << '\n'
       << "  " << format(s.nq) << '\n'
       << "  " << format(s.abc) << "   (c' = " << s.c_prime() << ")\n"
       << "  " << format(s.cone) << '\n'
       << "  " << format(s.interval) << "   (|I| = " << s.interval.length() << ")\n"
       << "  " << format(s.cf) << '\n';

    os << "\nHilbert basis (e = " << h.e() << ")\n";
    for (std::size_t i = 1; i <= h.e(); ++i) {
        os << "  r^" << i << " = " << h.r(i);
        if (i >= 2 && i + 1 <= h.e()) os << "   a_" << i << " = " << h.a(i);
        os << '\n';
    }
    os << "central degree " << h.central_degree << ", m = " << canonical_index(s.cone);
    if (h.central_index)
        os << ", grounded at r^" << *h.central_index;
    else
        os << ", not grounded";
    os << '\n';
    if (doc.floors)
        os << "interval around 0: [-A, B] with A = " << doc.floors->A << ", B = " << doc.floors->B << '\n';

    os << "\nequations\n";
    for (const std::string& eq : binomial_equations(h)) os << "  " << eq << '\n';

    if (doc.t1) {
        const T1Report& r = *doc.t1;
        os << "\nT^1 by degree (W " << (r.totals.w ? "by lattice enumeration" : "skipped, n above CQS_ORACLE_BOUND")
           << ")\n";
        os << "  " << std::left << std::setw(10) << "degree" << std::setw(14) << "R" << "T1  V  W  VW qG\n";
        for (const DegreeReport& d : r.per_degree) {
            os << "  " << std::left << std::setw(10) << ("-" + to_string(d.degree)) << std::setw(14) << to_string(d.R)
               << std::setw(4) << d.dim_t1 << std::setw(3) << d.dim_v << std::setw(3)
               << (d.dim_w ? std::to_string(*d.dim_w) : "-") << std::setw(3) << d.dim_vw << std::setw(3) << d.dim_qg;
            if (d.last_deformation) os << "last";
            os << '\n';
        }
        os << std::right;
        os << "totals  T1 = " << r.totals.t1 << "  V = " << r.totals.v
           << "  W = " << (r.totals.w ? std::to_string(*r.totals.w) : "-") << "  VW = " << r.totals.vw
           << "  qG = " << r.totals.qg << "  (V - VW = " << r.totals.v - r.totals.vw << ")\n";
    } else {
        os << "\nT^1 not computed: embedding dimension " << h.e() << " <= 3\n";
    }

    os << "\nclassification\n"
       << "  grounded        " << yes_no(doc.flags.grounded) << '\n'
       << "  qG exists       " << yes_no(doc.flags.qg_exists) << '\n'
       << "  T-singularity   " << yes_no(doc.flags.t_singularity) << '\n'
       << "  T0-singularity  " << yes_no(doc.flags.t0_singularity) << '\n';

    if (doc.cayley) {
        os << '\n';
        write_cayley_text(os, *doc.cayley);
    }
}

void write_csv(std::ostream& os, const ReportDocument& doc) {
    os << "i,k,degree,R_u,R_v,dim_t1,dim_v,dim_w,dim_vw,dim_qg,last_deformation\n";
    if (!doc.t1) return;
    for (const DegreeReport& d : doc.t1->per_degree) {
        os << d.degree.i << ',' << d.degree.k << ",-" << to_string(d.degree) << ',' << d.R.u << ',' << d.R.v << ','
           << d.dim_t1 << ',' << d.dim_v << ',' << (d.dim_w ? std::to_string(*d.dim_w) : "") << ',' << d.dim_vw << ','
           << d.dim_qg << ',' << (d.last_deformation ? "true" : "false") << '\n';
    }
}

std::string cayley_to_json(const CayleyFamily& f, int indent) { return cayley_json(f).dump(indent); }

void write_cayley_text(std::ostream& os, const CayleyFamily& f) {
    os << "d = " << f.d << '\n'
       << "I' = [" << f.i_prime_lower << ", " << f.i_prime_upper << "]   (|I'| = " << f.i_prime_upper - f.i_prime_lower
       << ")\n"
       << "degenerate base: " << yes_no(f.degenerate_base) << '\n'
       << "rays of the Cayley cone in Z^" << f.d + 2 << '\n';
    for (const auto& ray : f.rays) {
        os << "  (";
        for (std::size_t j = 0; j < ray.size(); ++j) os << (j ? ", " : "") << ray[j];
        os << ")\n";
    }
}

// ---------------------------------------------------------------------------

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<NQForm> scan_classes(std::int64_t n_max, bool all_q) {
    std::vector<NQForm> out;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        for (std::int64_t q = 1; q < n - 1; ++q) {
            if (gcd(n, q) != 1) continue;
            if (!all_q && q_inverse(NQForm(n, q)).q < q) continue;
            out.emplace_back(n, q);
        }
    }
    return out;
}

std::string scan_row(const NQForm& s) {
    const Singularity sing = Singularity::from(s);
    const T1Report r = totals(sing);
    std::ostringstream os;
    os << s.n << ',' << s.q << ',' << sing.abc.a << ',' << sing.abc.b << ',' << sing.abc.c << ',' << r.embdim << ','
       << (r.flags.grounded ? "true" : "false") << ',' << (r.flags.t_singularity ? "true" : "false") << ','
       << r.totals.t1 << ',' << r.totals.v << ',' << (r.totals.w ? std::to_string(*r.totals.w) : "") << ','
       << r.totals.vw << ',' << r.totals.qg << ',' << r.totals.v - r.totals.vw;
    return os.str();
}

void write_scan(std::ostream& os, std::int64_t n_max, const ScanOptions& opts) {
    const std::vector<NQForm> classes = scan_classes(n_max, opts.all_q);
    std::vector<std::string> rows(classes.size());
    parallel_for(classes.size(), opts.jobs, [&](std::size_t i) { rows[i] = scan_row(classes[i]); });
    os << kScanHeader << '\n';
    for (const std::string& row : rows) os << row << '\n';
}

}  // namespace cqs
