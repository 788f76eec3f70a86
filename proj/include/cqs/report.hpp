#pragma once

// Assembled analyses and their machine/human renderings, plus the sweeps
// behind `scan` and `verify`.

#include "cqs/deformations.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cqs {

inline constexpr const char* kSchemaVersion = "1";

struct ReportDocument {
    std::string schema_version = kSchemaVersion;
    std::string input;
    Singularity singularity;
    std::optional<FloorData> floors;  ///< grounded classes only
    std::optional<T1Report> t1;       ///< absent for e <= 3
    Classification flags;
    std::optional<CayleyFamily> cayley;
};

struct AnalyzeOptions {
    bool allow_degenerate = false;
    bool cayley = false;
};

/// Throws DegenerateClass for e <= 3 unless allow_degenerate is set.
ReportDocument analyze(const std::string& input, const AnalyzeOptions& opts = {});

/// Integers become JSON numbers when they fit in 64 bits and decimal strings
/// otherwise; rationals are always "p/q" strings.
std::string to_json(const ReportDocument& doc, int indent = 2);
/// Inverse of to_json. Throws ParseError on schema violations.
ReportDocument report_from_json(const std::string& text);

void write_text(std::ostream& os, const ReportDocument& doc);
/// One row per T^1 degree.
void write_csv(std::ostream& os, const ReportDocument& doc);

// Cayley --------------------------------------------------------------------

std::string cayley_to_json(const CayleyFamily& f, int indent = 2);
void write_cayley_text(std::ostream& os, const CayleyFamily& f);

// Scan ----------------------------------------------------------------------

inline constexpr const char* kScanHeader = "n,q,a,b,c,e,grounded,t_sing,dim_t1,dim_v,dim_w,dim_vw,dim_qg,gap";

struct ScanOptions {
    bool all_q = false;  ///< keep both q and q' of an isomorphism class
    unsigned jobs = 1;
};

/// (n, q) pairs with 2 <= n <= n_max and q != n-1, ordered by (n, q);
/// restricted to q <= q' unless all_q.
std::vector<NQForm> scan_classes(std::int64_t n_max, bool all_q);

std::string scan_row(const NQForm& s);
/// Header plus one row per class, in (n, q) order regardless of `jobs`.
void write_scan(std::ostream& os, std::int64_t n_max, const ScanOptions& opts = {});

// Verify --------------------------------------------------------------------

struct VerifyOptions {
    unsigned jobs = 1;
    /// Test hook: deliberately corrupt one closed form ("vw-bound", "qg-bound").
    std::optional<std::string> inject_fault;
};

struct VerifyFailure {
    NQForm nq;
    std::string degree;  ///< empty for class-level properties
    std::string property;
    std::string detail;
};

struct VerifySummary {
    std::int64_t classes = 0;
    std::int64_t checks = 0;
    std::vector<std::pair<std::string, std::int64_t>> checks_by_property;
    std::vector<VerifyFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Oracle-versus-closed-form sweep over every (n, q) with 2 <= n <= n_max.
/// Throws OracleBoundExceeded when n_max is beyond oracle_bound().
VerifySummary verify(std::int64_t n_max, const VerifyOptions& opts = {});
void write_verify(std::ostream& os, const VerifySummary& s);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace cqs
