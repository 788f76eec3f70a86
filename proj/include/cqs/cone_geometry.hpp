#pragma once

#include "cqs/lattice.hpp"
#include "cqs/representations.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cqs {

/// Hilbert basis r^1, ..., r^e of sigma^v ∩ M together with the derived
/// invariants. Indices in the accessors are 1-based to match the usual
/// numbering; storage is 0-based.
struct HilbertData {
    std::vector<MPoint> basis;
    std::vector<Integer> coeffs;  ///< a_2, ..., a_{e-1}
    MPoint central_degree;        ///< primitive(r^1 + r^e)
    std::optional<std::size_t> central_index;
    bool grounded = false;

    std::size_t e() const { return basis.size(); }
    bool smooth() const { return basis.size() == 2; }
    const MPoint& r(std::size_t i) const { return basis.at(i - 1); }
    /// a_i for 2 <= i <= e-1.
    const Integer& a(std::size_t i) const { return coeffs.at(i - 2); }
};

/// Evaluation coordinates iota(r) = (<alpha, r>, <beta, r>). They identify
/// sigma^v with the positive quadrant; iota(M) is an index-n sublattice of
/// Z^2 and the canonical degree R/m maps to (1, 1).
///
/// Every column u of iota(M) is a single residue class v = slope*u (mod n).
class EvaluationMap {
public:
    explicit EvaluationMap(const ConeForm& cone);

    std::pair<Integer, Integer> operator()(const MPoint& r) const;
    std::pair<Rational, Rational> operator()(const MRatPoint& r) const;
    MRatPoint preimage(const Integer& u, const Integer& v) const;
    bool in_lattice(const Integer& u, const Integer& v) const;

    const Integer& order() const { return n_; }
    const Integer& slope() const { return slope_; }

private:
    ConeForm cone_;
    Integer det_;  // signed det(alpha, beta)
    Integer n_;
    Integer slope_;
};

/// Three-term recursion r^{i+1} = a_i r^i - r^{i-1}, seeded in the normal
/// form <(1,0),(-q,n)> by r^1 = [0,1], r^2 = [1,1], mapped back to the
/// cone's own coordinates. A unimodular cone yields the two-element smooth record.
HilbertData hilbert_basis(const ConeForm& cone);

/// Brute force: enumerate sigma^v ∩ M with pairing values at most n,
/// discard decomposable points, sort by <alpha, .>. Throws
/// OracleBoundExceeded if n exceeds `bound` (default: oracle_bound()).
HilbertData hilbert_basis_oracle(const ConeForm& cone, std::optional<Integer> bound = std::nullopt);

/// Size guard for brute-force oracles: CQS_ORACLE_BOUND or 10^4.
Integer oracle_bound();

/// eta_i = min{<alpha,r^{i+1}>/<alpha,r^i>, <beta,r^{i-1}>/<beta,r^i>}; 2 <= i <= e-1.
Rational eta(const HilbertData& h, const ConeForm& cone, std::size_t i);

/// True iff the open interval (g/m, h/m) contains an integer.
bool is_grounded(const IntervalUD& i);

/// Grounded interval written as [-A, B] around its smallest interior integer.
struct FloorData {
    Rational A;
    Rational B;
    Integer floor_a;
    Integer floor_b;
    Rational frac_a;
    Rational frac_b;
    Integer a_central;  ///< 2 + floor(A) + floor(B)
};

/// Throws InvalidSingularity for a non-grounded interval.
FloorData ab_floor_data(const IntervalUD& i);

enum class ZoneLattice {
    M,         ///< M itself
    M_tilde,   ///< M + Z*(R/m)
    M_shifted  ///< the coset M + R/m
};

struct ZoneSpec {
    MPoint R;
    Integer kappa;
    ZoneLattice lattice = ZoneLattice::M;
};

/// Lattice points of the half-open parallelogram
///   kappa <= <alpha, r> < kappa + <alpha, R>,  kappa <= <beta, r> < kappa + <beta, R>
/// in the requested lattice, ordered by (<alpha, r>, <beta, r>). Throws
/// std::invalid_argument unless R lies in the interior of sigma^v.
std::vector<MRatPoint> zone_points(const ZoneSpec& zone, const ConeForm& cone);

/// "x1*x3 - x2^3" style binomials x_{i-1} x_{i+1} - x_i^{a_i}.
std::vector<std::string> binomial_equations(const HilbertData& h);

}  // namespace cqs
