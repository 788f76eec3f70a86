#pragma once

// Graded first-order deformations T^1 of a cyclic quotient surface
// singularity and the subspaces cut out by flatness of reflexive powers of
// the relative dualizing sheaf:
//
//   T1_qG ⊆ T1_VW ⊆ T1_V, T1_W ⊆ T1
//
// Each dimension is available twice: from closed-form bounds in terms of the
// Hilbert basis and the interval [-A, B], and from brute-force enumeration
// of lattice points in the zones Z_{R,kappa}. The two routes share nothing
// beyond the Hilbert basis and the lattice primitives.

#include "cqs/cone_geometry.hpp"
#include "cqs/lattice.hpp"
#include "cqs/representations.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cqs {

/// The T^1-carrying degree R = k * r^i.
struct DegreeId {
    std::size_t i = 0;
    std::int64_t k = 1;
    friend bool operator==(const DegreeId&, const DegreeId&) = default;
    friend auto operator<=>(const DegreeId&, const DegreeId&) = default;
};

std::string to_string(const DegreeId& d);

/// k * r^i.
MPoint degree_vector(const HilbertData& h, const DegreeId& d);

struct GradedDim {
    DegreeId degree;
    int dim = 0;
    friend bool operator==(const GradedDim&, const GradedDim&) = default;
};
using GradedDims = std::vector<GradedDim>;

int total(const GradedDims& dims);

/// x^{-R} d_a: a representative a in N and its degree.
struct DeformationDirection {
    NPoint a;
    DegreeId degree;
    MPoint R;  ///< degree_vector(h, degree)
};

// Invariants of the cone that the deformation criteria refer to --------------

/// primitive(r^1 + r^e), computed from the cone alone.
MPoint central_degree(const ConeForm& cone);
/// m = <alpha, central> = <beta, central>, the index of the canonical class.
Integer canonical_index(const ConeForm& cone);

// Closed forms ----------------------------------------------------------------

/// All degrees with T^1(-R) != 0 and their dimensions, ordered by (i, k).
/// Throws DegenerateClass when e <= 3.
GradedDims t1_graded(const HilbertData& h);

/// V-deformations per degree: 0 at r^2 and r^{e-1}, 1 at r^i for
/// 3 <= i <= e-2, and 1 at k*r^i (k >= 2) exactly for the central index.
GradedDims v_dims(const HilbertData& h);

/// qG per degree: 1 at k * central for 1 <= k <= min{a_l - 1, |I|}.
GradedDims qg_dims(const HilbertData& h, const IntervalUD& interval);

/// VW per degree: 1 at k * central for 1 <= k <= min{a_l - 1, c|I|, c'|I|}.
GradedDims vw_dims(const HilbertData& h, const IntervalUD& interval, const ABCForm& abc);

// Lattice oracles ------------------------------------------------------------

/// <a, central - m*R>; zero iff the direction is a V-deformation (for a in
/// T^1(-R) with nonempty zone Z_R ∩ M).
Integer phi_functional(const MPoint& R, const NPoint& a, const ConeForm& cone);

/// Flatness of the kappa-th reflexive power: <a, kappa*R - r> = 0 for every
/// r in Z_{R,kappa} ∩ M.
bool iso_oracle(const DeformationDirection& xi, const Integer& kappa, const ConeForm& cone);

/// iso for every kappa + l*m. Finite form: trivially true on an empty zone,
/// otherwise iso(kappa) together with <a, central - m*R> = 0.
bool stable_iso_oracle(const DeformationDirection& xi, const Integer& kappa, const ConeForm& cone);

/// The V-direction in degree -R is qG iff every point of (M + Z*central/m) ∩ Z_R
/// lies on the line Q*(central - m*R).
bool qg_oracle(const MPoint& R, const ConeForm& cone);

/// Same containment test for the coset M + central/m (VW).
bool vw_oracle(const MPoint& R, const ConeForm& cone);

/// Per-degree dimensions obtained purely from zone enumeration and exact rank
/// computations on N_Q. T^1(-R) is the subquotient (Z_R ∩ M)^perp / K with
/// K = Q*alpha if <alpha,R> = 1 and Q*beta if <beta,R> = 1.
struct RankOracleDims {
    int t1 = 0;
    int v = 0;          ///< kernel of the phi functional
    int v_shifts = 0;   ///< iso for kappa = 0 and kappa = m, no phi
    int w = 0;          ///< iso for kappa = -1
    int vw = 0;         ///< V ∩ W
    int qg = 0;         ///< iso for every kappa in [0, m)
};

RankOracleDims rank_oracle_dims(const MPoint& R, const ConeForm& cone);

/// dim T1_W per degree from rank_oracle_dims. Throws OracleBoundExceeded
/// when n exceeds oracle_bound().
GradedDims w_dims_oracle(const HilbertData& h, const ConeForm& cone);

// Reports --------------------------------------------------------------------

struct DegreeReport {
    DegreeId degree;
    MPoint R;
    int dim_t1 = 0;
    int dim_v = 0;
    std::optional<int> dim_w;  ///< enumeration only; absent beyond the oracle bound
    int dim_vw = 0;
    int dim_qg = 0;
    bool last_deformation = false;
    friend bool operator==(const DegreeReport&, const DegreeReport&) = default;
};

struct Classification {
    bool grounded = false;
    bool t_singularity = false;   ///< |I| in Z_{>=1}
    bool t0_singularity = false;  ///< |I| = 1
    bool qg_exists = false;       ///< |I| >= 1
    friend bool operator==(const Classification&, const Classification&) = default;
};

struct T1Totals {
    std::int64_t t1 = 0;
    std::int64_t v = 0;
    std::optional<std::int64_t> w;
    std::int64_t vw = 0;
    std::int64_t qg = 0;
    friend bool operator==(const T1Totals&, const T1Totals&) = default;
};

struct T1Report {
    std::vector<DegreeReport> per_degree;
    T1Totals totals;
    Classification flags;
    std::size_t embdim = 0;
    friend bool operator==(const T1Report&, const T1Report&) = default;
};

/// Everything derived from one singularity, in the coordinates of the cone
/// it was given in (or the normal form cone for the other descriptions).
struct Singularity {
    NQForm nq;
    ABCForm abc;
    ConeForm cone;
    IntervalUD interval;
    CFForm cf;
    HilbertData hilbert;

    static Singularity from(const SingularityForm& form);
    Integer index() const { return abc.a; }
    Integer c_prime() const { return cqs::c_prime(interval); }
};

Classification classify(const SingularityForm& s);

/// Assembles the closed forms (plus the W oracle when n is within the oracle
/// bound) and checks the structural consequences before returning: the
/// V/VW gap dichotomy, vanishing for gcd(n, q+1) = 1, qG = VW for integral
/// |I|, and qG <= VW <= qG + 1. Violations throw std::logic_error.
/// Throws DegenerateClass when e <= 3.
T1Report totals(const SingularityForm& s);
T1Report totals(const Singularity& s);

// Cayley family --------------------------------------------------------------

struct CayleyFamily {
    Integer d;              ///< dim T1_qG = floor(A + B), zero when not grounded
    Rational i_prime_lower;  ///< I' = [lower, upper], |I'| = {A + B}
    Rational i_prime_upper;
    bool degenerate_base = false;  ///< |I'| = 0 (integral |I|)
    std::vector<std::vector<Integer>> rays;  ///< primitive generators in Z^{d+2}
};

CayleyFamily cayley_family(const IntervalUD& interval);

}  // namespace cqs
