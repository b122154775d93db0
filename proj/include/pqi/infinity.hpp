#pragma once

// Analysis of intriguing sets across a deleted "infinity" part: block
// decomposition of the ambient adjacency matrix, inside/outside collinearity
// profiles, parameter prediction tables, the exact matrix identities that
// drive hemisystem completion, and partial-spread verdicts.
//
// Ordering contract. Blocks are taken with the surviving points first (in
// ascending ambient order), then the infinity points (ascending), with the
// distinguished point, when there is one, last of all. The positional
// matrices M (ones in the last row, except its final entry) and E (single
// one in the bottom-right corner) refer to that order.

#include <optional>
#include <string>
#include <vector>

#include "pqi/common.hpp"
#include "pqi/exactmath.hpp"
#include "pqi/geometry.hpp"
#include "pqi/graphcore.hpp"
#include "pqi/intrigue.hpp"

namespace pqi {

struct BlockDecomposition {
    std::vector<int> pqPoints;   // ambient indices of the surviving part, ascending
    std::vector<int> infPoints;  // ambient indices of infinity; distinguished point last
    RationalMatrix B;            // surviving x surviving
    RationalMatrix C;            // surviving x infinity
    RationalMatrix D;            // infinity x infinity
};

// special < 0 means no distinguished point; otherwise it must lie in the
// infinity set and is moved to the end of infPoints.
BlockDecomposition block_decomposition(const Graph& ambient, const Bitset& infinity, int special = -1);

struct InfinityAnalysis {
    bool constant = false;      // both sides constant (an empty side is vacuously so)
    bool a1Defined = false;     // some point of I lies outside infinity
    bool a2Defined = false;     // some point outside I and infinity exists
    long long a1 = 0;           // |N(y) ∩ I ∩ ∞| over y in I, off infinity
    long long a2 = 0;           // same count over y off I and off infinity
    long long insideInfinity = 0;  // |I ∩ ∞|
    int witnessA = -1, witnessB = -1;  // same-side points with differing counts
};

InfinityAnalysis infinity_profile(const Graph& ambient, const Bitset& infinity, const Bitset& iSet);

struct AtInfinityCheck {
    IntrigueCertificate ambient{};  // certificate of I in the ambient graph
    InfinityAnalysis profile{};
    std::optional<IntrigueCertificate> restriction;  // I minus infinity, in the surviving graph
};

// Requires I intriguing in the ambient graph and a nondegenerate restriction.
// Asserts the equivalence "restriction verifies iff the profile is constant"
// and, when both hold, the parameter relation h1' = h1 - a1, h2' = h2 - a2;
// violations are internal errors.
AtInfinityCheck check_atinfinity(const Graph& ambient, const Bitset& infinity, const Bitset& iSet);

enum class AmbientKind { MOvoid, Tight };

struct PredictQuery {
    AmbientKind kind = AmbientKind::MOvoid;
    long long value = 0;  // m for ovoids, i for tight sets
    long long s = 0;      // ambient line size minus one
    bool hemisystemScene = false;  // infinity is a hemisystem; otherwise a perp
    bool pInSet = false;           // perp scene: does the deleted point lie in I
    SetSign restrictionSign = SetSign::Negative;  // hemisystem scene target sign
    std::optional<long long> a2Measured;  // hemisystem ovoid rows determine only a1 - a2
};

struct InfinityPrediction {
    bool possible = true;
    std::string note;  // reason when impossible (non-integral value, excluded case)
    Rational diff;     // a1 - a2, defined in every possible case
    bool a1Known = false, a2Known = false, extentKnown = false;
    Rational a1, a2;
    Rational extent;  // |I ∩ ∞| for a perp scene, |I| off the hemisystem otherwise
};

InfinityPrediction predict_infinity_params(const PredictQuery& q);

struct IckyReport {
    std::vector<std::string> verified;  // identity labels, in check order
};

// geo must be a GQ(s, s^2). Checks, exactly: the closed form of
// s^3(s^2+1)(s+1)(D - lambda I)^{-1} with lambda = -s^2 - 1, the relation
// C(D - lambda I)^{-1} 1 = 1, and the product structure
// CC^T = (s+1)J - sB + (s^2-s)I. When pqNegSet is given it must be a
// negative intriguing set of the minus-perp geometry at p (derived point
// indices); then C C^T chi = s^3 chi + s|I| 1 and
// C(D - lambda I)^{-1} C^T chi = s chi + h2' 1 are checked as well.
// Any failure is an internal error.
IckyReport icky_identities(const IncidenceGeometry& geo, int p, const Bitset* pqNegSet = nullptr);

// I is a negative intriguing set of minus_perp(geo, p), given in derived
// point indices, of size s^2(s^2-1)/2 or s^2(s^2+1)/2 (s odd). Solves for
// the 0/1 indicator on the perp side and returns the ambient union, which is
// verified to be a hemisystem before returning. A non-0/1 solution or a
// failed hemisystem check is an internal error.
Bitset complete_to_hemisystem(const IncidenceGeometry& geo, int p, const Bitset& pqSet);

struct SpreadVerdict {
    int c = 0;                    // number of lines
    InfinityAnalysis profile{};   // measured against infinity = the hemisystem
    long long h1Expected = 0, h2Expected = 0;
    std::optional<IntrigueCertificate> restriction;
    bool certified = false;  // restriction verified with the expected parameters
    std::string reason;      // first failure, empty when certified
};

// lineIdx selects pairwise disjoint lines of geo, evenly many; hemi must be
// a hemisystem. Checks whether the covered points are intriguing at infinity
// with respect to the hemisystem and whether the surviving part certifies
// with parameters ((c - s^2 + s)/2 - 1, c/2).
SpreadVerdict partial_spread_infinity(const IncidenceGeometry& geo, const std::vector<int>& hemi,
                                      const std::vector<int>& lineIdx);

// Evidence reports: line-oriented text with stable field order, '#' headers.
// These record observations and never assert beyond input validation.

// Enumerates negative sets of minus_perp(geo, p) under a node budget and
// classifies each as a union of cones, as hemisystem-derived (completion
// succeeds), or other.
std::vector<std::string> negint_minusperp_evidence(const IncidenceGeometry& geo, int p,
                                                   long long budgetNodes, int threads = 1);

// For every ordered pair of distinct hemisystems (H = infinity, I = other),
// reports the profile and the restriction certificate of I off H.
std::vector<std::string> hemi_difference_evidence(const IncidenceGeometry& geo,
                                                  const std::vector<std::vector<int>>& hemis);

// Per-point report for one hemisystem: profile at infinity = each perp, the
// restriction certificate when it verifies, and the perp cut size.
std::vector<std::string> hemi_perp_evidence(const IncidenceGeometry& geo, const std::vector<int>& hemi);

}  // namespace pqi
