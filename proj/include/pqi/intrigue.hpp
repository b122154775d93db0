#pragma once

// Verification and exhaustive enumeration of intriguing sets: vertex subsets
// of a strongly regular graph whose inside and outside degrees are both
// constant. Also the derived-set constructions (difference, union,
// complement) and the exact intersection identity for opposite-sign pairs.

#include <optional>
#include <string>
#include <vector>

#include "pqi/common.hpp"
#include "pqi/exactmath.hpp"
#include "pqi/graphcore.hpp"

namespace pqi {

enum class SetSign { Positive, Negative };

const char* sign_name(SetSign s);

struct IntrigueCertificate {
    SetSign sign = SetSign::Positive;
    long long h1 = 0;    // common degree from inside vertices
    long long h2 = 0;    // common degree from outside vertices
    long long size = 0;  // h1 - h2 is an eigenvalue and size*(k-h1+h2) == h2*v
};

struct FeasibleRow {
    SetSign sign = SetSign::Positive;
    long long h1 = 0, h2 = 0, size = 0;
};

// Arithmetic screen over (h1, h2): h1 - h2 must be an integral eigenvalue,
// 0 <= h1 <= k, 1 <= h2 <= k, h1 < size, and the size formula must give an
// integer in [1, v-1]. Irrational eigenvalues (conference parameters) admit
// no rows at all. Rows are ordered positive first, then by h2.
std::vector<FeasibleRow> feasible_params(const SrgParams& p);

// Certificate when both degree multisets of s are constant, nullopt
// otherwise. Empty and full sets are never certified. A constant profile
// whose difference h1 - h2 is not an eigenvalue, or whose size violates the
// size formula, means the spectral argument itself broke: InternalCheckError.
std::optional<IntrigueCertificate> verify_intriguing(const Graph& g, const SrgParams& p,
                                                     const Bitset& s);

// True when e * chi_s is the zero vector.
bool idempotent_annihilates(const RationalMatrix& e, const Bitset& s);

// Degree test plus the spectral test: the idempotent of the eigenvalue of
// the opposite sign must annihilate the characteristic vector. Disagreement
// between the two tests is an InternalCheckError.
std::optional<IntrigueCertificate> verify_cross_checked(const Graph& g, const SrgParams& p,
                                                        const Idempotents& idem, const Bitset& s);

struct EnumerateOptions {
    long long sizeCap = 0;  // only parameter rows with size <= cap; 0 = all rows
    bool firstOnly = false;
    const std::vector<Perm>* group = nullptr;  // orbit representatives when given
    long long budgetNodes = 0;                 // 0 = unlimited
    int threads = 1;
};

struct EnumerateResult {
    std::vector<Bitset> sets;  // ordered by Bitset::seq_less
    std::vector<IntrigueCertificate> certs;
    std::vector<FeasibleRow> rows;  // parameter rows searched
    bool exhaustive = true;
    long long nodes = 0;  // branch decisions, identical for every thread count
    std::string note;     // set when no row is searchable, e.g. irrational eigenvalues
};

// All vertex sets realizing some feasible parameter row of the given sign
// within the size cap. Search branches on one vertex at a time with unit
// propagation of the degree windows; results are sorted, so the output does
// not depend on the thread count. firstOnly and positive budgets run on one
// thread so the node count stays meaningful.
EnumerateResult enumerate_intriguing(const Graph& g, SetSign sign,
                                     const EnumerateOptions& opt = {});

struct DerivedSet {
    Bitset set;
    IntrigueCertificate cert;
};

// small strictly inside big, same sign; result has profile
// (big.h1 - small.h2, big.h2 - small.h2). UserError on precondition
// violations, InternalCheckError if the predicted certificate fails.
DerivedSet closure_difference(const Graph& g, const SrgParams& p, const Bitset& big,
                              const Bitset& small);

// Disjoint sets of the same sign; result has profile (a.h1 + b.h2, a.h2 + b.h2).
DerivedSet closure_union(const Graph& g, const SrgParams& p, const Bitset& a, const Bitset& b);

// Complement keeps the sign and has profile (k - h2, k - h1).
DerivedSet closure_complement(const Graph& g, const SrgParams& p, const Bitset& s);

// Checks |iPlus ∩ iMinus| * v == |iPlus| * |iMinus| exactly and returns the
// intersection count. The operands must certify positive resp. negative.
long long intersection_check(const Graph& g, const SrgParams& p, const Bitset& iPlus,
                             const Bitset& iMinus);

}  // namespace pqi
