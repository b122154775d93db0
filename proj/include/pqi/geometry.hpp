#pragma once

// Finite classical geometries at desk scale: projective spaces over the
// supported fields, the elliptic quadric in PG(5,q) and the parabolic quadric
// in PG(4,q) with their line systems, partial quadrangles derived from them,
// hemisystem search, caps and their linear representations.
//
// Conventions. Projective points are coordinate vectors with the first
// nonzero entry scaled to 1, ordered lexicographically. A geometry's lines
// are strictly increasing point-index lists, sorted lexicographically.
// In the linear representation of a cap K in PG(n,q), the ambient space is
// PG(n+1,q) with coordinates (x0, x1..x_{n+1}): the hyperplane at infinity is
// x0 = 0, a cap point c sits at (0|c), and vertex y of the representation is
// the affine point (1|y), indexed by the lexicographic rank of y.

#include <optional>
#include <string>
#include <vector>

#include "pqi/common.hpp"
#include "pqi/exactmath.hpp"
#include "pqi/graphcore.hpp"

namespace pqi {

using PointCoords = GfVec;

std::vector<PointCoords> pg_points(int n, int q);

// Scales so the first nonzero coordinate is 1. UserError on the zero vector.
PointCoords pg_normalize(const FiniteField& f, PointCoords v);

// The q+1 normalized points of the line through two distinct points.
std::vector<PointCoords> pg_line_points(const FiniteField& f, const PointCoords& a, const PointCoords& b);

class QuadraticForm {
  public:
    QuadraticForm(const FiniteField& f, int nvars)
        : f_(&f), nvars_(nvars), coef_(size_t(nvars) * nvars, 0) {}

    void set_coef(int i, int j, int c);  // requires i <= j
    int coef(int i, int j) const { return coef_[size_t(i) * nvars_ + j]; }
    int eval(const PointCoords& x) const;
    int nvars() const { return nvars_; }
    const FiniteField& field() const { return *f_; }

    // x0x1 + x2x3 + g(x4,x5) with g a fixed irreducible binary form.
    static QuadraticForm elliptic_5(int q);
    // x0x1 + x2x3 + x4^2.
    static QuadraticForm parabolic_4(int q);

  private:
    const FiniteField* f_;
    int nvars_;
    std::vector<std::uint8_t> coef_;
};

// Point-line geometry of order (s,t): lines carry s+1 points, points lie on
// t+1 lines, non-collinear point pairs have exactly mu common neighbours.
// mu == t+1 exactly for generalized quadrangles.
struct IncidenceGeometry {
    std::string name;
    int npoints = 0;
    int s = 0, t = 0, mu = 0;
    std::vector<std::vector<int>> lines;
    std::vector<PointCoords> coords;  // empty for abstract geometries
    const FiniteField* field = nullptr;

    bool is_gq() const { return mu == t + 1; }
};

struct GeometryCheck {
    bool ok = false;
    std::string reason;
};

// Full axiom check: line sizes, line count per point, at most one line per
// point pair, the one-or-at-most-one collinear point on an external line,
// the mu law, and the point-count identity v = s(t+1)(mu+st)/mu + 1.
GeometryCheck verify_geometry(const IncidenceGeometry& g);

Graph collinearity_graph(const IncidenceGeometry& g);
std::vector<std::vector<int>> lines_through(const IncidenceGeometry& g);
Bitset point_perp(const IncidenceGeometry& g, int p);  // collinear points incl. p

// Q-(5,q): generalized quadrangle of order (q, q^2). Lines found by pair
// scanning; construction is self-checking.
IncidenceGeometry elliptic_quadric_gq(int q);
// Q(4,q): generalized quadrangle of order (q, q).
IncidenceGeometry parabolic_quadric_gq(int q);

struct DerivedGeometry {
    IncidenceGeometry geo;
    std::vector<int> toAmbient;  // derived point index -> ambient point index
};

// Deletes P and its perp from a GQ(s, s^2); the surviving lines each lose one
// point, giving a partial quadrangle of order (s-1, s^2, s(s-1)).
DerivedGeometry minus_perp(const IncidenceGeometry& g, int p);

// Restriction to a hemisystem: PQ((s-1)/2, s^2, (s-1)^2/2).
DerivedGeometry restrict_to_set(const IncidenceGeometry& g, const std::vector<int>& h);

// Backtracking over points with per-line counters, branching on the line with
// the fewest undecided points. Solutions appear in deterministic search
// order. find_hemisystem returns the first; find_hemisystems up to `limit`.
std::optional<std::vector<int>> find_hemisystem(const IncidenceGeometry& g);
std::vector<std::vector<int>> find_hemisystems(const IncidenceGeometry& g, int limit);

struct SetClass {
    std::vector<int> lineMeets;   // sorted multiset of |S ∩ line|
    std::optional<int> movoid;    // m when every line meets S in exactly m
    std::optional<int> tight;     // i when the profile is (i+s-1, i)
    bool hemisystem = false;      // m-ovoid with m = (s+1)/2
};
SetClass classify_point_set(const IncidenceGeometry& g, const std::vector<int>& set);

// Z^perp minus P^perp, as points of the minus_perp geometry `pq`.
// Z must be collinear with P and distinct from it.
std::vector<int> cone(const IncidenceGeometry& g, const DerivedGeometry& pq, int p, int z);

// Quadric section by the 3-space spanned by two lines on P and an outside
// point X: the (q+1)^2 points of a hyperbolic section. UserError when X
// degenerates the section to a cone or lies in the plane of the two lines.
std::vector<int> hyperbolic_section(const IncidenceGeometry& g, int p, int line1, int line2, int x);

// The section above minus P^perp: an s^2-point set of the minus_perp
// geometry.
std::vector<int> grid_minus_perp(const IncidenceGeometry& g, const DerivedGeometry& pq, int p, int line1,
                                 int line2, int x);

// Points of g on the hyperplane <coefs, x> = 0 of its ambient space.
std::vector<int> quadric_hyperplane_section(const IncidenceGeometry& g, const GfVec& coefs);

struct LinearRep {
    IncidenceGeometry geo;  // q^(n+1) affine points; lines = cap directions
    int n = 0, q = 0;
    std::vector<PointCoords> cap;
};

// UserError when the given points are not a cap of PG(n,q).
LinearRep linear_representation(int n, int q, const std::vector<PointCoords>& cap);
int affine_index(const LinearRep& rep, const GfVec& y);

struct CapSearchResult {
    std::optional<std::vector<PointCoords>> cap;
    bool exhausted = false;  // space fully searched, no cap of size k
    bool budgetHit = false;
    long long nodes = 0;
};

// First k-cap of PG(n,q) in lexicographic order, optionally restricted to
// caps whose linear representation is strongly regular (equivalently: every
// point off the cap lies on a constant number of secants, which enables a
// monotone crossing prune during the search).
CapSearchResult cap_search(int n, int q, int k, bool requireSrg, long long budgetNodes = 0);

// Affine part of the hyperplane <dual, x> = 0 of PG(n+1,q), as vertices of
// the linear representation. The infinity hyperplane is rejected.
std::vector<int> hyperplane_affine_set(const LinearRep& rep, const GfVec& dual);

// Affine part of the codimension-2 space cut out by two independent duals.
// Requires every hyperplane through it to meet the cap in a constant count.
std::vector<int> secundum_affine_set(const LinearRep& rep, const GfVec& dualA, const GfVec& dualB);

// Cap points on the hyperplane <dual, x> = 0 (dual over PG(n+1,q)).
int cap_meet_count(const LinearRep& rep, const GfVec& dual);

}  // namespace pqi
