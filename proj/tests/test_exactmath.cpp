#include <set>

#include "doctest.h"
#include "pqi/exactmath.hpp"

using namespace pqi;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    CHECK(ratio(2, 4) == ratio(1, 2));
    CHECK(rat_str(ratio(2, 4)) == "1/2");
    CHECK(rat_str(ratio(3, -6)) == "-1/2");
    CHECK(rat_str(ratio(-4, -2)) == "2");
    CHECK(rat_str(ratio(0, 7)) == "0");
    CHECK_THROWS_AS(ratio(1, 0), UserError);

    CHECK(rat_parse("-22/7") == ratio(-22, 7));
    CHECK(rat_parse("5") == ratio(5));
    CHECK_THROWS_AS(rat_parse("1/0"), UserError);
    CHECK_THROWS_AS(rat_parse("x"), UserError);

    CHECK(rat_is_int(ratio(6, 3)));
    CHECK_FALSE(rat_is_int(ratio(1, 3)));
    CHECK(rat_to_ll(ratio(-14, 2)) == -7);
    CHECK_THROWS_AS(rat_to_ll(ratio(1, 2)), UserError);
}

TEST_CASE("field axioms hold exhaustively for every supported order") {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        CAPTURE(q);
        const FiniteField& f = FiniteField::get(q);
        CHECK(f.q() == q);
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        // characteristic: p-fold sum of 1 vanishes, shorter sums do not
        int s = 0;
        for (int i = 0; i < f.p(); ++i) {
            if (i > 0) CHECK(s != 0);
            s = f.add(s, 1);
        }
        CHECK(s == 0);
        // multiplicative group: no zero divisors
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b) CHECK(f.mul(a, b) != 0);
    }
    CHECK_THROWS_AS(FiniteField::get(6), UserError);
    CHECK_THROWS_AS(FiniteField::get(11), UserError);
}

TEST_CASE("fixed representations of the extension fields") {
    // Values follow from the fixed moduli by hand reduction.
    const FiniteField& f4 = FiniteField::get(4);
    CHECK(f4.mul(2, 2) == 3);  // x*x = x+1
    CHECK(f4.mul(2, 3) == 1);  // x*(x+1) = x^2+x = 1
    const FiniteField& f8 = FiniteField::get(8);
    CHECK(f8.mul(2, 2) == 4);  // x*x = x^2
    CHECK(f8.mul(2, 4) == 3);  // x^3 = x+1
    CHECK(f8.mul(4, 4) == 6);  // x^4 = x^2+x
    const FiniteField& f9 = FiniteField::get(9);
    CHECK(f9.mul(3, 3) == 2);  // x*x = -1 = 2
    CHECK(f9.mul(3, 5) == 8);  // x*(x+2) = 2+2x
    CHECK(f9.p() == 3);
}

TEST_CASE("matrix arithmetic and transpose") {
    RationalMatrix a(2, 3);
    a.at(0, 0) = 1;
    a.at(0, 2) = ratio(1, 2);
    a.at(1, 1) = -2;
    RationalMatrix t = a.transpose();
    CHECK(t.rows() == 3);
    CHECK(t.at(2, 0) == ratio(1, 2));

    RationalMatrix i3 = RationalMatrix::identity(3);
    CHECK(a * i3 == a);
    CHECK(RationalMatrix::identity(2) * a == a);
    CHECK((a - a).is_zero());
    CHECK(a.scaled(2).at(0, 2) == 1);

    RationalMatrix j = RationalMatrix::ones(3, 3);
    CHECK((j * j) == j.scaled(3));

    CHECK_THROWS_AS(a + t, UserError);
    CHECK_THROWS_AS(a * a, UserError);
}

TEST_CASE("exact inverse of hand-checked matrices") {
    // [[2,1],[1,1]]^-1 = [[1,-1],[-1,2]] (det 1, adjugate by hand)
    RationalMatrix a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 1;
    auto r = a.inverse();
    REQUIRE(r.inv.has_value());
    RationalMatrix e(2, 2);
    e.at(0, 0) = 1;
    e.at(0, 1) = -1;
    e.at(1, 0) = -1;
    e.at(1, 1) = 2;
    CHECK(*r.inv == e);

    // [[1,1/2],[1/2,1/3]]^-1 = [[4,-6],[-6,12]] (det 1/12, adjugate by hand)
    RationalMatrix h(2, 2);
    h.at(0, 0) = 1;
    h.at(0, 1) = ratio(1, 2);
    h.at(1, 0) = ratio(1, 2);
    h.at(1, 1) = ratio(1, 3);
    auto hr = h.inverse();
    REQUIRE(hr.inv.has_value());
    RationalMatrix he(2, 2);
    he.at(0, 0) = 4;
    he.at(0, 1) = -6;
    he.at(1, 0) = -6;
    he.at(1, 1) = 12;
    CHECK(*hr.inv == he);
}

TEST_CASE("inverse round-trips exactly on assorted nonsingular matrices") {
    // deterministic fixture with awkward fractions
    for (int n : {1, 2, 3, 5, 8}) {
        CAPTURE(n);
        RationalMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = ratio(1, i + j + 1);  // Hilbert, nonsingular
        auto r = a.inverse();
        REQUIRE(r.inv.has_value());
        CHECK(a * *r.inv == RationalMatrix::identity(n));
        CHECK(*r.inv * a == RationalMatrix::identity(n));
    }
}

TEST_CASE("singular matrices report a genuine kernel vector") {
    RationalMatrix a(3, 3);
    // rank 2: row2 = row0 + row1
    int vals[3][3] = {{1, 2, 3}, {0, 1, 4}, {1, 3, 7}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a.at(i, j) = vals[i][j];
    auto r = a.inverse();
    CHECK_FALSE(r.inv.has_value());
    REQUIRE(r.kernel.size() == 3);
    bool nonzero = false;
    for (const auto& x : r.kernel) nonzero = nonzero || x != 0;
    CHECK(nonzero);
    auto img = a.apply(r.kernel);
    for (const auto& x : img) CHECK(x == 0);

    CHECK_THROWS_AS(RationalMatrix(2, 3).inverse(), UserError);
}

TEST_CASE("apply multiplies exactly") {
    RationalMatrix a(2, 2);
    a.at(0, 0) = ratio(1, 3);
    a.at(0, 1) = 2;
    a.at(1, 0) = -1;
    a.at(1, 1) = ratio(1, 2);
    auto y = a.apply({ratio(3), ratio(1, 2)});
    CHECK(y[0] == ratio(2));
    CHECK(y[1] == ratio(-11, 4));
}

namespace {

// Independent oracle: the full span as an explicit set of vectors, built by
// closing under addition and scalar multiples.
std::set<GfVec> brute_span(const FiniteField& f, const std::vector<GfVec>& gens, int w) {
    std::set<GfVec> s;
    s.insert(GfVec(w, 0));
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<GfVec> next = s;
        for (const auto& v : s)
            for (const auto& g : gens)
                for (int c = 0; c < f.q(); ++c) {
                    GfVec u(w);
                    for (int j = 0; j < w; ++j) u[j] = std::uint8_t(f.add(v[j], f.mul(c, g[j])));
                    if (next.insert(u).second) grew = true;
                }
        s = next;
    }
    return s;
}

}  // namespace

TEST_CASE("row spans over small fields agree with a brute-force closure") {
    for (int q : {2, 3, 4, 9}) {
        CAPTURE(q);
        const FiniteField& f = FiniteField::get(q);
        int w = 4;
        std::vector<GfVec> gens = {{1, 0, 1, 0}, {0, 1, 1, 0}, {1, 1, 0, 0}};
        GfSpan span(f, w);
        int rank = 0;
        for (const auto& g : gens)
            if (span.absorb(g)) ++rank;
        CHECK(span.rank() == rank);
        // the third generator is the sum of the first two exactly in char 2
        CHECK(rank == (f.p() == 2 ? 2 : 3));

        GfSpan full(f, w);
        for (const auto& g : gens) full.absorb(g);
        auto all = brute_span(f, gens, w);
        // enumerate every vector of GF(q)^4 and compare membership
        int members = 0;
        std::vector<int> idx(w, 0);
        while (true) {
            GfVec v(w);
            for (int j = 0; j < w; ++j) v[j] = std::uint8_t(idx[j]);
            bool inSpan = full.contains(v);
            CHECK(inSpan == (all.count(v) > 0));
            if (inSpan) ++members;
            int j = 0;
            while (j < w && ++idx[j] == q) idx[j++] = 0;
            if (j == w) break;
        }
        int expect = 1;
        for (int r = 0; r < full.rank(); ++r) expect *= q;
        CHECK(members == expect);
    }
}

TEST_CASE("span rank handles char-2 coincidences correctly") {
    const FiniteField& f2 = FiniteField::get(2);
    GfSpan s(f2, 3);
    CHECK(s.absorb({1, 1, 0}));
    CHECK(s.absorb({0, 1, 1}));
    CHECK_FALSE(s.absorb({1, 0, 1}));  // sum of the first two
    CHECK(s.rank() == 2);
    CHECK(s.contains({0, 0, 0}));
    CHECK_FALSE(s.contains({1, 1, 1}));
}
