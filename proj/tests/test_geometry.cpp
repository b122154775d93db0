#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "pqi/geometry.hpp"

using namespace pqi;

namespace {

void check_params(const Graph& g, long long v, long long k, long long lambda, long long mu, long long ePlus,
                  long long eMinus, long long multPlus, long long multMinus) {
    auto c = srg_params(g);
    REQUIRE(c.ok);
    CHECK(c.params.v == v);
    CHECK(c.params.k == k);
    CHECK(c.params.lambda == lambda);
    CHECK(c.params.mu == mu);
    CHECK(c.params.integral);
    CHECK(c.params.ePlus == ePlus);
    CHECK(c.params.eMinus == eMinus);
    CHECK(c.params.multPlus == multPlus);
    CHECK(c.params.multMinus == multMinus);
}

// inside/outside common-degree pair of a set that must be equitable
std::pair<int, int> profile_of(const Graph& g, const std::vector<int>& set) {
    Bitset s(g.n());
    for (int x : set) s.set(x);
    auto prof = regularity_profile(g, s);
    REQUIRE(!prof.inside.empty());
    REQUIRE(!prof.outside.empty());
    REQUIRE(prof.inside_constant());
    REQUIRE(prof.outside_constant());
    return {prof.inside.front(), prof.outside.front()};
}

}  // namespace

TEST_CASE("projective point enumeration") {
    CHECK(pg_points(1, 2).size() == 3);
    CHECK(pg_points(2, 2).size() == 7);
    CHECK(pg_points(2, 4).size() == 21);
    CHECK(pg_points(4, 3).size() == 121);
    CHECK(pg_points(5, 3).size() == 364);
    CHECK(pg_points(5, 4).size() == 1365);

    auto pts = pg_points(2, 3);
    REQUIRE(pts.size() == 13);
    CHECK(pts.front() == PointCoords({0, 0, 1}));
    CHECK(pts.back() == PointCoords({1, 2, 2}));
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    for (const auto& p : pts) {
        size_t first = 0;
        while (p[first] == 0) ++first;
        CHECK(p[first] == 1);
    }
}

TEST_CASE("normalization and lines in small planes") {
    const FiniteField& f3 = FiniteField::get(3);
    CHECK(pg_normalize(f3, {2, 1, 0}) == PointCoords({1, 2, 0}));
    CHECK(pg_normalize(f3, {0, 2, 2}) == PointCoords({0, 1, 1}));
    CHECK_THROWS_AS(pg_normalize(f3, {0, 0, 0}), UserError);

    const FiniteField& f2 = FiniteField::get(2);
    auto line = pg_line_points(f2, {0, 0, 1}, {0, 1, 0});
    REQUIRE(line.size() == 3);
    CHECK(line[0] == PointCoords({0, 0, 1}));
    CHECK(line[1] == PointCoords({0, 1, 0}));
    CHECK(line[2] == PointCoords({0, 1, 1}));
    CHECK_THROWS_AS(pg_line_points(f2, {0, 1, 0}, {0, 1, 0}), UserError);
    // projectively equal endpoints over GF(3)
    CHECK_THROWS_AS(pg_line_points(f3, {0, 1, 2}, {0, 2, 1}), UserError);

    auto line4 = pg_line_points(FiniteField::get(4), {1, 0, 0}, {0, 1, 0});
    CHECK(line4.size() == 5);
}

TEST_CASE("quadratic form evaluation") {
    auto form = QuadraticForm::parabolic_4(3);
    CHECK(form.eval({1, 0, 0, 0, 0}) == 0);
    CHECK(form.eval({1, 1, 0, 0, 0}) == 1);
    CHECK(form.eval({1, 2, 0, 0, 0}) == 2);
    CHECK(form.eval({0, 0, 0, 0, 1}) == 1);
    CHECK(form.eval({1, 2, 1, 1, 1}) == 1);  // 2 + 1 + 1
    CHECK_THROWS_AS(form.eval({1, 0, 0}), UserError);

    auto ell = QuadraticForm::elliptic_5(3);
    // the binary part x^2 + y^2 has no projective zero over GF(3)
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == 0 && b == 0) continue;
            PointCoords v{0, 0, 0, 0, std::uint8_t(a), std::uint8_t(b)};
            CHECK(ell.eval(v) != 0);
        }
    CHECK_THROWS_AS(QuadraticForm::elliptic_5(7), UserError);
}

TEST_CASE("elliptic quadric generalized quadrangles") {
    auto g2 = elliptic_quadric_gq(2);
    CHECK(g2.npoints == 27);
    CHECK(g2.lines.size() == 45);
    CHECK(g2.s == 2);
    CHECK(g2.t == 4);
    CHECK(g2.mu == 5);
    CHECK(g2.is_gq());
    check_params(collinearity_graph(g2), 27, 10, 1, 5, 1, -5, 20, 6);

    auto g3 = elliptic_quadric_gq(3);
    CHECK(g3.npoints == 112);
    CHECK(g3.lines.size() == 280);
    check_params(collinearity_graph(g3), 112, 30, 2, 10, 2, -10, 90, 21);

    CHECK(elliptic_quadric_gq(4).npoints == 325);
    CHECK(elliptic_quadric_gq(5).npoints == 756);
}

TEST_CASE("parabolic quadric generalized quadrangles") {
    auto g2 = parabolic_quadric_gq(2);
    CHECK(g2.npoints == 15);
    CHECK(g2.lines.size() == 15);
    check_params(collinearity_graph(g2), 15, 6, 1, 3, 1, -3, 9, 5);

    auto g3 = parabolic_quadric_gq(3);
    CHECK(g3.npoints == 40);
    CHECK(g3.lines.size() == 40);
    check_params(collinearity_graph(g3), 40, 12, 2, 4, 2, -4, 24, 15);
}

TEST_CASE("geometry verification rejects tampering") {
    auto g = parabolic_quadric_gq(2);
    CHECK(verify_geometry(g).ok);

    auto broken = g;
    broken.lines.pop_back();
    auto c1 = verify_geometry(broken);
    CHECK_FALSE(c1.ok);
    CHECK(c1.reason.find("lines") != std::string::npos);

    broken = g;
    broken.mu = 2;
    CHECK_FALSE(verify_geometry(broken).ok);

    IncidenceGeometry twoLines;
    twoLines.npoints = 4;
    twoLines.s = 2;
    twoLines.t = 1;
    twoLines.mu = 2;
    twoLines.lines = {{0, 1, 2}, {0, 1, 3}};
    auto c2 = verify_geometry(twoLines);
    CHECK_FALSE(c2.ok);
    CHECK(c2.reason.find("two lines") != std::string::npos);
}

TEST_CASE("deleting a perp from Q-(5,2) leaves the Clebsch parameters") {
    auto g = elliptic_quadric_gq(2);
    auto d = minus_perp(g, 0);
    CHECK(d.geo.npoints == 16);
    CHECK(d.geo.lines.size() == 40);
    CHECK(d.geo.s == 1);
    CHECK(d.geo.t == 4);
    CHECK(d.geo.mu == 2);
    check_params(collinearity_graph(d.geo), 16, 5, 0, 2, 1, -3, 10, 5);

    Bitset perp = point_perp(g, 0);
    CHECK(perp.count() == 11);
    for (int a : d.toAmbient) CHECK_FALSE(perp.test(a));
    CHECK(std::is_sorted(d.toAmbient.begin(), d.toAmbient.end()));

    CHECK_THROWS_AS(minus_perp(parabolic_quadric_gq(3), 0), UserError);
}

TEST_CASE("deleting a perp from Q-(5,3)") {
    auto g = elliptic_quadric_gq(3);
    auto d = minus_perp(g, 0);
    CHECK(point_perp(g, 0).count() == 31);
    CHECK(d.geo.npoints == 81);
    CHECK(d.geo.lines.size() == 270);
    CHECK(d.geo.s == 2);
    CHECK(d.geo.t == 9);
    CHECK(d.geo.mu == 6);
    check_params(collinearity_graph(d.geo), 81, 20, 1, 6, 2, -7, 60, 20);
}

TEST_CASE("cones are negative-type sets of the derived geometry") {
    auto g = elliptic_quadric_gq(3);
    auto d = minus_perp(g, 0);
    auto gr = collinearity_graph(d.geo);

    auto lt = lines_through(g);
    const auto& firstLine = g.lines[lt[0][0]];
    int z1 = firstLine[0] == 0 ? firstLine[1] : firstLine[0];
    int z2 = -1;
    for (int x : firstLine)
        if (x != 0 && x != z1) {
            z2 = x;
            break;
        }
    REQUIRE(z2 >= 0);

    auto c1 = cone(g, d, 0, z1);
    auto c2 = cone(g, d, 0, z2);
    CHECK(c1.size() == 27);
    CHECK(c2.size() == 27);
    CHECK(profile_of(gr, c1) == std::pair<int, int>{2, 9});
    CHECK(profile_of(gr, c2) == std::pair<int, int>{2, 9});

    // two cones over the same line are disjoint and their union is again
    // equitable
    std::vector<int> common, both = c1;
    std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(common));
    CHECK(common.empty());
    both.insert(both.end(), c2.begin(), c2.end());
    std::sort(both.begin(), both.end());
    CHECK(both.size() == 54);
    CHECK(profile_of(gr, both) == std::pair<int, int>{11, 18});

    CHECK_THROWS_AS(cone(g, d, 0, 0), UserError);
    CHECK_THROWS_AS(cone(g, d, 0, d.toAmbient[0]), UserError);
}

TEST_CASE("hyperbolic sections and grids") {
    auto g = elliptic_quadric_gq(3);
    auto d = minus_perp(g, 0);
    auto lt = lines_through(g);
    REQUIRE(lt[0].size() == 10);
    int l1 = lt[0][0], l2 = lt[0][1];
    int x = d.toAmbient[0];

    auto section = hyperbolic_section(g, 0, l1, l2, x);
    CHECK(section.size() == 16);

    // the ambient section is a 4-tight set of the quadrangle
    auto sc = classify_point_set(g, section);
    CHECK(sc.tight == 4);
    CHECK_FALSE(sc.movoid.has_value());

    auto grid = grid_minus_perp(g, d, 0, l1, l2, x);
    CHECK(grid.size() == 9);
    auto gr = collinearity_graph(d.geo);
    CHECK(profile_of(gr, grid) == std::pair<int, int>{4, 2});

    int collinearWith0 = g.lines[l1][0] == 0 ? g.lines[l1][1] : g.lines[l1][0];
    CHECK_THROWS_AS(hyperbolic_section(g, 0, l1, l2, collinearWith0), UserError);
    CHECK_THROWS_AS(hyperbolic_section(g, 0, l1, l1, x), UserError);
}

TEST_CASE("parabolic section of the elliptic quadric is 10-tight") {
    auto g = elliptic_quadric_gq(3);
    auto section = quadric_hyperplane_section(g, {0, 0, 0, 0, 0, 1});
    CHECK(section.size() == 40);
    auto sc = classify_point_set(g, section);
    CHECK(sc.tight == 10);
    auto gr = collinearity_graph(g);
    CHECK(profile_of(gr, section) == std::pair<int, int>{12, 10});

    CHECK_THROWS_AS(quadric_hyperplane_section(g, GfVec{0, 0, 0, 0, 0, 0}), UserError);
    CHECK_THROWS_AS(quadric_hyperplane_section(g, GfVec{1, 1}), UserError);
}

TEST_CASE("a line is 1-tight and not an ovoid fragment") {
    auto g = elliptic_quadric_gq(3);
    auto sc = classify_point_set(g, g.lines[0]);
    CHECK(sc.tight == 1);
    CHECK_FALSE(sc.movoid.has_value());
    CHECK_FALSE(sc.hemisystem);
    CHECK(sc.lineMeets.back() == 4);
}

TEST_CASE("hemisystem search in Q-(5,3)") {
    auto g = elliptic_quadric_gq(3);
    auto h = find_hemisystem(g);
    REQUIRE(h.has_value());
    CHECK(h->size() == 56);
    CHECK(std::binary_search(h->begin(), h->end(), 0));

    auto sc = classify_point_set(g, *h);
    CHECK(sc.movoid == 2);
    CHECK(sc.hemisystem);
    CHECK_FALSE(sc.tight.has_value());

    auto gr = collinearity_graph(g);
    CHECK(profile_of(gr, *h) == std::pair<int, int>{10, 20});

    auto d = restrict_to_set(g, *h);
    CHECK(d.geo.npoints == 56);
    CHECK(d.geo.s == 1);
    CHECK(d.geo.t == 9);
    CHECK(d.geo.mu == 2);
    CHECK(d.geo.lines.size() == 280);
    check_params(collinearity_graph(d.geo), 56, 10, 0, 2, 2, -4, 35, 20);

    CHECK_THROWS_AS(find_hemisystem(elliptic_quadric_gq(2)), UserError);
    CHECK_THROWS_AS(restrict_to_set(g, std::vector<int>{0, 1, 2}), UserError);
}

TEST_CASE("several hemisystems come out of the same search") {
    auto g = elliptic_quadric_gq(3);
    auto sols = find_hemisystems(g, 3);
    REQUIRE(sols.size() == 3);
    CHECK(sols[0] != sols[1]);
    CHECK(sols[1] != sols[2]);
    for (const auto& h : sols) CHECK(classify_point_set(g, h).hemisystem);
}

TEST_CASE("smallest interesting cap and its representation") {
    auto r = cap_search(2, 2, 4, false);
    REQUIRE(r.cap.has_value());
    CHECK_FALSE(r.exhausted);
    std::vector<PointCoords> expected{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
    CHECK(*r.cap == expected);

    auto rep = linear_representation(2, 2, *r.cap);
    CHECK(rep.geo.npoints == 8);
    CHECK(rep.geo.s == 1);
    CHECK(rep.geo.t == 3);
    CHECK(rep.geo.mu == 4);
    CHECK(verify_geometry(rep.geo).ok);
    check_params(collinearity_graph(rep.geo), 8, 4, 0, 4, 0, -4, 6, 1);

    // no 5-cap in the Fano plane
    auto r5 = cap_search(2, 2, 5, false);
    CHECK_FALSE(r5.cap.has_value());
    CHECK(r5.exhausted);

    auto budgeted = cap_search(2, 2, 4, false, 1);
    CHECK(budgeted.budgetHit);
    CHECK_FALSE(budgeted.cap.has_value());
    CHECK_FALSE(budgeted.exhausted);

    GfVec y{1, 1, 0};
    CHECK(affine_index(rep, y) == 6);
    CHECK(rep.geo.coords[6] == y);
}

TEST_CASE("cap input validation") {
    CHECK_THROWS_AS(linear_representation(2, 2, {{0, 0, 1}}), UserError);
    CHECK_THROWS_AS(linear_representation(2, 2, {{0, 0, 1}, {0, 0, 1}}), UserError);
    CHECK_THROWS_AS(linear_representation(2, 2, {{0, 0, 1}, {0, 1, 0}, {0, 1, 1}}), UserError);
    CHECK_THROWS_AS(linear_representation(2, 2, {{0, 0, 2}, {0, 1, 0}}), UserError);
    CHECK_THROWS_AS(linear_representation(2, 3, {{0, 0, 2}, {0, 1, 0}}), UserError);
}

TEST_CASE("the 11-cap of PG(4,3) and its strongly regular representation") {
    auto r = cap_search(4, 3, 11, true);
    REQUIRE(r.cap.has_value());
    const auto& cap = *r.cap;
    REQUIRE(cap.size() == 11);

    // independent secant recount: all 110 external points on exactly one
    const FiniteField& f = FiniteField::get(3);
    auto pts = pg_points(4, 3);
    std::map<PointCoords, int> secants;
    for (const auto& p : pts) secants[p] = 0;
    std::set<std::vector<PointCoords>> secantLines;
    for (size_t i = 0; i < cap.size(); ++i)
        for (size_t j = i + 1; j < cap.size(); ++j) {
            auto lp = pg_line_points(f, cap[i], cap[j]);
            secantLines.insert(lp);
            for (const auto& x : lp) secants[x] += 1;
        }
    CHECK(secantLines.size() == 55);
    std::set<PointCoords> capSet(cap.begin(), cap.end());
    for (const auto& [p, cnt] : secants) {
        if (capSet.count(p))
            CHECK(cnt == 10);  // a cap point meets each other cap point once
        else
            CHECK(cnt == 1);
    }

    auto rep = linear_representation(4, 3, cap);
    CHECK(rep.geo.npoints == 243);
    CHECK(rep.geo.s == 2);
    CHECK(rep.geo.t == 10);
    CHECK(rep.geo.mu == 2);
    CHECK(verify_geometry(rep.geo).ok);
    check_params(collinearity_graph(rep.geo), 243, 22, 1, 2, 4, -5, 132, 110);
}

TEST_CASE("hyperplane and secundum slices of the 11-cap representation") {
    auto cap = *cap_search(4, 3, 11, true).cap;
    auto rep = linear_representation(4, 3, cap);
    auto gr = collinearity_graph(rep.geo);

    auto duals = pg_points(5, 3);
    GfVec infinity{1, 0, 0, 0, 0, 0};

    std::vector<int> meet2, meet5;
    for (size_t i = 0; i < duals.size(); ++i) {
        if (duals[i] == infinity) continue;
        int m = cap_meet_count(rep, duals[i]);
        if (m == 2) meet2.push_back(int(i));
        if (m == 5) meet5.push_back(int(i));
    }
    REQUIRE(!meet2.empty());
    REQUIRE(!meet5.empty());

    auto neg = hyperplane_affine_set(rep, duals[meet2.front()]);
    CHECK(neg.size() == 81);
    CHECK(profile_of(gr, neg) == std::pair<int, int>{4, 9});

    auto pos = hyperplane_affine_set(rep, duals[meet5.front()]);
    CHECK(pos.size() == 81);
    CHECK(profile_of(gr, pos) == std::pair<int, int>{10, 6});

    CHECK_THROWS_AS(hyperplane_affine_set(rep, infinity), UserError);
    CHECK_THROWS_AS(hyperplane_affine_set(rep, GfVec{0, 0, 0, 0, 0, 0}), UserError);

    // a secundum all of whose hyperplanes meet the cap in 5 points
    const FiniteField& f = FiniteField::get(3);
    bool found = false;
    for (size_t ai = 0; ai < meet5.size() && !found; ++ai)
        for (size_t bi = ai + 1; bi < meet5.size() && !found; ++bi) {
            const GfVec &a = duals[meet5[ai]], &b = duals[meet5[bi]];
            GfSpan span(f, 6);
            span.absorb(a);
            span.absorb(b);
            if (span.rank() != 2 || span.contains(infinity)) continue;
            bool allFive = true;
            for (int t = 1; t < 3 && allFive; ++t) {
                GfVec comb(6);
                for (int c = 0; c < 6; ++c) comb[c] = std::uint8_t(f.add(a[c], f.mul(t, b[c])));
                allFive = cap_meet_count(rep, comb) == 5;
            }
            if (!allFive) continue;
            auto sec = secundum_affine_set(rep, a, b);
            CHECK(sec.size() == 27);
            CHECK(profile_of(gr, sec) == std::pair<int, int>{6, 2});
            found = true;
        }
    CHECK(found);

    // mixed meets through a secundum are rejected
    CHECK_THROWS_AS(secundum_affine_set(rep, duals[meet2.front()], duals[meet5.front()]), UserError);
    CHECK_THROWS_AS(secundum_affine_set(rep, duals[meet5.front()], duals[meet5.front()]), UserError);
}
