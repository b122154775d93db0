#include "pqi/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pqi/geometry.hpp"

namespace pqi {

Graph pentagon() {
    Graph g(5, "pentagon");
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
    return g;
}

namespace {

std::vector<std::pair<int, int>> pairs_lex(int lo, int hi) {
    std::vector<std::pair<int, int>> ps;
    for (int a = lo; a <= hi; ++a)
        for (int b = a + 1; b <= hi; ++b) ps.push_back({a, b});
    return ps;
}

bool disjoint_pairs(std::pair<int, int> x, std::pair<int, int> y) {
    return x.first != y.first && x.first != y.second && x.second != y.first && x.second != y.second;
}

Graph disjointness_graph(const std::vector<std::vector<int>>& sets, const std::string& label) {
    Graph g(int(sets.size()), label);
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                                  std::back_inserter(common));
            if (common.empty()) g.add_edge(int(i), int(j));
        }
    return g;
}

}  // namespace

Graph petersen() {
    auto ps = pairs_lex(0, 4);
    Graph g(10, "petersen");
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j)
            if (disjoint_pairs(ps[i], ps[j])) g.add_edge(i, j);
    return g;
}

Graph clebsch() {
    // vertex 0 the apex, 1..5 the singletons, 6..15 the pairs of {1..5}
    auto ps = pairs_lex(1, 5);
    Graph g(16, "clebsch");
    for (int i = 1; i <= 5; ++i) g.add_edge(0, i);
    for (int pi = 0; pi < 10; ++pi) {
        g.add_edge(ps[pi].first, 6 + pi);
        g.add_edge(ps[pi].second, 6 + pi);
        for (int pj = pi + 1; pj < 10; ++pj)
            if (disjoint_pairs(ps[pi], ps[pj])) g.add_edge(6 + pi, 6 + pj);
    }
    return g;
}

Graph hoffman_singleton() {
    // pentagons P_h on vertices 5h+j, pentagrams Q_i on vertices 25+5i+j;
    // vertex j of P_h meets vertex hi+j of Q_i
    Graph g(50, "hoffman_singleton");
    for (int h = 0; h < 5; ++h)
        for (int j = 0; j < 5; ++j) g.add_edge(5 * h + j, 5 * h + (j + 1) % 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g.add_edge(25 + 5 * i + j, 25 + 5 * i + (j + 2) % 5);
    for (int h = 0; h < 5; ++h)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) g.add_edge(5 * h + j, 25 + 5 * i + (h * i + j) % 5);
    return g;
}

std::vector<std::vector<int>> hyperoval_orbit() {
    const FiniteField& f = FiniteField::get(4);
    auto pts = pg_points(2, 4);
    auto index_of = [&](const PointCoords& p) {
        auto it = std::lower_bound(pts.begin(), pts.end(), p);
        if (it == pts.end() || *it != p) throw InternalCheckError("projective point lookup failed");
        return int(it - pts.begin());
    };

    // lexicographically least 6-arc; no 3 of its points are collinear
    auto seed = cap_search(2, 4, 6, false);
    if (!seed.cap) throw InternalCheckError("PG(2,4) has no 6-arc");
    std::vector<int> first;
    for (const auto& c : *seed.cap) first.push_back(index_of(c));
    std::sort(first.begin(), first.end());

    // close under the elementary transvections x -> x + c*x[j] at entry i
    std::set<std::vector<int>> orbit{first};
    std::vector<std::vector<int>> queue{first};
    while (!queue.empty()) {
        auto oval = queue.back();
        queue.pop_back();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                for (int c = 1; c < 4; ++c) {
                    std::vector<int> image;
                    for (int p : oval) {
                        PointCoords v = pts[p];
                        v[i] = std::uint8_t(f.add(v[i], f.mul(c, v[j])));
                        image.push_back(index_of(pg_normalize(f, v)));
                    }
                    std::sort(image.begin(), image.end());
                    if (orbit.insert(image).second) queue.push_back(image);
                }
            }
    }
    if (orbit.size() != 56)
        throw InternalCheckError("hyperoval orbit has size " + std::to_string(orbit.size()));
    return {orbit.begin(), orbit.end()};
}

Design steiner_3_6_22() {
    const FiniteField& f = FiniteField::get(4);
    auto pts = pg_points(2, 4);

    // the 21 lines of PG(2,4), found from point pairs
    std::set<std::vector<int>> lineSet;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            std::vector<int> line;
            for (const auto& c : pg_line_points(f, pts[i], pts[j])) {
                auto it = std::lower_bound(pts.begin(), pts.end(), c);
                line.push_back(int(it - pts.begin()));
            }
            std::sort(line.begin(), line.end());
            lineSet.insert(line);
        }
    if (lineSet.size() != 21)
        throw InternalCheckError("PG(2,4) has " + std::to_string(lineSet.size()) + " lines");

    Design d;
    d.npoints = 22;
    for (auto line : lineSet) {
        line.push_back(21);  // the adjoined point at infinity
        d.blocks.push_back(line);
    }
    for (const auto& oval : hyperoval_orbit()) d.blocks.push_back(oval);
    std::sort(d.blocks.begin(), d.blocks.end());

    // each triple of points must lie in exactly one block
    std::map<std::vector<int>, int> seen;
    for (const auto& b : d.blocks)
        for (size_t x = 0; x < b.size(); ++x)
            for (size_t y = x + 1; y < b.size(); ++y)
                for (size_t z = y + 1; z < b.size(); ++z) ++seen[{b[x], b[y], b[z]}];
    long long triples = 22LL * 21 * 20 / 6;
    if ((long long)seen.size() != triples)
        throw InternalCheckError("design covers " + std::to_string(seen.size()) + " distinct triples");
    for (const auto& [t, cnt] : seen)
        if (cnt != 1) throw InternalCheckError("a point triple lies in " + std::to_string(cnt) + " blocks");
    return d;
}

Graph gewirtz() { return disjointness_graph(hyperoval_orbit(), "gewirtz"); }

Graph m22() { return disjointness_graph(steiner_3_6_22().blocks, "m22"); }

Graph higman_sims() {
    // vertex 0 the apex, 1..22 the design points, 23..99 the blocks
    Design d = steiner_3_6_22();
    Graph g(100, "higman_sims");
    for (int p = 0; p < 22; ++p) g.add_edge(0, 1 + p);
    for (size_t bi = 0; bi < d.blocks.size(); ++bi) {
        for (int p : d.blocks[bi]) g.add_edge(1 + p, 23 + int(bi));
        for (size_t bj = bi + 1; bj < d.blocks.size(); ++bj) {
            std::vector<int> common;
            std::set_intersection(d.blocks[bi].begin(), d.blocks[bi].end(), d.blocks[bj].begin(),
                                  d.blocks[bj].end(), std::back_inserter(common));
            if (common.empty()) g.add_edge(23 + int(bi), 23 + int(bj));
        }
    }
    return g;
}

Graph build_named(const std::string& name) {
    if (name == "pentagon") return pentagon();
    if (name == "petersen") return petersen();
    if (name == "clebsch") return clebsch();
    if (name == "hoffman_singleton") return hoffman_singleton();
    if (name == "gewirtz") return gewirtz();
    if (name == "m22") return m22();
    if (name == "higman_sims") return higman_sims();
    throw UserError("unknown graph name: " + name);
}

std::vector<std::string> catalog_names() {
    return {"pentagon", "petersen", "clebsch", "hoffman_singleton", "gewirtz", "m22", "higman_sims"};
}

}  // namespace pqi
