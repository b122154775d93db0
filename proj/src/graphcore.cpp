#include "pqi/graphcore.hpp"

#include <set>

namespace pqi {

long long Graph::edge_count() const {
    long long s = 0;
    for (int v = 0; v < n_; ++v) s += degree(v);
    return s / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n_; ++u)
        for (int v = adj_[u].find_next(u); v >= 0; v = adj_[u].find_next(v)) e.emplace_back(u, v);
    return e;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    Graph h(int(vertices.size()), g.label());
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (g.adjacent(vertices[i], vertices[j])) h.add_edge(int(i), int(j));
    return h;
}

RationalMatrix adjacency_matrix(const Graph& g) {
    RationalMatrix a(g.n(), g.n());
    for (auto [u, v] : g.edges()) {
        a.at(u, v) = 1;
        a.at(v, u) = 1;
    }
    return a;
}

SrgCheck srg_params(const Graph& g) {
    SrgCheck out;
    int n = g.n();
    if (n < 2) {
        out.reason = "graph too small";
        return out;
    }
    int k = g.degree(0);
    for (int v = 1; v < n; ++v)
        if (g.degree(v) != k) {
            out.reason = "not regular: degrees " + std::to_string(k) + " and " + std::to_string(g.degree(v));
            out.witnessA = 0;
            out.witnessB = v;
            return out;
        }
    if (k == 0 || k == n - 1) {
        out.reason = "complete or empty graph has a single adjacency class";
        return out;
    }
    long long lambda = -1, mu = -1;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            long long c = g.neighbors(u).intersect_count(g.neighbors(v));
            long long& slot = g.adjacent(u, v) ? lambda : mu;
            if (slot < 0) slot = c;
            if (slot != c) {
                out.reason = std::string("common-neighbor count not constant on ") +
                             (g.adjacent(u, v) ? "adjacent" : "non-adjacent") + " pairs";
                out.witnessA = u;
                out.witnessB = v;
                return out;
            }
        }
    }
    SrgParams& p = out.params;
    p.v = n;
    p.k = k;
    p.lambda = lambda;
    p.mu = mu;
    if (p.k * (p.k - p.lambda - 1) != (p.v - p.k - 1) * p.mu)
        throw InternalCheckError("edge count identity failed on a verified strongly regular graph");
    p.disc = (p.lambda - p.mu) * (p.lambda - p.mu) + 4 * (p.k - p.mu);
    long long root = 0;
    while (root * root < p.disc) ++root;
    p.integral = (root * root == p.disc);
    if (p.integral) {
        // (lambda-mu) and the root always share parity, so the halves are exact
        p.ePlus = (p.lambda - p.mu + root) / 2;
        p.eMinus = (p.lambda - p.mu - root) / 2;
        p.multPlus = (-p.k - p.eMinus * (p.v - 1)) / (p.ePlus - p.eMinus);
        p.multMinus = p.v - 1 - p.multPlus;
    }
    out.ok = true;
    return out;
}

SrgParams require_srg(const Graph& g) {
    SrgCheck c = srg_params(g);
    if (!c.ok) throw UserError("graph '" + g.label() + "' is not strongly regular: " + c.reason);
    return c.params;
}

Idempotents minimal_idempotents(const Graph& g, const SrgParams& p) {
    if (!p.integral)
        throw UserError("eigenvalues are irrational (conference parameters); no rational idempotents");
    int n = g.n();
    RationalMatrix a = adjacency_matrix(g);
    RationalMatrix i = RationalMatrix::identity(n);
    RationalMatrix j = RationalMatrix::ones(n, n);
    Idempotents e;
    e.E0 = j.scaled(ratio(1, n));
    e.E1 = (a - i.scaled(ratio(p.eMinus)) - j.scaled(ratio(p.k - p.eMinus, n))).scaled(ratio(1, p.ePlus - p.eMinus));
    e.E2 = (a - i.scaled(ratio(p.ePlus)) - j.scaled(ratio(p.k - p.ePlus, n))).scaled(ratio(1, p.eMinus - p.ePlus));
    return e;
}

DegreeProfile regularity_profile(const Graph& g, const Bitset& s) {
    DegreeProfile out;
    for (int v = 0; v < g.n(); ++v) {
        int d = g.neighbors(v).intersect_count(s);
        (s.test(v) ? out.inside : out.outside).push_back(d);
    }
    std::sort(out.inside.begin(), out.inside.end());
    std::sort(out.outside.begin(), out.outside.end());
    return out;
}

bool is_permutation(const Perm& p, int n) {
    if (int(p.size()) != n) return false;
    std::vector<bool> seen(n, false);
    for (int x : p) {
        if (x < 0 || x >= n || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

AutomorphismCheck check_automorphism(const Graph& g, const Perm& p) {
    AutomorphismCheck out;
    if (!is_permutation(p, g.n())) return out;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.adjacent(u, v) != g.adjacent(p[u], p[v])) {
                out.u = u;
                out.v = v;
                return out;
            }
    out.ok = true;
    return out;
}

Graph apply_perm(const Graph& g, const Perm& p) {
    if (!is_permutation(p, g.n())) throw UserError("not a permutation of the vertex set");
    Graph h(g.n(), g.label());
    for (auto [u, v] : g.edges()) h.add_edge(p[u], p[v]);
    return h;
}

Bitset apply_perm_set(const Perm& p, const Bitset& s) {
    Bitset out(s.universe());
    for (int i = s.find_first(); i >= 0; i = s.find_next(i)) out.set(p[i]);
    return out;
}

std::vector<Bitset> orbit_representatives(const Graph& g, const std::vector<Bitset>& sets,
                                          const std::vector<Perm>& gens) {
    for (const Perm& p : gens) {
        AutomorphismCheck c = check_automorphism(g, p);
        if (!c.ok)
            throw UserError("generator is not an automorphism; adjacency of pair (" + std::to_string(c.u) +
                            "," + std::to_string(c.v) + ") is not preserved");
    }
    std::set<std::vector<int>> visited;
    std::vector<Bitset> reps;
    for (const Bitset& s : sets) {
        if (visited.count(s.members())) continue;
        Bitset best = s;
        std::vector<Bitset> frontier{s};
        visited.insert(s.members());
        while (!frontier.empty()) {
            std::vector<Bitset> next;
            for (const Bitset& cur : frontier)
                for (const Perm& p : gens) {
                    Bitset img = apply_perm_set(p, cur);
                    if (visited.insert(img.members()).second) {
                        if (Bitset::seq_less(img, best)) best = img;
                        next.push_back(std::move(img));
                    }
                }
            frontier = std::move(next);
        }
        reps.push_back(best);
    }
    sort_sets(reps);
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    return reps;
}

}  // namespace pqi
