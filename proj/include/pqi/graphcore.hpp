#pragma once

// Graphs on a fixed vertex set with bitset adjacency rows, strongly regular
// parameter extraction, minimal idempotents of the adjacency algebra, and
// permutation/orbit helpers.

#include <string>
#include <utility>
#include <vector>

#include "pqi/common.hpp"
#include "pqi/exactmath.hpp"

namespace pqi {

class Graph {
  public:
    Graph() = default;
    explicit Graph(int n, std::string label = "") : n_(n), label_(std::move(label)), adj_(n, Bitset(n)) {}

    int n() const { return n_; }
    const std::string& label() const { return label_; }
    void set_label(std::string s) { label_ = std::move(s); }

    void add_edge(int u, int v) {
        if (u == v) throw UserError("loop edge at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw UserError("edge endpoint out of range");
        adj_[u].set(v);
        adj_[v].set(u);
    }
    bool adjacent(int u, int v) const { return adj_[u].test(v); }
    const Bitset& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }
    long long edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // u < v, sorted

  private:
    int n_ = 0;
    std::string label_;
    std::vector<Bitset> adj_;
};

// Vertex i of the result corresponds to vertices[i] of g.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

RationalMatrix adjacency_matrix(const Graph& g);

struct SrgParams {
    long long v = 0, k = 0, lambda = 0, mu = 0;
    long long disc = 0;  // (lambda-mu)^2 + 4(k-mu)
    bool integral = false;
    long long ePlus = 0, eMinus = 0;        // e+ >= 0 > e- when integral
    long long multPlus = 0, multMinus = 0;  // eigenvalue multiplicities
};

struct SrgCheck {
    bool ok = false;
    SrgParams params{};
    std::string reason;
    int witnessA = -1, witnessB = -1;  // pair violating constancy, when applicable
};

// Decides strong regularity by direct counting. Complete and empty graphs are
// rejected (only one adjacency class).
SrgCheck srg_params(const Graph& g);

// Convenience that throws UserError with the stored reason on failure.
SrgParams require_srg(const Graph& g);

struct Idempotents {
    RationalMatrix E0, E1, E2;  // E1 for e+, E2 for e-
};

// UserError when the eigenvalues are irrational (conference parameters).
Idempotents minimal_idempotents(const Graph& g, const SrgParams& p);

struct DegreeProfile {
    std::vector<int> inside;   // sorted |N(y) ∩ S| over y in S
    std::vector<int> outside;  // sorted |N(y) ∩ S| over y outside S
    bool inside_constant() const { return inside.empty() || inside.front() == inside.back(); }
    bool outside_constant() const { return outside.empty() || outside.front() == outside.back(); }
};

DegreeProfile regularity_profile(const Graph& g, const Bitset& s);

using Perm = std::vector<int>;

bool is_permutation(const Perm& p, int n);

struct AutomorphismCheck {
    bool ok = false;
    int u = -1, v = -1;  // pair whose adjacency is not preserved
};
AutomorphismCheck check_automorphism(const Graph& g, const Perm& p);

// Graph with every edge (u,v) relabeled to (p[u], p[v]).
Graph apply_perm(const Graph& g, const Perm& p);
Bitset apply_perm_set(const Perm& p, const Bitset& s);

// Closes each set under the group generated by gens (validated automorphisms)
// and keeps the least member of each orbit; result sorted, duplicates merged.
std::vector<Bitset> orbit_representatives(const Graph& g, const std::vector<Bitset>& sets,
                                          const std::vector<Perm>& gens);

}  // namespace pqi
