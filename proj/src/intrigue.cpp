#include "pqi/intrigue.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <thread>
#include <utility>

namespace pqi {

const char* sign_name(SetSign s) { return s == SetSign::Positive ? "positive" : "negative"; }

std::vector<FeasibleRow> feasible_params(const SrgParams& p) {
    std::vector<FeasibleRow> rows;
    if (!p.integral) return rows;
    for (SetSign sign : {SetSign::Positive, SetSign::Negative}) {
        long long e = sign == SetSign::Positive ? p.ePlus : p.eMinus;
        long long den = p.k - e;  // k - h1 + h2 for every row of this sign
        if (den <= 0) continue;
        for (long long h2 = 1; h2 <= p.k; ++h2) {
            long long h1 = h2 + e;
            if (h1 < 0 || h1 > p.k) continue;
            if ((h2 * p.v) % den != 0) continue;
            long long size = h2 * p.v / den;
            if (size < 1 || size > p.v - 1) continue;
            if (h1 >= size) continue;  // inside degree is at most size-1
            rows.push_back({sign, h1, h2, size});
        }
    }
    return rows;
}

std::optional<IntrigueCertificate> verify_intriguing(const Graph& g, const SrgParams& p,
                                                     const Bitset& s) {
    if (p.mu < 1) throw UserError("host graph is disconnected (mu = 0)");
    int cnt = s.count();
    if (cnt == 0 || cnt == g.n()) return std::nullopt;
    DegreeProfile prof = regularity_profile(g, s);
    if (!prof.inside_constant() || !prof.outside_constant()) return std::nullopt;
    long long h1 = prof.inside.front();
    long long h2 = prof.outside.front();
    // From here on the profile is a proper equitable 2-partition, so h1-h2
    // must be an eigenvalue and the size formula must hold exactly.
    if (!p.integral)
        throw InternalCheckError("constant degree profile on a graph with irrational eigenvalues");
    if (h1 - h2 != p.ePlus && h1 - h2 != p.eMinus)
        throw InternalCheckError("constant profile difference " + std::to_string(h1 - h2) +
                                 " is not an eigenvalue");
    if (h2 == 0) throw InternalCheckError("proper subset with outside degree 0 in a connected graph");
    if (cnt * (p.k - h1 + h2) != h2 * p.v)
        throw InternalCheckError("set size violates h2*v/(k-h1+h2)");
    IntrigueCertificate c;
    c.sign = h1 - h2 == p.ePlus ? SetSign::Positive : SetSign::Negative;
    c.h1 = h1;
    c.h2 = h2;
    c.size = cnt;
    return c;
}

bool idempotent_annihilates(const RationalMatrix& e, const Bitset& s) {
    for (int i = 0; i < e.rows(); ++i) {
        Rational acc = 0;
        for (int j = s.find_first(); j >= 0; j = s.find_next(j)) acc += e.at(i, j);
        if (acc != 0) return false;
    }
    return true;
}

std::optional<IntrigueCertificate> verify_cross_checked(const Graph& g, const SrgParams& p,
                                                        const Idempotents& idem, const Bitset& s) {
    auto cert = verify_intriguing(g, p, s);
    if (s.count() == 0 || s.count() == g.n()) return cert;
    bool killsPlus = idempotent_annihilates(idem.E1, s);
    bool killsMinus = idempotent_annihilates(idem.E2, s);
    // chi_s lies in span(1) + one eigenspace exactly when the other
    // idempotent kills it; the degree test must agree.
    bool spectralSaysIntriguing = killsPlus || killsMinus;
    if (cert.has_value() != spectralSaysIntriguing)
        throw InternalCheckError("degree test and idempotent annihilation disagree");
    if (cert) {
        bool expectKillMinus = cert->sign == SetSign::Positive;  // positive sets avoid the e- space
        if (killsMinus != expectKillMinus || killsPlus == expectKillMinus)
            throw InternalCheckError("idempotent annihilation matched the wrong sign");
    }
    return cert;
}

namespace {

// Backtracking search for all vertex sets with inside degree h1, outside
// degree h2 and size N. Vertices are In, Out or Undecided; counters track
// decided-in and undecided neighbors. Unit propagation applies the window
// constraints until fixpoint, then the branch vertex is the least undecided
// neighbor of the least inside vertex still short of h1, falling back to the
// least undecided vertex.
class RowEngine {
  public:
    RowEngine(const Graph& g, long long h1, long long h2, long long size)
        : g_(g),
          n_(g.n()),
          h1_(int(h1)),
          h2_(int(h2)),
          target_(int(size)),
          state_(g.n(), kUnd),
          dIn_(g.n(), 0),
          dUnd_(g.n(), 0),
          und_(g.n()),
          undCount_(g.n()) {
        for (int v = 0; v < n_; ++v) {
            und_.set(v);
            dUnd_[v] = g.degree(v);
        }
    }

    using Prefix = std::vector<std::pair<int, bool>>;

    // Replays branch decisions made earlier by an identical engine.
    void replay(const Prefix& prefix) {
        for (auto [v, inside] : prefix) {
            assign(v, inside);
            if (!propagate()) throw InternalCheckError("search prefix replay failed");
        }
    }

    bool root_propagate() { return propagate(); }

    bool solved() const { return undCount_ == 0; }

    Bitset inside_set() const {
        Bitset s(n_);
        for (int v = 0; v < n_; ++v)
            if (state_[v] == kIn) s.set(v);
        return s;
    }

    int branch_vertex() const {
        for (int x = 0; x < n_; ++x)
            if (state_[x] == kIn && dIn_[x] < h1_) return (g_.neighbors(x) & und_).find_first();
        return und_.find_first();
    }

    // One branch decision: returns true unless the child state is
    // contradictory. rewind_to undoes it either way via the mark.
    size_t mark() const { return trail_.size(); }
    bool descend(int v, bool inside) {
        assign(v, inside);
        return propagate();
    }
    void rewind_to(size_t m) {
        while (trail_.size() > m) {
            int v = trail_.back();
            trail_.pop_back();
            bool wasIn = state_[v] == kIn;
            state_[v] = kUnd;
            und_.set(v);
            ++undCount_;
            if (wasIn) --inCount_;
            const Bitset& nb = g_.neighbors(v);
            for (int u = nb.find_first(); u >= 0; u = nb.find_next(u)) {
                ++dUnd_[u];
                if (wasIn) --dIn_[u];
            }
        }
        queue_.clear();
    }

    // Full enumeration below the current state. Budget 0 means unlimited;
    // returns false when the budget ran out (results so far are kept).
    bool run(std::vector<Bitset>& out, long long budget, bool firstOnly, long long& nodes) {
        out_ = &out;
        budget_ = budget;
        firstOnly_ = firstOnly;
        nodes_ = nodes;
        stop_ = exhaustedBudget_ = false;
        dfs();
        nodes = nodes_;
        return !exhaustedBudget_;
    }

    long long nodes_taken() const { return nodes_; }

    // Splits the subtree under the current state into independent prefix
    // tasks, counting each branch decision once. Sets solving during the
    // split land in solved.
    std::vector<Prefix> split_frontier(int want, std::vector<Bitset>& sink, long long& nodes) {
        std::deque<Prefix> pending;
        pending.push_back({});
        std::vector<Prefix> ready;
        while (!pending.empty() && int(pending.size()) < want) {
            Prefix pre = std::move(pending.front());
            pending.pop_front();
            size_t base = mark();
            replay(pre);
            if (solved()) {
                sink.push_back(inside_set());
                rewind_to(base);
                continue;
            }
            int v = branch_vertex();
            ++nodes;
            for (bool inside : {true, false}) {
                size_t m = mark();
                if (descend(v, inside)) {
                    Prefix child = pre;
                    child.emplace_back(v, inside);
                    pending.push_back(std::move(child));
                }
                rewind_to(m);
            }
            rewind_to(base);
        }
        ready.assign(pending.begin(), pending.end());
        return ready;
    }

  private:
    static constexpr int8_t kUnd = 0, kIn = 1, kOut = 2;

    void assign(int v, bool inside) {
        state_[v] = inside ? kIn : kOut;
        und_.reset(v);
        --undCount_;
        if (inside) ++inCount_;
        trail_.push_back(v);
        const Bitset& nb = g_.neighbors(v);
        for (int u = nb.find_first(); u >= 0; u = nb.find_next(u)) {
            --dUnd_[u];
            if (inside) ++dIn_[u];
            queue_.push_back(u);
        }
        queue_.push_back(v);
    }

    bool force_neighbors(int x, bool inside) {
        Bitset f = g_.neighbors(x) & und_;
        for (int u = f.find_first(); u >= 0; u = f.find_next(u)) assign(u, inside);
        return true;
    }

    bool check(int x) {
        int lo = dIn_[x], hi = dIn_[x] + dUnd_[x];
        switch (state_[x]) {
            case kIn:
                if (lo > h1_ || hi < h1_) return false;
                if (dUnd_[x] == 0) return true;
                if (lo == h1_) return force_neighbors(x, false);
                if (hi == h1_) return force_neighbors(x, true);
                return true;
            case kOut:
                if (lo > h2_ || hi < h2_) return false;
                if (dUnd_[x] == 0) return true;
                if (lo == h2_) return force_neighbors(x, false);
                if (hi == h2_) return force_neighbors(x, true);
                return true;
            default: {
                bool canIn = lo <= h1_ && hi >= h1_;
                bool canOut = lo <= h2_ && hi >= h2_;
                if (!canIn && !canOut) return false;
                if (!canIn) assign(x, false);
                else if (!canOut) assign(x, true);
                return true;
            }
        }
    }

    bool propagate() {
        while (true) {
            if (inCount_ > target_ || inCount_ + undCount_ < target_) {
                queue_.clear();
                return false;
            }
            if (undCount_ > 0 && inCount_ == target_) {
                Bitset rest = und_;
                for (int u = rest.find_first(); u >= 0; u = rest.find_next(u)) assign(u, false);
                continue;
            }
            if (undCount_ > 0 && inCount_ + undCount_ == target_) {
                Bitset rest = und_;
                for (int u = rest.find_first(); u >= 0; u = rest.find_next(u)) assign(u, true);
                continue;
            }
            if (queue_.empty()) return true;
            int x = queue_.back();
            queue_.pop_back();
            if (!check(x)) {
                queue_.clear();
                return false;
            }
        }
    }

    void dfs() {
        if (undCount_ == 0) {
            if (inCount_ != target_) throw InternalCheckError("solved state missed size target");
            out_->push_back(inside_set());
            if (firstOnly_) stop_ = true;
            return;
        }
        int v = branch_vertex();
        ++nodes_;
        if (budget_ > 0 && nodes_ > budget_) {
            exhaustedBudget_ = true;
            stop_ = true;
            return;
        }
        for (bool inside : {true, false}) {
            size_t m = mark();
            if (descend(v, inside)) dfs();
            rewind_to(m);
            if (stop_) return;
        }
    }

    const Graph& g_;
    int n_;
    int h1_, h2_, target_;
    std::vector<int8_t> state_;
    std::vector<int> dIn_, dUnd_;
    Bitset und_;
    int undCount_ = 0;
    int inCount_ = 0;
    std::vector<int> trail_;
    std::vector<int> queue_;

    std::vector<Bitset>* out_ = nullptr;
    long long budget_ = 0;
    bool firstOnly_ = false;
    long long nodes_ = 0;
    bool stop_ = false;
    bool exhaustedBudget_ = false;
};

struct RowOutcome {
    std::vector<Bitset> sets;
    bool exhaustive = true;
};

RowOutcome search_row(const Graph& g, const FeasibleRow& row, const EnumerateOptions& opt,
                      long long& nodes) {
    RowOutcome res;
    RowEngine engine(g, row.h1, row.h2, row.size);
    if (!engine.root_propagate()) return res;
    if (engine.solved()) {
        res.sets.push_back(engine.inside_set());
        return res;
    }
    bool serial = opt.threads <= 1 || opt.firstOnly || opt.budgetNodes > 0;
    if (serial) {
        long long remaining = 0;
        if (opt.budgetNodes > 0) {
            remaining = opt.budgetNodes - nodes;
            if (remaining <= 0) {
                res.exhaustive = false;
                return res;
            }
        }
        long long taken = 0;
        res.exhaustive = engine.run(res.sets, remaining, opt.firstOnly, taken);
        nodes += taken;
        sort_sets(res.sets);
        return res;
    }
    int workers = opt.threads;
    std::vector<RowEngine::Prefix> tasks = engine.split_frontier(workers * 4, res.sets, nodes);
    std::vector<std::vector<Bitset>> taskSets(tasks.size());
    std::vector<long long> taskNodes(tasks.size(), 0);
    auto body = [&](int w) {
        for (size_t t = size_t(w); t < tasks.size(); t += size_t(workers)) {
            RowEngine local(g, row.h1, row.h2, row.size);
            if (!local.root_propagate()) throw InternalCheckError("task root contradiction");
            local.replay(tasks[t]);
            long long taken = 0;
            local.run(taskSets[t], 0, false, taken);
            taskNodes[t] = taken;
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(body, w);
    body(0);
    for (auto& th : pool) th.join();
    for (size_t t = 0; t < tasks.size(); ++t) {
        nodes += taskNodes[t];
        for (auto& s : taskSets[t]) res.sets.push_back(std::move(s));
    }
    sort_sets(res.sets);
    return res;
}

}  // namespace

EnumerateResult enumerate_intriguing(const Graph& g, SetSign sign, const EnumerateOptions& opt) {
    EnumerateResult res;
    SrgParams p = require_srg(g);
    if (!p.integral) {
        res.note = "irrational eigenvalues";
        return res;
    }
    for (const FeasibleRow& row : feasible_params(p)) {
        if (row.sign != sign) continue;
        if (opt.sizeCap > 0 && row.size > opt.sizeCap) continue;
        res.rows.push_back(row);
    }
    if (res.rows.empty()) {
        res.note = "no feasible parameter rows";
        return res;
    }
    std::vector<std::pair<Bitset, IntrigueCertificate>> found;
    bool hit = false;
    for (const FeasibleRow& row : res.rows) {
        if (hit) break;
        RowOutcome out = search_row(g, row, opt, res.nodes);
        if (!out.exhaustive) res.exhaustive = false;
        IntrigueCertificate cert{row.sign, row.h1, row.h2, row.size};
        for (auto& s : out.sets) found.emplace_back(std::move(s), cert);
        if (opt.firstOnly && !found.empty()) hit = true;
        if (!res.exhaustive) break;
    }
    if (opt.firstOnly && hit) res.exhaustive = false;
    if (opt.group != nullptr) {
        std::vector<Bitset> bare;
        bare.reserve(found.size());
        for (auto& [s, c] : found) bare.push_back(s);
        std::vector<Bitset> reps = orbit_representatives(g, bare, *opt.group);
        found.clear();
        for (auto& s : reps) {
            auto cert = verify_intriguing(g, p, s);
            if (!cert) throw InternalCheckError("orbit representative lost the degree profile");
            found.emplace_back(std::move(s), *cert);
        }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return Bitset::seq_less(a.first, b.first); });
    res.sets.reserve(found.size());
    res.certs.reserve(found.size());
    for (auto& [s, c] : found) {
        res.sets.push_back(std::move(s));
        res.certs.push_back(c);
    }
    return res;
}

namespace {

IntrigueCertificate require_cert(const Graph& g, const SrgParams& p, const Bitset& s,
                                 const char* what) {
    auto cert = verify_intriguing(g, p, s);
    if (!cert) throw UserError(std::string(what) + " operand is not an intriguing set");
    return *cert;
}

}  // namespace

DerivedSet closure_difference(const Graph& g, const SrgParams& p, const Bitset& big,
                              const Bitset& small) {
    IntrigueCertificate cb = require_cert(g, p, big, "difference");
    IntrigueCertificate ca = require_cert(g, p, small, "difference");
    if (ca.sign != cb.sign) throw UserError("difference operands have opposite signs");
    if (!small.subset_of(big) || small == big)
        throw UserError("difference needs the second operand strictly inside the first");
    Bitset d = big;
    d.subtract(small);
    auto cert = verify_intriguing(g, p, d);
    if (!cert || cert->sign != cb.sign || cert->h1 != cb.h1 - ca.h2 || cert->h2 != cb.h2 - ca.h2)
        throw InternalCheckError("difference of nested same-sign sets lost its certificate");
    return {d, *cert};
}

DerivedSet closure_union(const Graph& g, const SrgParams& p, const Bitset& a, const Bitset& b) {
    IntrigueCertificate ca = require_cert(g, p, a, "union");
    IntrigueCertificate cb = require_cert(g, p, b, "union");
    if (ca.sign != cb.sign) throw UserError("union operands have opposite signs");
    if (a.intersects(b)) throw UserError("union operands must be disjoint");
    Bitset u = a | b;
    auto cert = verify_intriguing(g, p, u);
    if (!cert || cert->sign != ca.sign || cert->h1 != ca.h1 + cb.h2 || cert->h2 != ca.h2 + cb.h2)
        throw InternalCheckError("disjoint same-sign union lost its certificate");
    return {u, *cert};
}

DerivedSet closure_complement(const Graph& g, const SrgParams& p, const Bitset& s) {
    IntrigueCertificate cs = require_cert(g, p, s, "complement");
    Bitset c = s.complement();
    auto cert = verify_intriguing(g, p, c);
    if (!cert || cert->sign != cs.sign || cert->h1 != p.k - cs.h2 || cert->h2 != p.k - cs.h1)
        throw InternalCheckError("complement lost its certificate");
    return {c, *cert};
}

long long intersection_check(const Graph& g, const SrgParams& p, const Bitset& iPlus,
                             const Bitset& iMinus) {
    IntrigueCertificate cp = require_cert(g, p, iPlus, "intersection");
    IntrigueCertificate cm = require_cert(g, p, iMinus, "intersection");
    if (cp.sign != SetSign::Positive || cm.sign != SetSign::Negative)
        throw UserError("intersection check needs a positive and a negative set, in that order");
    long long meet = iPlus.intersect_count(iMinus);
    if (meet * p.v != cp.size * cm.size)
        throw InternalCheckError("opposite-sign intersection violated |A||B|/v");
    return meet;
}

}  // namespace pqi
