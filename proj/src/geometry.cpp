#include "pqi/geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace pqi {

namespace {

// lexicographic rank of a coordinate vector, first entry most significant
long long vec_rank(const GfVec& v, int q) {
    long long r = 0;
    for (auto c : v) r = r * q + c;
    return r;
}

GfVec vec_unrank(long long r, int len, int q) {
    GfVec v(len, 0);
    for (int i = len - 1; i >= 0; --i) {
        v[i] = std::uint8_t(r % q);
        r /= q;
    }
    return v;
}

int find_point(const std::vector<PointCoords>& sorted, const PointCoords& p) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
    if (it == sorted.end() || *it != p) return -1;
    return int(it - sorted.begin());
}

GfVec vec_add(const FiniteField& f, const GfVec& a, const GfVec& b) {
    GfVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::uint8_t(f.add(a[i], b[i]));
    return r;
}

GfVec vec_scale(const FiniteField& f, int c, const GfVec& a) {
    GfVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::uint8_t(f.mul(c, a[i]));
    return r;
}

int dot(const FiniteField& f, const GfVec& a, const GfVec& b) {
    int acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

bool is_normalized(const GfVec& v) {
    for (auto c : v) {
        if (c == 0) continue;
        return c == 1;
    }
    return false;  // zero vector
}

}  // namespace

std::vector<PointCoords> pg_points(int n, int q) {
    if (n < 1) throw UserError("projective dimension must be at least 1");
    const FiniteField& f = FiniteField::get(q);
    (void)f;
    long long total = 1;
    for (int i = 0; i <= n; ++i) total *= q;
    std::vector<PointCoords> pts;
    for (long long r = 0; r < total; ++r) {
        GfVec v = vec_unrank(r, n + 1, q);
        if (is_normalized(v)) pts.push_back(std::move(v));
    }
    return pts;
}

PointCoords pg_normalize(const FiniteField& f, PointCoords v) {
    for (auto c : v) {
        if (c == 0) continue;
        int s = f.inv(c);
        for (auto& x : v) x = std::uint8_t(f.mul(s, x));
        return v;
    }
    throw UserError("cannot normalize the zero vector");
}

std::vector<PointCoords> pg_line_points(const FiniteField& f, const PointCoords& a, const PointCoords& b) {
    if (a.size() != b.size()) throw UserError("line endpoints have mismatched lengths");
    if (a == b) throw UserError("line endpoints coincide");
    std::vector<PointCoords> pts;
    pts.push_back(pg_normalize(f, a));
    for (int t = 0; t < f.q(); ++t) pts.push_back(pg_normalize(f, vec_add(f, vec_scale(f, t, a), b)));
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw UserError("line endpoints are projectively equal");
    return pts;
}

void QuadraticForm::set_coef(int i, int j, int c) {
    if (i > j || i < 0 || j >= nvars_) throw UserError("quadratic form coefficient index out of range");
    if (c < 0 || c >= f_->q()) throw UserError("quadratic form coefficient out of field range");
    coef_[size_t(i) * nvars_ + j] = std::uint8_t(c);
}

int QuadraticForm::eval(const PointCoords& x) const {
    if (int(x.size()) != nvars_) throw UserError("quadratic form applied to vector of wrong length");
    int acc = 0;
    for (int i = 0; i < nvars_; ++i)
        for (int j = i; j < nvars_; ++j) {
            int c = coef(i, j);
            if (c == 0) continue;
            acc = f_->add(acc, f_->mul(c, f_->mul(x[i], x[j])));
        }
    return acc;
}

QuadraticForm QuadraticForm::elliptic_5(int q) {
    const FiniteField& f = FiniteField::get(q);
    QuadraticForm form(f, 6);
    form.set_coef(0, 1, 1);
    form.set_coef(2, 3, 1);
    // irreducible binary part, fixed per field
    int c44, c45, c55;
    switch (q) {
        case 2: c44 = 1, c45 = 1, c55 = 1; break;  // x^2 + xy + y^2
        case 3: c44 = 1, c45 = 0, c55 = 1; break;  // x^2 + y^2
        case 4: c44 = 1, c45 = 1, c55 = 2; break;  // x^2 + xy + w*y^2
        case 5: c44 = 1, c45 = 0, c55 = 2; break;  // x^2 + 2y^2
        default: throw UserError("elliptic quadric supported for q in {2,3,4,5}");
    }
    form.set_coef(4, 4, c44);
    if (c45) form.set_coef(4, 5, c45);
    form.set_coef(5, 5, c55);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            if (a == 0 && b == 0) continue;
            int val = f.add(f.mul(c44, f.mul(a, a)), f.add(f.mul(c45, f.mul(a, b)), f.mul(c55, f.mul(b, b))));
            if (val == 0) throw InternalCheckError("binary part of the elliptic form is reducible");
        }
    return form;
}

QuadraticForm QuadraticForm::parabolic_4(int q) {
    const FiniteField& f = FiniteField::get(q);
    QuadraticForm form(f, 5);
    form.set_coef(0, 1, 1);
    form.set_coef(2, 3, 1);
    form.set_coef(4, 4, 1);
    return form;
}

namespace {

// Enumerates quadric points and the full lines the quadric carries, then
// packages them at the stated order. Line scan: a pair not yet covered spans
// a candidate line, kept when all its points lie on the quadric.
IncidenceGeometry quadric_geometry(const QuadraticForm& form, std::string name, int s, int t, int mu) {
    const FiniteField& f = form.field();
    int n = form.nvars() - 1;
    std::vector<PointCoords> pts;
    for (auto& p : pg_points(n, f.q()))
        if (form.eval(p) == 0) pts.push_back(p);
    int np = int(pts.size());

    std::vector<Bitset> covered(np, Bitset(np));
    std::vector<std::vector<int>> lines;
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) {
            if (covered[i].test(j)) continue;
            auto lp = pg_line_points(f, pts[i], pts[j]);
            bool onQuadric = true;
            for (auto& x : lp)
                if (form.eval(x) != 0) {
                    onQuadric = false;
                    break;
                }
            if (!onQuadric) continue;
            std::vector<int> line;
            for (auto& x : lp) {
                int id = find_point(pts, x);
                if (id < 0) throw InternalCheckError("quadric line point missing from point list");
                line.push_back(id);
            }
            std::sort(line.begin(), line.end());
            for (size_t a = 0; a < line.size(); ++a)
                for (size_t b = a + 1; b < line.size(); ++b) {
                    covered[line[a]].set(line[b]);
                    covered[line[b]].set(line[a]);
                }
            lines.push_back(std::move(line));
        }
    std::sort(lines.begin(), lines.end());

    IncidenceGeometry g;
    g.name = std::move(name);
    g.npoints = np;
    g.s = s;
    g.t = t;
    g.mu = mu;
    g.lines = std::move(lines);
    g.coords = std::move(pts);
    g.field = &f;
    auto check = verify_geometry(g);
    if (!check.ok) throw InternalCheckError("quadric construction failed verification: " + check.reason);
    return g;
}

}  // namespace

IncidenceGeometry elliptic_quadric_gq(int q) {
    auto form = QuadraticForm::elliptic_5(q);
    auto g = quadric_geometry(form, "Q-(5," + std::to_string(q) + ")", q, q * q, q * q + 1);
    if (g.npoints != (q + 1) * (q * q * q + 1))
        throw InternalCheckError("elliptic quadric has wrong point count");
    return g;
}

IncidenceGeometry parabolic_quadric_gq(int q) {
    auto form = QuadraticForm::parabolic_4(q);
    auto g = quadric_geometry(form, "Q(4," + std::to_string(q) + ")", q, q, q + 1);
    if (g.npoints != (q + 1) * (q * q + 1)) throw InternalCheckError("parabolic quadric has wrong point count");
    return g;
}

GeometryCheck verify_geometry(const IncidenceGeometry& g) {
    auto fail = [](std::string why) { return GeometryCheck{false, std::move(why)}; };
    if (g.npoints < 2) return fail("fewer than two points");
    if (g.s < 1 || g.t < 1 || g.mu < 1) return fail("order parameters must be positive");

    std::vector<Bitset> adj(g.npoints, Bitset(g.npoints));
    std::vector<int> linesAt(g.npoints, 0);
    for (size_t li = 0; li < g.lines.size(); ++li) {
        const auto& line = g.lines[li];
        if (int(line.size()) != g.s + 1)
            return fail("line " + std::to_string(li) + " has " + std::to_string(line.size()) +
                        " points, expected " + std::to_string(g.s + 1));
        for (size_t a = 0; a < line.size(); ++a) {
            if (line[a] < 0 || line[a] >= g.npoints)
                return fail("line " + std::to_string(li) + " has an out-of-range point");
            if (a > 0 && line[a] <= line[a - 1])
                return fail("line " + std::to_string(li) + " is not strictly increasing");
            ++linesAt[line[a]];
        }
        for (size_t a = 0; a < line.size(); ++a)
            for (size_t b = a + 1; b < line.size(); ++b) {
                if (adj[line[a]].test(line[b]))
                    return fail("points " + std::to_string(line[a]) + " and " + std::to_string(line[b]) +
                                " lie on two lines");
                adj[line[a]].set(line[b]);
                adj[line[b]].set(line[a]);
            }
    }
    for (int p = 0; p < g.npoints; ++p)
        if (linesAt[p] != g.t + 1)
            return fail("point " + std::to_string(p) + " lies on " + std::to_string(linesAt[p]) +
                        " lines, expected " + std::to_string(g.t + 1));

    // external point versus line: exactly one collinear point for a GQ, at
    // most one otherwise
    for (size_t li = 0; li < g.lines.size(); ++li) {
        const auto& line = g.lines[li];
        Bitset onLine(g.npoints);
        for (int x : line) onLine.set(x);
        for (int p = 0; p < g.npoints; ++p) {
            if (onLine.test(p)) continue;
            int cnt = 0;
            for (int x : line) cnt += adj[p].test(x) ? 1 : 0;
            if (cnt > 1)
                return fail("point " + std::to_string(p) + " sees " + std::to_string(cnt) +
                            " points of line " + std::to_string(li));
            if (g.is_gq() && cnt == 0)
                return fail("point " + std::to_string(p) + " sees no point of line " + std::to_string(li));
        }
    }

    for (int u = 0; u < g.npoints; ++u)
        for (int v = u + 1; v < g.npoints; ++v) {
            if (adj[u].test(v)) continue;
            int common = adj[u].intersect_count(adj[v]);
            if (common != g.mu)
                return fail("non-collinear points " + std::to_string(u) + "," + std::to_string(v) + " have " +
                            std::to_string(common) + " common neighbours, expected " + std::to_string(g.mu));
        }

    long long num = 1LL * g.s * (g.t + 1) * (g.mu + 1LL * g.s * g.t);
    if (num % g.mu != 0 || g.npoints != num / g.mu + 1)
        return fail("point count " + std::to_string(g.npoints) + " violates the order identity");
    return {true, ""};
}

Graph collinearity_graph(const IncidenceGeometry& g) {
    Graph gr(g.npoints, g.name);
    for (const auto& line : g.lines)
        for (size_t a = 0; a < line.size(); ++a)
            for (size_t b = a + 1; b < line.size(); ++b) gr.add_edge(line[a], line[b]);
    return gr;
}

std::vector<std::vector<int>> lines_through(const IncidenceGeometry& g) {
    std::vector<std::vector<int>> at(g.npoints);
    for (size_t li = 0; li < g.lines.size(); ++li)
        for (int p : g.lines[li]) at[p].push_back(int(li));
    return at;
}

Bitset point_perp(const IncidenceGeometry& g, int p) {
    if (p < 0 || p >= g.npoints) throw UserError("point index out of range");
    Bitset perp(g.npoints);
    perp.set(p);
    for (const auto& line : g.lines) {
        bool hit = false;
        for (int x : line)
            if (x == p) {
                hit = true;
                break;
            }
        if (hit)
            for (int x : line) perp.set(x);
    }
    return perp;
}

DerivedGeometry minus_perp(const IncidenceGeometry& g, int p) {
    if (!g.is_gq() || g.t != g.s * g.s)
        throw UserError("minus_perp requires a generalized quadrangle of order (s, s^2)");
    Bitset perp = point_perp(g, p);

    DerivedGeometry d;
    std::vector<int> toNew(g.npoints, -1);
    for (int i = 0; i < g.npoints; ++i)
        if (!perp.test(i)) {
            toNew[i] = int(d.toAmbient.size());
            d.toAmbient.push_back(i);
        }

    std::vector<std::vector<int>> lines;
    for (const auto& line : g.lines) {
        std::vector<int> rest;
        int dropped = 0;
        for (int x : line) {
            if (perp.test(x))
                ++dropped;
            else
                rest.push_back(toNew[x]);
        }
        if (dropped == int(line.size())) continue;  // a line through P
        if (dropped != 1)
            throw InternalCheckError("line meets the deleted perp in " + std::to_string(dropped) + " points");
        lines.push_back(std::move(rest));
    }
    std::sort(lines.begin(), lines.end());

    d.geo.name = g.name + " minus perp(" + std::to_string(p) + ")";
    d.geo.npoints = int(d.toAmbient.size());
    d.geo.s = g.s - 1;
    d.geo.t = g.t;
    d.geo.mu = g.s * (g.s - 1);
    d.geo.lines = std::move(lines);
    d.geo.field = g.field;
    if (!g.coords.empty())
        for (int a : d.toAmbient) d.geo.coords.push_back(g.coords[a]);
    auto check = verify_geometry(d.geo);
    if (!check.ok) throw InternalCheckError("minus_perp result failed verification: " + check.reason);
    return d;
}

DerivedGeometry restrict_to_set(const IncidenceGeometry& g, const std::vector<int>& h) {
    if (!g.is_gq() || g.t != g.s * g.s)
        throw UserError("restrict_to_set requires a generalized quadrangle of order (s, s^2)");
    if (g.s % 2 == 0) throw UserError("hemisystems need odd s");
    std::vector<int> hs = h;
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    if (hs.size() != h.size()) throw UserError("restriction set has repeated points");
    Bitset in(g.npoints);
    for (int x : hs) {
        if (x < 0 || x >= g.npoints) throw UserError("restriction set point out of range");
        in.set(x);
    }
    int m = (g.s + 1) / 2;
    std::vector<int> toNew(g.npoints, -1);
    for (size_t i = 0; i < hs.size(); ++i) toNew[hs[i]] = int(i);

    std::vector<std::vector<int>> lines;
    for (size_t li = 0; li < g.lines.size(); ++li) {
        std::vector<int> rest;
        for (int x : g.lines[li])
            if (in.test(x)) rest.push_back(toNew[x]);
        if (int(rest.size()) != m)
            throw UserError("set is not a hemisystem: line " + std::to_string(li) + " meets it in " +
                            std::to_string(rest.size()) + " points, expected " + std::to_string(m));
        lines.push_back(std::move(rest));
    }
    std::sort(lines.begin(), lines.end());

    DerivedGeometry d;
    d.toAmbient = hs;
    d.geo.name = g.name + " restricted to a hemisystem";
    d.geo.npoints = int(hs.size());
    d.geo.s = (g.s - 1) / 2;
    d.geo.t = g.t;
    d.geo.mu = (g.s - 1) * (g.s - 1) / 2;
    d.geo.lines = std::move(lines);
    d.geo.field = g.field;
    if (!g.coords.empty())
        for (int a : d.toAmbient) d.geo.coords.push_back(g.coords[a]);
    auto check = verify_geometry(d.geo);
    if (!check.ok) throw InternalCheckError("hemisystem restriction failed verification: " + check.reason);
    return d;
}

namespace {

// Half-per-line two-colouring search. Assignments propagate through line
// counters; the branch variable is the least undecided point on the line with
// the fewest undecided points.
class HemiSearch {
  public:
    HemiSearch(const IncidenceGeometry& g, int limit) : g_(g), limit_(limit) {
        if (g.s % 2 == 0) throw UserError("hemisystems need odd s");
        m_ = (g.s + 1) / 2;
        ptLines_ = lines_through(g);
        state_.assign(g.npoints, 0);
        inCnt_.assign(g.lines.size(), 0);
        outCnt_.assign(g.lines.size(), 0);
        undCnt_.assign(g.lines.size(), g.s + 1);
    }

    std::vector<std::vector<int>> run() {
        found_.clear();
        search();
        return found_;
    }

  private:
    static constexpr std::int8_t kUnd = 0, kIn = 1, kOut = 2;

    bool assign(int p, std::int8_t val) {
        state_[p] = val;
        trail_.push_back(p);
        bool ok = true;
        for (int ln : ptLines_[p]) {
            --undCnt_[ln];
            int& cnt = val == kIn ? inCnt_[ln] : outCnt_[ln];
            ++cnt;
            int cap = val == kIn ? m_ : g_.s + 1 - m_;
            if (cnt > cap) ok = false;
        }
        return ok;
    }

    bool propagate(int p0, std::int8_t v0) {
        std::vector<std::pair<int, std::int8_t>> pending{{p0, v0}};
        while (!pending.empty()) {
            auto [p, v] = pending.back();
            pending.pop_back();
            if (state_[p] != kUnd) {
                if (state_[p] != v) return false;
                continue;
            }
            if (!assign(p, v)) return false;
            for (int ln : ptLines_[p]) {
                if (undCnt_[ln] == 0) continue;
                std::int8_t force = kUnd;
                if (inCnt_[ln] == m_) force = kOut;
                if (outCnt_[ln] == g_.s + 1 - m_) force = kIn;
                if (force == kUnd) continue;
                for (int x : g_.lines[ln])
                    if (state_[x] == kUnd) pending.push_back({x, force});
            }
        }
        return true;
    }

    void rewind(size_t mark) {
        while (trail_.size() > mark) {
            int p = trail_.back();
            trail_.pop_back();
            std::int8_t v = state_[p];
            state_[p] = kUnd;
            for (int ln : ptLines_[p]) {
                ++undCnt_[ln];
                --(v == kIn ? inCnt_[ln] : outCnt_[ln]);
            }
        }
    }

    bool search() {  // true = stop (limit reached)
        int best = -1;
        for (size_t ln = 0; ln < g_.lines.size(); ++ln)
            if (undCnt_[ln] > 0 && (best < 0 || undCnt_[ln] < undCnt_[best])) best = int(ln);
        if (best < 0) {
            std::vector<int> sol;
            for (int p = 0; p < g_.npoints; ++p)
                if (state_[p] == kIn) sol.push_back(p);
            found_.push_back(std::move(sol));
            return int(found_.size()) >= limit_;
        }
        int branch = -1;
        for (int x : g_.lines[best])
            if (state_[x] == kUnd) {
                branch = x;
                break;
            }
        for (std::int8_t v : {kIn, kOut}) {
            size_t mark = trail_.size();
            if (propagate(branch, v) && search()) return true;
            rewind(mark);
        }
        return false;
    }

    const IncidenceGeometry& g_;
    int limit_, m_ = 0;
    std::vector<std::vector<int>> ptLines_;
    std::vector<std::int8_t> state_;
    std::vector<int> inCnt_, outCnt_, undCnt_, trail_;
    std::vector<std::vector<int>> found_;
};

}  // namespace

std::optional<std::vector<int>> find_hemisystem(const IncidenceGeometry& g) {
    auto all = HemiSearch(g, 1).run();
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::vector<std::vector<int>> find_hemisystems(const IncidenceGeometry& g, int limit) {
    if (limit < 1) throw UserError("solution limit must be positive");
    return HemiSearch(g, limit).run();
}

SetClass classify_point_set(const IncidenceGeometry& g, const std::vector<int>& set) {
    Bitset in(g.npoints);
    for (int x : set) {
        if (x < 0 || x >= g.npoints) throw UserError("set point out of range");
        in.set(x);
    }
    SetClass sc;
    for (const auto& line : g.lines) {
        int cnt = 0;
        for (int x : line) cnt += in.test(x) ? 1 : 0;
        sc.lineMeets.push_back(cnt);
    }
    std::sort(sc.lineMeets.begin(), sc.lineMeets.end());
    if (!sc.lineMeets.empty() && sc.lineMeets.front() == sc.lineMeets.back()) {
        sc.movoid = sc.lineMeets.front();
        sc.hemisystem = g.s % 2 == 1 && *sc.movoid == (g.s + 1) / 2;
    }
    Graph gr = collinearity_graph(g);
    auto prof = regularity_profile(gr, in);
    if (!prof.inside.empty() && !prof.outside.empty() && prof.inside_constant() && prof.outside_constant() &&
        prof.inside.front() - prof.outside.front() == g.s - 1)
        sc.tight = prof.outside.front();
    return sc;
}

std::vector<int> cone(const IncidenceGeometry& g, const DerivedGeometry& pq, int p, int z) {
    if (z < 0 || z >= g.npoints) throw UserError("cone vertex out of range");
    if (z == p) throw UserError("cone vertex must differ from the deleted point");
    Bitset pPerp = point_perp(g, p);
    if (!pPerp.test(z)) throw UserError("cone vertex must be collinear with the deleted point");
    Bitset zPerp = point_perp(g, z);
    std::vector<int> out;
    for (size_t i = 0; i < pq.toAmbient.size(); ++i)
        if (zPerp.test(pq.toAmbient[i])) out.push_back(int(i));
    return out;
}

std::vector<int> hyperbolic_section(const IncidenceGeometry& g, int p, int line1, int line2, int x) {
    if (g.coords.empty() || g.field == nullptr) throw UserError("geometry has no ambient coordinates");
    if (p < 0 || p >= g.npoints || x < 0 || x >= g.npoints) throw UserError("point index out of range");
    if (line1 < 0 || line2 < 0 || line1 >= int(g.lines.size()) || line2 >= int(g.lines.size()))
        throw UserError("line index out of range");
    if (line1 == line2) throw UserError("the two lines must be distinct");
    auto contains = [&](int ln, int pt) {
        return std::find(g.lines[ln].begin(), g.lines[ln].end(), pt) != g.lines[ln].end();
    };
    if (!contains(line1, p) || !contains(line2, p)) throw UserError("both lines must pass through P");
    Bitset perp = point_perp(g, p);
    if (perp.test(x)) throw UserError("X is collinear with P, so the section degenerates to a cone");

    const FiniteField& f = *g.field;
    GfSpan span(f, int(g.coords[p].size()));
    span.absorb(g.coords[p]);
    for (int ln : {line1, line2})
        for (int pt : g.lines[ln])
            if (pt != p) {
                span.absorb(g.coords[pt]);
                break;
            }
    if (span.rank() != 3) throw InternalCheckError("two distinct lines through P span rank " +
                                                   std::to_string(span.rank()) + ", expected 3");
    span.absorb(g.coords[x]);
    if (span.rank() != 4) throw InternalCheckError("section span has rank " + std::to_string(span.rank()));

    std::vector<int> pts;
    for (int i = 0; i < g.npoints; ++i)
        if (span.contains(g.coords[i])) pts.push_back(i);
    int q = f.q();
    if (int(pts.size()) != (q + 1) * (q + 1))
        throw InternalCheckError("section has " + std::to_string(pts.size()) + " points, expected " +
                                 std::to_string((q + 1) * (q + 1)));
    return pts;
}

std::vector<int> grid_minus_perp(const IncidenceGeometry& g, const DerivedGeometry& pq, int p, int line1,
                                 int line2, int x) {
    auto section = hyperbolic_section(g, p, line1, line2, x);
    Bitset perp = point_perp(g, p);

    Bitset expected(g.npoints);
    for (int ln : {line1, line2})
        for (int pt : g.lines[ln]) expected.set(pt);
    Bitset inPerp(g.npoints);
    for (int pt : section)
        if (perp.test(pt)) inPerp.set(pt);
    if (!(inPerp == expected))
        throw InternalCheckError("section meets the perp outside the two chosen lines");

    std::vector<int> toNew(g.npoints, -1);
    for (size_t i = 0; i < pq.toAmbient.size(); ++i) toNew[pq.toAmbient[i]] = int(i);
    std::vector<int> out;
    for (int pt : section) {
        if (perp.test(pt)) continue;
        if (toNew[pt] < 0) throw UserError("derived geometry does not match the deleted perp");
        out.push_back(toNew[pt]);
    }
    return out;
}

std::vector<int> quadric_hyperplane_section(const IncidenceGeometry& g, const GfVec& coefs) {
    if (g.coords.empty() || g.field == nullptr) throw UserError("geometry has no ambient coordinates");
    if (coefs.size() != g.coords[0].size()) throw UserError("hyperplane coefficient length mismatch");
    if (std::all_of(coefs.begin(), coefs.end(), [](std::uint8_t c) { return c == 0; }))
        throw UserError("hyperplane coefficients are all zero");
    std::vector<int> out;
    for (int i = 0; i < g.npoints; ++i)
        if (dot(*g.field, coefs, g.coords[i]) == 0) out.push_back(i);
    return out;
}

LinearRep linear_representation(int n, int q, const std::vector<PointCoords>& cap) {
    const FiniteField& f = FiniteField::get(q);
    int k = int(cap.size());
    if (k < 2) throw UserError("cap must have at least two points");
    for (const auto& c : cap) {
        if (int(c.size()) != n + 1) throw UserError("cap point has wrong coordinate length");
        for (auto e : c)
            if (e >= q) throw UserError("cap point has an out-of-field coordinate");
        if (!is_normalized(c)) throw UserError("cap points must be normalized projective points");
    }
    {
        auto sorted = cap;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw UserError("cap has repeated points");
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            GfSpan span(f, n + 1);
            span.absorb(cap[i]);
            span.absorb(cap[j]);
            for (int l = 0; l < k; ++l)
                if (l != i && l != j && span.contains(cap[l]))
                    throw UserError("three cap points are collinear");
        }

    long long npts = 1;
    for (int i = 0; i <= n; ++i) npts *= q;

    LinearRep rep;
    rep.n = n;
    rep.q = q;
    rep.cap = cap;
    rep.geo.name = "linear representation of a " + std::to_string(k) + "-cap in PG(" + std::to_string(n) +
                   "," + std::to_string(q) + ")";
    rep.geo.npoints = int(npts);
    rep.geo.s = q - 1;
    rep.geo.t = k - 1;
    rep.geo.field = &f;
    for (long long r = 0; r < npts; ++r) rep.geo.coords.push_back(vec_unrank(r, n + 1, q));

    std::vector<char> visited(static_cast<size_t>(npts));
    for (const auto& dir : cap) {
        std::fill(visited.begin(), visited.end(), 0);
        for (long long a = 0; a < npts; ++a) {
            if (visited[size_t(a)]) continue;
            std::vector<int> line;
            for (int tt = 0; tt < q; ++tt) {
                long long idx = vec_rank(vec_add(f, rep.geo.coords[size_t(a)], vec_scale(f, tt, dir)), q);
                visited[size_t(idx)] = 1;
                line.push_back(int(idx));
            }
            std::sort(line.begin(), line.end());
            rep.geo.lines.push_back(std::move(line));
        }
    }
    std::sort(rep.geo.lines.begin(), rep.geo.lines.end());

    // measure mu from the first non-collinear pair; constancy is the
    // verifier's business
    Graph gr = collinearity_graph(rep.geo);
    rep.geo.mu = rep.geo.t + 1;
    bool foundPair = false;
    for (int u = 0; u < gr.n() && !foundPair; ++u)
        for (int v = u + 1; v < gr.n(); ++v)
            if (!gr.adjacent(u, v)) {
                rep.geo.mu = gr.neighbors(u).intersect_count(gr.neighbors(v));
                foundPair = true;
                break;
            }
    return rep;
}

int affine_index(const LinearRep& rep, const GfVec& y) {
    if (int(y.size()) != rep.n + 1) throw UserError("affine vector has wrong length");
    for (auto e : y)
        if (e >= rep.q) throw UserError("affine vector has an out-of-field coordinate");
    return int(vec_rank(y, rep.q));
}

CapSearchResult cap_search(int n, int q, int k, bool requireSrg, long long budgetNodes) {
    const FiniteField& f = FiniteField::get(q);
    auto pts = pg_points(n, q);
    int total = int(pts.size());
    if (k < 2 || k > total) throw UserError("cap size out of range");

    CapSearchResult res;
    long long cStar = 0;
    if (requireSrg) {
        // a cap's linear representation is strongly regular exactly when
        // every point off the cap lies on a constant number of secants, and
        // that constant is forced by counting
        long long incid = 1LL * k * (k - 1) / 2 * (q - 1);
        long long external = total - k;
        if (external <= 0 || incid % external != 0) {
            res.exhausted = true;
            return res;
        }
        cStar = incid / external;
    }

    std::vector<int> secants(total, 0);
    std::vector<char> isChosen(total, 0);
    std::vector<int> chosen;
    std::vector<int> tmp;

    auto secantOthers = [&](int a, int b) {
        tmp.clear();
        for (const auto& c : pg_line_points(f, pts[a], pts[b])) {
            int id = find_point(pts, c);
            if (id != a && id != b) tmp.push_back(id);
        }
    };

    std::function<bool(int)> dfs = [&](int start) -> bool {
        if (int(chosen.size()) == k) {
            if (requireSrg)
                for (int i = 0; i < total; ++i)
                    if (!isChosen[i] && secants[i] != cStar) return false;
            std::vector<PointCoords> capPts;
            for (int c : chosen) capPts.push_back(pts[c]);
            res.cap = std::move(capPts);
            return true;
        }
        for (int x = start; x < total; ++x) {
            if (int(chosen.size()) + (total - x) < k) break;
            if (secants[x] > 0) continue;  // x lies on a secant already
            if (budgetNodes > 0 && res.nodes >= budgetNodes) {
                res.budgetHit = true;
                return false;
            }
            ++res.nodes;
            bool ok = true;
            std::vector<int> touched;
            for (int m : chosen) {
                secantOthers(m, x);
                for (int z : tmp) {
                    ++secants[z];
                    touched.push_back(z);
                    if (requireSrg && secants[z] > cStar) ok = false;
                }
            }
            chosen.push_back(x);
            isChosen[x] = 1;
            if (ok && dfs(x + 1)) return true;
            chosen.pop_back();
            isChosen[x] = 0;
            for (int z : touched) --secants[z];
            if (res.budgetHit) return false;
        }
        return false;
    };

    bool found = dfs(0);
    res.exhausted = !found && !res.budgetHit;
    return res;
}

std::vector<int> hyperplane_affine_set(const LinearRep& rep, const GfVec& dual) {
    if (int(dual.size()) != rep.n + 2) throw UserError("hyperplane dual has wrong length");
    if (std::all_of(dual.begin(), dual.end(), [](std::uint8_t c) { return c == 0; }))
        throw UserError("hyperplane dual is zero");
    bool onlyFirst = dual[0] != 0;
    for (size_t i = 1; i < dual.size(); ++i)
        if (dual[i] != 0) onlyFirst = false;
    if (onlyFirst) throw UserError("that dual cuts out the hyperplane at infinity");
    const FiniteField& f = *rep.geo.field;
    std::vector<int> out;
    for (int i = 0; i < rep.geo.npoints; ++i) {
        int acc = dual[0];
        for (int j = 0; j <= rep.n; ++j) acc = f.add(acc, f.mul(dual[j + 1], rep.geo.coords[i][j]));
        if (acc == 0) out.push_back(i);
    }
    return out;
}

int cap_meet_count(const LinearRep& rep, const GfVec& dual) {
    if (int(dual.size()) != rep.n + 2) throw UserError("hyperplane dual has wrong length");
    const FiniteField& f = *rep.geo.field;
    int cnt = 0;
    for (const auto& c : rep.cap) {
        int acc = 0;
        for (int j = 0; j <= rep.n; ++j) acc = f.add(acc, f.mul(dual[j + 1], c[j]));
        if (acc == 0) ++cnt;
    }
    return cnt;
}

std::vector<int> secundum_affine_set(const LinearRep& rep, const GfVec& dualA, const GfVec& dualB) {
    if (int(dualA.size()) != rep.n + 2 || int(dualB.size()) != rep.n + 2)
        throw UserError("secundum dual has wrong length");
    const FiniteField& f = *rep.geo.field;
    GfSpan span(f, rep.n + 2);
    span.absorb(dualA);
    span.absorb(dualB);
    if (span.rank() != 2) throw UserError("secundum duals are dependent");
    GfVec e0(size_t(rep.n) + 2, 0);
    e0[0] = 1;
    if (span.contains(e0)) throw UserError("secundum lies inside the hyperplane at infinity");

    std::vector<int> meets;
    meets.push_back(cap_meet_count(rep, dualB));
    for (int t = 0; t < f.q(); ++t) {
        GfVec d = vec_add(f, dualA, vec_scale(f, t, dualB));
        meets.push_back(cap_meet_count(rep, d));
    }
    for (int m : meets)
        if (m != meets.front()) {
            std::string counts;
            for (int mm : meets) counts += (counts.empty() ? "" : ",") + std::to_string(mm);
            throw UserError("hyperplanes through the secundum meet the cap in varying counts: " + counts);
        }

    std::vector<int> out;
    for (int i = 0; i < rep.geo.npoints; ++i) {
        int accA = dualA[0], accB = dualB[0];
        for (int j = 0; j <= rep.n; ++j) {
            accA = f.add(accA, f.mul(dualA[j + 1], rep.geo.coords[i][j]));
            accB = f.add(accB, f.mul(dualB[j + 1], rep.geo.coords[i][j]));
        }
        if (accA == 0 && accB == 0) out.push_back(i);
    }
    return out;
}

}  // namespace pqi
