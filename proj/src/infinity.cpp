#include "pqi/infinity.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace pqi {

namespace {

RationalMatrix ones_column(int n) { return RationalMatrix::constant(n, 1, 1); }

void require_big_gq(const IncidenceGeometry& geo) {
    if (!geo.is_gq() || geo.t != geo.s * geo.s)
        throw UserError("this analysis needs a generalized quadrangle of order (s, s^2)");
}

// shared scaffolding for everything that solves against the shifted perp
// block at one deleted point
struct PerpSolver {
    BlockDecomposition bd;
    RationalMatrix inv;          // (D - lambda I)^{-1}, lambda = -s^2 - 1
    std::vector<int> column;     // ambient point -> position in bd.pqPoints
};

PerpSolver make_perp_solver(const Graph& g, const IncidenceGeometry& geo, int p) {
    PerpSolver ps;
    ps.bd = block_decomposition(g, point_perp(geo, p), p);
    const long long s = geo.s;
    const int m = int(ps.bd.infPoints.size());
    RationalMatrix shifted = ps.bd.D;
    shifted += RationalMatrix::identity(m).scaled(ratio(s * s + 1));
    MatrixInverse mi = shifted.inverse();
    if (!mi.inv) throw InternalCheckError("the shifted perp block is singular");
    ps.inv = std::move(*mi.inv);
    ps.column.assign(g.n(), -1);
    for (size_t i = 0; i < ps.bd.pqPoints.size(); ++i) ps.column[ps.bd.pqPoints[i]] = int(i);
    return ps;
}

// indicator column of a derived-index set, in the solver's surviving order
RationalMatrix slice_indicator(const PerpSolver& ps, const DerivedGeometry& dg, const Bitset& pqSet) {
    RationalMatrix chi(int(ps.bd.pqPoints.size()), 1);
    for (int d : pqSet.members()) {
        const int col = ps.column[dg.toAmbient[d]];
        if (col < 0) throw InternalCheckError("derived point maps into the deleted perp");
        chi.at(col, 0) = 1;
    }
    return chi;
}

// solves for the perp-side 0/1 indicator and returns the ambient union,
// verified as a hemisystem
Bitset complete_slice(const IncidenceGeometry& geo, const DerivedGeometry& dg, const PerpSolver& ps,
                      const Bitset& pqSet) {
    const long long s = geo.s;
    const int m = int(ps.bd.infPoints.size());
    const Rational h2 = ratio((s * s + 1) * (s + 1), 2);
    RationalMatrix rhs = RationalMatrix::constant(m, 1, h2);
    rhs -= ps.bd.C.transpose() * slice_indicator(ps, dg, pqSet);
    const RationalMatrix v = ps.inv * rhs;
    Bitset full(geo.npoints);
    for (int d : pqSet.members()) full.set(dg.toAmbient[d]);
    for (int i = 0; i < m; ++i) {
        const Rational& e = v.at(i, 0);
        if (e == 1) full.set(ps.bd.infPoints[i]);
        else if (e != 0) throw InternalCheckError("completion vector is not 0/1");
    }
    if (!classify_point_set(geo, full.members()).hemisystem)
        throw InternalCheckError("completed set is not a hemisystem");
    return full;
}

std::string cert_text(const IntrigueCertificate& c) {
    return std::string(sign_name(c.sign)) + ":" + std::to_string(c.h1) + "," + std::to_string(c.h2) +
           "," + std::to_string(c.size);
}

std::string joined(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

BlockDecomposition block_decomposition(const Graph& ambient, const Bitset& infinity, int special) {
    const int n = ambient.n();
    const int cnt = infinity.count();
    if (cnt == 0 || cnt == n) throw UserError("infinity must be a proper nonempty point set");
    if (special >= 0 && !infinity.test(special))
        throw UserError("distinguished point " + std::to_string(special) + " is not at infinity");
    BlockDecomposition bd;
    bd.pqPoints.reserve(n - cnt);
    bd.infPoints.reserve(cnt);
    for (int v = 0; v < n; ++v) {
        if (!infinity.test(v)) bd.pqPoints.push_back(v);
        else if (v != special) bd.infPoints.push_back(v);
    }
    if (special >= 0) bd.infPoints.push_back(special);
    const int a = int(bd.pqPoints.size()), b = int(bd.infPoints.size());
    bd.B = RationalMatrix(a, a);
    bd.C = RationalMatrix(a, b);
    bd.D = RationalMatrix(b, b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j)
            if (ambient.adjacent(bd.pqPoints[i], bd.pqPoints[j])) bd.B.at(i, j) = 1;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (ambient.adjacent(bd.pqPoints[i], bd.infPoints[j])) bd.C.at(i, j) = 1;
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j)
            if (ambient.adjacent(bd.infPoints[i], bd.infPoints[j])) bd.D.at(i, j) = 1;
    return bd;
}

InfinityAnalysis infinity_profile(const Graph& ambient, const Bitset& infinity, const Bitset& iSet) {
    InfinityAnalysis r;
    Bitset target = iSet;
    target &= infinity;
    r.insideInfinity = target.count();
    int firstIn = -1, firstOut = -1;
    bool ok = true;
    for (int y = 0; y < ambient.n(); ++y) {
        if (infinity.test(y)) continue;
        const long long c = ambient.neighbors(y).intersect_count(target);
        if (iSet.test(y)) {
            if (!r.a1Defined) {
                r.a1Defined = true;
                r.a1 = c;
                firstIn = y;
            } else if (ok && c != r.a1) {
                ok = false;
                r.witnessA = firstIn;
                r.witnessB = y;
            }
        } else {
            if (!r.a2Defined) {
                r.a2Defined = true;
                r.a2 = c;
                firstOut = y;
            } else if (ok && c != r.a2) {
                ok = false;
                r.witnessA = firstOut;
                r.witnessB = y;
            }
        }
    }
    r.constant = ok;
    return r;
}

AtInfinityCheck check_atinfinity(const Graph& ambient, const Bitset& infinity, const Bitset& iSet) {
    const SrgParams ap = require_srg(ambient);
    const auto ambCert = verify_intriguing(ambient, ap, iSet);
    if (!ambCert) throw UserError("the set is not intriguing in the ambient graph");

    AtInfinityCheck out;
    out.ambient = *ambCert;
    out.profile = infinity_profile(ambient, infinity, iSet);

    std::vector<int> keep;
    keep.reserve(ambient.n());
    for (int v = 0; v < ambient.n(); ++v)
        if (!infinity.test(v)) keep.push_back(v);
    if (keep.empty()) throw UserError("infinity swallows every point");
    const Graph pq = induced_subgraph(ambient, keep);
    Bitset rest(pq.n());
    for (size_t i = 0; i < keep.size(); ++i)
        if (iSet.test(keep[i])) rest.set(int(i));
    if (rest.count() == 0 || rest.count() == pq.n())
        throw UserError("nothing to check: the restriction is empty or everything");

    out.restriction = verify_intriguing(pq, require_srg(pq), rest);
    if (out.restriction.has_value() != out.profile.constant)
        throw InternalCheckError("restriction verdict and profile constancy disagree");
    if (out.restriction) {
        if (out.restriction->h1 != out.ambient.h1 - out.profile.a1 ||
            out.restriction->h2 != out.ambient.h2 - out.profile.a2)
            throw InternalCheckError("restriction parameters break the h minus a relation");
    }
    return out;
}

InfinityPrediction predict_infinity_params(const PredictQuery& q) {
    if (q.value <= 0) throw UserError("the ovoid or tight parameter must be positive");
    if (q.s <= 1) throw UserError("the ambient order must be at least 2");
    if (q.hemisystemScene && q.s % 2 == 0) throw UserError("hemisystem scenes need odd order");

    const Rational s = ratio(q.s);
    const Rational val = ratio(q.value);
    InfinityPrediction r;
    auto reject = [&](const std::string& what, const Rational& v, const std::string& why) {
        r.possible = false;
        r.note = what + " = " + rat_str(v) + " " + why;
    };
    auto screen = [&](const std::string& what, const Rational& v) {
        if (!r.possible) return;
        if (!rat_is_int(v)) reject(what, v, "is not an integer");
        else if (v < 0) reject(what, v, "is negative");
    };

    if (!q.hemisystemScene) {
        if (q.kind == AmbientKind::MOvoid) {
            r.diff = -s;
            if (q.pInSet) {
                r.a1 = val * (s + 1) - 2 * s;
                r.a2 = val * (s + 1) - s;
                r.extent = val * (s * s + 1) - s * s;
            } else {
                r.a1 = val * (s + 1) - s;
                r.a2 = val * (s + 1);
                r.extent = val * (s * s + 1);
            }
        } else {
            r.diff = 0;
            r.a1 = q.pInSet ? Rational((val - 1) / s + 1) : Rational(val / s);
            r.a2 = r.a1;
            r.extent = q.pInSet ? Rational(val + s) : val;
        }
        r.a1Known = r.a2Known = r.extentKnown = true;
    } else {
        if (q.kind == AmbientKind::Tight) {
            if (q.restrictionSign == SetSign::Positive) {
                r.possible = false;
                r.note = "a tight set cannot stay positive across a hemisystem";
                return r;
            }
            r.diff = (s * s + s) / 2;
            r.a2 = val / 2;
            r.a1 = r.a2 + r.diff;
            r.extent = val * (s + 1) / 2;
            r.a1Known = r.a2Known = r.extentKnown = true;
        } else {
            const bool toNegative = q.restrictionSign == SetSign::Negative;
            r.diff = toNegative ? Rational(-(s * s + s) / 2) : Rational(-(s * s + s));
            if (q.a2Measured) {
                r.a2 = ratio(*q.a2Measured);
                r.a1 = r.a2 + r.diff;
                const Rational inside = val * (s * s + 1) - r.a2;
                r.extent = toNegative ? Rational(inside * (s + 1))
                                      : Rational(inside * (s * s * s + 1) / ((s - 1) * (s - 1)));
                r.a1Known = r.a2Known = r.extentKnown = true;
            }
        }
    }
    if (r.a1Known) screen("a1", r.a1);
    if (r.a2Known) screen("a2", r.a2);
    if (r.extentKnown) screen("the slice size", r.extent);
    return r;
}

IckyReport icky_identities(const IncidenceGeometry& geo, int p, const Bitset* pqNegSet) {
    require_big_gq(geo);
    if (p < 0 || p >= geo.npoints) throw UserError("point index out of range");
    const long long s = geo.s;
    const Graph g = collinearity_graph(geo);
    const PerpSolver ps = make_perp_solver(g, geo, p);
    const int m = int(ps.bd.infPoints.size());
    const int npq = int(ps.bd.pqPoints.size());

    IckyReport rep;

    RationalMatrix mm(m, m), ee(m, m);
    for (int j = 0; j + 1 < m; ++j) mm.at(m - 1, j) = 1;
    ee.at(m - 1, m - 1) = 1;
    const RationalMatrix lhs = ps.inv.scaled(ratio(s * s * s * (s * s + 1) * (s + 1)));
    RationalMatrix rhs = RationalMatrix::identity(m).scaled(ratio(s * s * s * s + s * s * s + s - 1));
    rhs += RationalMatrix::ones(m, m);
    rhs -= ps.bd.D.scaled(ratio(s * s + 1));
    rhs -= (mm + mm.transpose()).scaled(ratio(s));
    rhs += ee.scaled(ratio(s * (s * s + s - 1)));
    if (!(lhs == rhs)) throw InternalCheckError("scaled perp inverse misses its closed form");
    rep.verified.push_back("inverse closed form");

    if (!(ps.bd.C * (ps.inv * ones_column(m)) == ones_column(npq)))
        throw InternalCheckError("the perp indicator does not map to the all-ones vector");
    rep.verified.push_back("inverse maps the perp indicator to ones");

    const RationalMatrix cct = ps.bd.C * ps.bd.C.transpose();
    RationalMatrix structure = RationalMatrix::ones(npq, npq).scaled(ratio(s + 1));
    structure -= ps.bd.B.scaled(ratio(s));
    structure += RationalMatrix::identity(npq).scaled(ratio(s * s - s));
    if (!(cct == structure)) throw InternalCheckError("CC^T misses its three-term structure");
    rep.verified.push_back("product structure");

    if (pqNegSet) {
        const DerivedGeometry dg = minus_perp(geo, p);
        const Graph pqg = collinearity_graph(dg.geo);
        const auto cert = verify_intriguing(pqg, require_srg(pqg), *pqNegSet);
        if (!cert || cert->sign != SetSign::Negative)
            throw UserError("the given set is not negative intriguing in the derived geometry");
        const RationalMatrix chi = slice_indicator(ps, dg, *pqNegSet);
        RationalMatrix want = chi.scaled(ratio(s * s * s));
        want += RationalMatrix::constant(npq, 1, ratio(s * cert->size));
        if (!(cct * chi == want)) throw InternalCheckError("CC^T misfires on the negative set");
        rep.verified.push_back("product against a negative set");
        RationalMatrix want2 = chi.scaled(ratio(s));
        want2 += RationalMatrix::constant(npq, 1, ratio(cert->h2));
        if (!(ps.bd.C * (ps.inv * (ps.bd.C.transpose() * chi)) == want2))
            throw InternalCheckError("the inverse product misfires on the negative set");
        rep.verified.push_back("inverse product against a negative set");
    }
    return rep;
}

Bitset complete_to_hemisystem(const IncidenceGeometry& geo, int p, const Bitset& pqSet) {
    require_big_gq(geo);
    if (p < 0 || p >= geo.npoints) throw UserError("point index out of range");
    const long long s = geo.s;
    if (s % 2 == 0) throw UserError("hemisystems need odd order");
    const long long lowSize = s * s * (s * s - 1) / 2;
    const long long hiSize = s * s * (s * s + 1) / 2;
    const long long sz = pqSet.count();
    if (sz != lowSize && sz != hiSize)
        throw UserError("completion applies to slices of size " + std::to_string(lowSize) + " or " +
                        std::to_string(hiSize) + ", got " + std::to_string(sz));

    const DerivedGeometry dg = minus_perp(geo, p);
    const Graph pqg = collinearity_graph(dg.geo);
    const auto cert = verify_intriguing(pqg, require_srg(pqg), pqSet);
    if (!cert || cert->sign != SetSign::Negative)
        throw UserError("completion needs a negative intriguing slice");

    const Graph g = collinearity_graph(geo);
    const PerpSolver ps = make_perp_solver(g, geo, p);
    return complete_slice(geo, dg, ps, pqSet);
}

SpreadVerdict partial_spread_infinity(const IncidenceGeometry& geo, const std::vector<int>& hemi,
                                      const std::vector<int>& lineIdx) {
    const int c = int(lineIdx.size());
    if (c == 0 || c % 2 != 0) throw UserError("a spread slice needs an even, positive number of lines");
    Bitset covered(geo.npoints);
    for (int li : lineIdx) {
        if (li < 0 || li >= int(geo.lines.size())) throw UserError("line index out of range");
        for (int pt : geo.lines[li]) {
            if (covered.test(pt)) throw UserError("the chosen lines are not pairwise disjoint");
            covered.set(pt);
        }
    }
    if (!classify_point_set(geo, hemi).hemisystem)
        throw UserError("the infinity argument is not a hemisystem");

    const long long s = geo.s;
    SpreadVerdict v;
    v.c = c;
    v.h2Expected = c / 2;
    v.h1Expected = (c - s * s + s) / 2 - 1;

    const Graph g = collinearity_graph(geo);
    const Bitset h = Bitset::of(geo.npoints, hemi);
    const AtInfinityCheck chk = check_atinfinity(g, h, covered);
    v.profile = chk.profile;
    v.restriction = chk.restriction;
    if (!v.profile.constant) {
        v.reason = "profile not constant over the surviving points";
        return v;
    }
    if (v.h1Expected < 0) {
        v.reason = "expected inside degree is negative";
        return v;
    }
    if (v.profile.a2 != v.h2Expected) {
        v.reason = "outside count differs from half the line count";
        return v;
    }
    if (!v.restriction || v.restriction->h1 != v.h1Expected || v.restriction->h2 != v.h2Expected) {
        v.reason = "restriction parameters differ from the spread formula";
        return v;
    }
    v.certified = true;
    return v;
}

std::vector<std::string> negint_minusperp_evidence(const IncidenceGeometry& geo, int p,
                                                   long long budgetNodes, int threads) {
    require_big_gq(geo);
    if (p < 0 || p >= geo.npoints) throw UserError("point index out of range");
    const long long s = geo.s;
    const DerivedGeometry dg = minus_perp(geo, p);
    const Graph pq = collinearity_graph(dg.geo);
    const Graph g = collinearity_graph(geo);
    const Bitset perp = point_perp(geo, p);

    std::vector<Bitset> cones;
    for (int z : perp.members())
        if (z != p) cones.push_back(Bitset::of(pq.n(), cone(geo, dg, p, z)));

    EnumerateOptions opt;
    opt.budgetNodes = budgetNodes;
    opt.threads = threads;
    const EnumerateResult res = enumerate_intriguing(pq, SetSign::Negative, opt);

    std::vector<std::string> out;
    out.push_back("# negative slices of the deleted-perp geometry at P=" + std::to_string(p));
    out.push_back("# budget=" + std::to_string(budgetNodes) + " found=" + std::to_string(res.sets.size()) +
                  " exhaustive=" + (res.exhaustive ? "1" : "0") + " nodes=" + std::to_string(res.nodes));

    const long long lowSize = s * s * (s * s - 1) / 2;
    const long long hiSize = s * s * (s * s + 1) / 2;
    const bool canComplete = s % 2 == 1;
    PerpSolver ps;
    bool haveSolver = false;
    for (size_t i = 0; i < res.sets.size(); ++i) {
        const Bitset& st = res.sets[i];
        const IntrigueCertificate& cert = res.certs[i];
        Bitset uni(pq.n());
        int used = 0;
        for (const Bitset& cz : cones)
            if (cz.subset_of(st)) {
                uni |= cz;
                ++used;
            }
        std::string cls = "other";
        std::string conesField = "-";
        if (used > 0 && uni == st) {
            cls = "cone-union";
            conesField = std::to_string(used);
        } else if (canComplete && (cert.size == lowSize || cert.size == hiSize)) {
            if (!haveSolver) {
                ps = make_perp_solver(g, geo, p);
                haveSolver = true;
            }
            complete_slice(geo, dg, ps, st);
            cls = "hemisystem-derived";
        }
        out.push_back("h1=" + std::to_string(cert.h1) + " h2=" + std::to_string(cert.h2) +
                      " size=" + std::to_string(cert.size) + " class=" + cls + " cones=" + conesField +
                      " set=" + joined(st.members()));
    }
    return out;
}

std::vector<std::string> hemi_difference_evidence(const IncidenceGeometry& geo,
                                                  const std::vector<std::vector<int>>& hemis) {
    for (const auto& h : hemis)
        if (!classify_point_set(geo, h).hemisystem)
            throw UserError("every input must be a hemisystem");
    const Graph g = collinearity_graph(geo);

    std::vector<std::string> out;
    out.push_back("# one hemisystem restricted past another");
    out.push_back("# fields: inf set restSize constant a1 a2 cert");
    for (size_t i = 0; i < hemis.size(); ++i) {
        const Bitset h = Bitset::of(geo.npoints, hemis[i]);
        std::vector<int> keep;
        for (int v = 0; v < geo.npoints; ++v)
            if (!h.test(v)) keep.push_back(v);
        const Graph pq = induced_subgraph(g, keep);
        for (size_t j = 0; j < hemis.size(); ++j) {
            if (i == j) continue;
            const Bitset iset = Bitset::of(geo.npoints, hemis[j]);
            Bitset rest(pq.n());
            for (size_t k = 0; k < keep.size(); ++k)
                if (iset.test(keep[k])) rest.set(int(k));
            const int restSize = rest.count();
            std::string ln = "inf=" + std::to_string(i) + " set=" + std::to_string(j) +
                             " restSize=" + std::to_string(restSize);
            if (restSize == 0 || restSize == pq.n()) {
                ln += " constant=- a1=- a2=- cert=degenerate";
            } else {
                const InfinityAnalysis prof = infinity_profile(g, h, iset);
                const auto cert = verify_intriguing(pq, require_srg(pq), rest);
                ln += std::string(" constant=") + (prof.constant ? "1" : "0");
                ln += " a1=" + (prof.constant ? std::to_string(prof.a1) : std::string("-"));
                ln += " a2=" + (prof.constant ? std::to_string(prof.a2) : std::string("-"));
                ln += " cert=" + (cert ? cert_text(*cert) : std::string("none"));
            }
            out.push_back(ln);
        }
    }
    return out;
}

std::vector<std::string> hemi_perp_evidence(const IncidenceGeometry& geo, const std::vector<int>& hemi) {
    if (!classify_point_set(geo, hemi).hemisystem)
        throw UserError("the input must be a hemisystem");
    const Graph g = collinearity_graph(geo);
    const Bitset h = Bitset::of(geo.npoints, hemi);

    std::vector<std::string> out;
    out.push_back("# per-point perp slices of one hemisystem");
    out.push_back("# fields: P inH cut constant a1 a2 restriction");
    for (int p = 0; p < geo.npoints; ++p) {
        const Bitset perp = point_perp(geo, p);
        const InfinityAnalysis prof = infinity_profile(g, perp, h);
        std::vector<int> keep;
        keep.reserve(g.n());
        for (int v = 0; v < g.n(); ++v)
            if (!perp.test(v)) keep.push_back(v);
        const Graph pq = induced_subgraph(g, keep);
        Bitset rest(pq.n());
        for (size_t i = 0; i < keep.size(); ++i)
            if (h.test(keep[i])) rest.set(int(i));
        std::optional<IntrigueCertificate> cert;
        if (rest.count() > 0 && rest.count() < pq.n())
            cert = verify_intriguing(pq, require_srg(pq), rest);
        std::string ln = "P=" + std::to_string(p);
        ln += std::string(" inH=") + (h.test(p) ? "1" : "0");
        ln += " cut=" + std::to_string(prof.insideInfinity);
        ln += std::string(" constant=") + (prof.constant ? "1" : "0");
        ln += " a1=" + (prof.constant && prof.a1Defined ? std::to_string(prof.a1) : std::string("-"));
        ln += " a2=" + (prof.constant && prof.a2Defined ? std::to_string(prof.a2) : std::string("-"));
        ln += " restriction=" + (cert ? std::to_string(cert->h1) + "," + std::to_string(cert->h2) + "," +
                                            std::to_string(cert->size)
                                      : std::string("none"));
        out.push_back(ln);
    }
    return out;
}

}  // namespace pqi
