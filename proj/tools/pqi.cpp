// Command-line front end: builds reference graphs and geometries, runs the
// intriguing-set machinery, and persists results with run manifests.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pqi/catalog.hpp"
#include "pqi/geometry.hpp"
#include "pqi/infinity.hpp"
#include "pqi/intrigue.hpp"
#include "pqi/io.hpp"

namespace {

using namespace pqi;

struct Run {
    RunManifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    std::string slurp(const std::string& path) {
        std::string text = read_text_file(path);
        manifest.inputs.emplace_back(path, digest_hex(text));
        return text;
    }

    void finish(const std::string& manifestPath) {
        const auto dt = std::chrono::steady_clock::now() - start;
        manifest.wallMillis = std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
        write_text_file(manifestPath, manifest_text(manifest));
    }
};

std::string stem(const std::string& path) {
    const size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const size_t dot = base.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

std::string joined(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

Bitset row_to_bitset(const std::vector<int>& members, int n) { return Bitset::of(n, members); }

const char* short_sign(SetSign s) { return s == SetSign::Positive ? "pos" : "neg"; }

std::string report_text(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

void emit_report(Run& run, const std::vector<std::string>& lines, const std::string& outPath) {
    const std::string text = report_text(lines);
    std::fputs(text.c_str(), stdout);
    if (!outPath.empty()) {
        write_text_file(outPath, text);
        run.finish(outPath + ".manifest");
    }
}

SetRecord make_record(const Bitset& s, const std::optional<IntrigueCertificate>& cert) {
    SetRecord rec;
    rec.members = s.members();
    rec.cert = cert;
    return rec;
}

int cmd_build(Run& run, const std::vector<std::string>& what, std::string prefix, long long budget) {
    const std::string& kind = what[0];
    if (kind == "q-minus") {
        if (what.size() != 3 || what[1] != "5")
            throw UserError("usage: build q-minus 5 <q>");
        const int q = std::stoi(what[2]);
        if (prefix.empty()) prefix = joined(what, "-");
        const IncidenceGeometry geo = elliptic_quadric_gq(q);
        write_text_file(prefix + ".geo", geometry_text(geo));
        write_text_file(prefix + ".graph", graph_text(collinearity_graph(geo)));
        std::printf("wrote %s.geo and %s.graph: %d points, %zu lines\n", prefix.c_str(),
                    prefix.c_str(), geo.npoints, geo.lines.size());
    } else if (kind == "coxeter-pq") {
        if (what.size() != 1) throw UserError("build coxeter-pq takes no further arguments");
        if (prefix.empty()) prefix = kind;
        const CapSearchResult found = cap_search(4, 3, 11, true, budget);
        if (!found.cap) {
            run.manifest.exhaustive = false;
            run.manifest.note = "node budget exhausted before a cap was found";
            run.finish(prefix + ".manifest");
            std::fprintf(stderr, "no 11-cap found within the node budget\n");
            return 2;
        }
        const LinearRep rep = linear_representation(4, 3, *found.cap);
        write_text_file(prefix + ".cap", cap_text(CapFile{4, 3, rep.cap}));
        write_text_file(prefix + ".geo", geometry_text(rep.geo));
        write_text_file(prefix + ".graph", graph_text(collinearity_graph(rep.geo)));
        std::printf("wrote %s.cap, %s.geo and %s.graph: %d points\n", prefix.c_str(),
                    prefix.c_str(), prefix.c_str(), rep.geo.npoints);
    } else if (kind == "cap-rep") {
        if (what.size() != 2) throw UserError("usage: build cap-rep <capfile>");
        const CapFile cap = parse_cap(run.slurp(what[1]));
        if (prefix.empty()) prefix = stem(what[1]) + "-rep";
        const LinearRep rep = linear_representation(cap.n, cap.q, cap.points);
        write_text_file(prefix + ".geo", geometry_text(rep.geo));
        write_text_file(prefix + ".graph", graph_text(collinearity_graph(rep.geo)));
        std::printf("wrote %s.geo and %s.graph: %d points\n", prefix.c_str(), prefix.c_str(),
                    rep.geo.npoints);
    } else {
        if (what.size() != 1) throw UserError("unknown build form: " + joined(what, " "));
        if (prefix.empty()) prefix = kind;
        const Graph g = build_named(kind);
        write_text_file(prefix + ".graph", graph_text(g));
        std::printf("wrote %s.graph: %d vertices, %lld edges\n", prefix.c_str(), g.n(),
                    g.edge_count());
    }
    run.finish(prefix + ".manifest");
    return 0;
}

int cmd_enumerate(Run& run, const std::string& graphPath, const std::string& signWord,
                  long long sizeCap, const std::string& groupPath, long long budget, bool first,
                  int threads, std::string outPath) {
    const Graph g = parse_graph(run.slurp(graphPath));
    std::vector<Perm> gens;
    EnumerateOptions opt;
    opt.sizeCap = sizeCap;
    opt.budgetNodes = budget;
    opt.firstOnly = first;
    opt.threads = threads;
    if (!groupPath.empty()) {
        gens = parse_group(run.slurp(groupPath), g.n());
        opt.group = &gens;
    }
    std::vector<SetSign> signs;
    if (signWord == "pos") signs = {SetSign::Positive};
    else if (signWord == "neg") signs = {SetSign::Negative};
    else if (signWord == "any") signs = {SetSign::Positive, SetSign::Negative};
    else throw UserError("sign must be pos, neg or any, got '" + signWord + "'");

    std::vector<std::pair<Bitset, IntrigueCertificate>> found;
    bool exhaustive = true, anyFound = false;
    long long nodes = 0;
    std::string note;
    for (SetSign sign : signs) {
        const EnumerateResult res = enumerate_intriguing(g, sign, opt);
        nodes += res.nodes;
        if (!res.exhaustive) exhaustive = false;
        if (note.empty()) note = res.note;
        for (size_t i = 0; i < res.sets.size(); ++i) found.emplace_back(res.sets[i], res.certs[i]);
        anyFound = anyFound || !res.sets.empty();
        if (first && anyFound) break;
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return Bitset::seq_less(a.first, b.first); });
    std::vector<SetRecord> records;
    records.reserve(found.size());
    for (const auto& [s, c] : found) records.push_back(make_record(s, c));
    if (outPath.empty()) outPath = stem(graphPath) + "-" + signWord + ".set";
    write_text_file(outPath, sets_text(records));
    run.manifest.exhaustive = exhaustive;
    run.manifest.note = note;
    run.manifest.workers = threads;
    run.finish(outPath + ".manifest");
    std::printf("wrote %s: %zu sets, %lld nodes%s\n", outPath.c_str(), records.size(), nodes,
                exhaustive ? "" : " (partial)");
    return exhaustive || (first && anyFound) ? 0 : 2;
}

int cmd_verify(Run& run, const std::string& graphPath, const std::string& setPath,
               const std::string& outPath) {
    const Graph g = parse_graph(run.slurp(graphPath));
    const SrgParams p = require_srg(g);
    const std::vector<SetRecord> sets = parse_sets(run.slurp(setPath));
    std::vector<std::string> lines;
    for (size_t i = 0; i < sets.size(); ++i) {
        const Bitset s = row_to_bitset(sets[i].members, g.n());
        const auto cert = verify_intriguing(g, p, s);
        std::string line = "set=" + std::to_string(i) + " size=" + std::to_string(s.count());
        if (cert)
            line += std::string(" sign=") + short_sign(cert->sign) + " h1=" + std::to_string(cert->h1) +
                    " h2=" + std::to_string(cert->h2);
        else
            line += " sign=none";
        if (sets[i].cert) {
            const auto& stored = *sets[i].cert;
            if (!cert || cert->sign != stored.sign || cert->h1 != stored.h1 || cert->h2 != stored.h2)
                throw UserError("row " + std::to_string(i) +
                                ": stored certificate does not match the measurement");
        }
        lines.push_back(line);
    }
    emit_report(run, lines, outPath);
    return 0;
}

int cmd_intersect(Run& run, const std::string& graphPath, const std::string& posPath,
                  const std::string& negPath, const std::string& outPath) {
    const Graph g = parse_graph(run.slurp(graphPath));
    const SrgParams p = require_srg(g);
    const std::vector<SetRecord> posSets = parse_sets(run.slurp(posPath));
    const std::vector<SetRecord> negSets = parse_sets(run.slurp(negPath));
    std::vector<std::string> lines;
    long long pairs = 0;
    for (size_t i = 0; i < posSets.size(); ++i) {
        const Bitset a = row_to_bitset(posSets[i].members, g.n());
        for (size_t j = 0; j < negSets.size(); ++j) {
            const Bitset b = row_to_bitset(negSets[j].members, g.n());
            const long long meet = intersection_check(g, p, a, b);
            lines.push_back("pos=" + std::to_string(i) + " neg=" + std::to_string(j) +
                            " meet=" + std::to_string(meet));
            ++pairs;
        }
    }
    lines.push_back("pairs=" + std::to_string(pairs));
    emit_report(run, lines, outPath);
    return 0;
}

void write_geometry_pair(const std::string& prefix, const IncidenceGeometry& geo) {
    write_text_file(prefix + ".geo", geometry_text(geo));
    write_text_file(prefix + ".graph", graph_text(collinearity_graph(geo)));
    std::printf("wrote %s.geo and %s.graph: %d points, %zu lines\n", prefix.c_str(), prefix.c_str(),
                geo.npoints, geo.lines.size());
}

int cmd_derive(Run& run, const std::vector<std::string>& what, std::string prefix, int count,
               std::string outPath) {
    if (what.empty()) throw UserError("derive needs a form: minus-perp, hemi-restrict or hemisystem");
    const std::string& kind = what[0];
    if (kind == "minus-perp") {
        if (what.size() != 3) throw UserError("usage: derive minus-perp <geofile> <point>");
        const IncidenceGeometry geo = parse_geometry(run.slurp(what[1]));
        const int p = std::stoi(what[2]);
        if (prefix.empty()) prefix = stem(what[1]) + "-mp" + what[2];
        write_geometry_pair(prefix, minus_perp(geo, p).geo);
        run.finish(prefix + ".manifest");
        return 0;
    }
    if (kind == "hemi-restrict") {
        if (what.size() != 3) throw UserError("usage: derive hemi-restrict <geofile> <setfile>");
        const IncidenceGeometry geo = parse_geometry(run.slurp(what[1]));
        const std::vector<SetRecord> sets = parse_sets(run.slurp(what[2]));
        if (sets.size() != 1) throw UserError("hemi-restrict needs a set file with exactly one row");
        if (prefix.empty()) prefix = stem(what[1]) + "-hs";
        write_geometry_pair(prefix, restrict_to_set(geo, sets[0].members).geo);
        run.finish(prefix + ".manifest");
        return 0;
    }
    if (kind == "hemisystem") {
        if (what.size() != 2) throw UserError("usage: derive hemisystem <geofile>");
        const IncidenceGeometry geo = parse_geometry(run.slurp(what[1]));
        const std::vector<std::vector<int>> hemis = find_hemisystems(geo, count);
        const Graph g = collinearity_graph(geo);
        const SrgParams p = require_srg(g);
        std::vector<SetRecord> records;
        for (const auto& h : hemis) {
            const Bitset s = row_to_bitset(h, g.n());
            records.push_back(make_record(s, verify_intriguing(g, p, s)));
        }
        std::sort(records.begin(), records.end(),
                  [](const SetRecord& a, const SetRecord& b) { return a.members < b.members; });
        if (outPath.empty()) outPath = stem(what[1]) + "-hemi.set";
        write_text_file(outPath, sets_text(records));
        if (records.empty()) run.manifest.note = "no hemisystem exists";
        else if (int(records.size()) == count) run.manifest.note = "stopped at the requested count";
        run.finish(outPath + ".manifest");
        std::printf("wrote %s: %zu hemisystems\n", outPath.c_str(), records.size());
        return 0;
    }
    throw UserError("unknown derive form: " + kind);
}

std::string rat_field(bool defined, long long v) { return defined ? std::to_string(v) : "-"; }

int cmd_infinity(Run& run, const std::string& geoPath, const std::string& infSpec,
                 const std::string& setPath, const std::string& evidence, long long budget,
                 int threads, const std::string& outPath) {
    const IncidenceGeometry geo = parse_geometry(run.slurp(geoPath));
    if (!evidence.empty()) {
        std::vector<std::string> lines;
        if (evidence == "negint") {
            if (infSpec.rfind("perp:", 0) != 0)
                throw UserError("evidence negint needs --inf perp:<point>");
            const int p = std::stoi(infSpec.substr(5));
            run.manifest.workers = threads;
            lines = negint_minusperp_evidence(geo, p, budget, threads);
        } else if (evidence == "hemi-perp") {
            const std::vector<SetRecord> sets = parse_sets(run.slurp(setPath));
            if (sets.size() != 1) throw UserError("evidence hemi-perp needs one set row");
            lines = hemi_perp_evidence(geo, sets[0].members);
        } else if (evidence == "hemi-diff") {
            const std::vector<SetRecord> sets = parse_sets(run.slurp(setPath));
            std::vector<std::vector<int>> hemis;
            for (const auto& rec : sets) hemis.push_back(rec.members);
            lines = hemi_difference_evidence(geo, hemis);
        } else {
            throw UserError("unknown evidence kind: " + evidence);
        }
        emit_report(run, lines, outPath);
        return 0;
    }
    const Graph g = collinearity_graph(geo);
    Bitset infinity(g.n());
    if (infSpec.rfind("perp:", 0) == 0) {
        infinity = point_perp(geo, std::stoi(infSpec.substr(5)));
    } else if (infSpec.rfind("set:", 0) == 0) {
        const std::vector<SetRecord> rows = parse_sets(run.slurp(infSpec.substr(4)));
        if (rows.size() != 1) throw UserError("--inf set: needs a set file with exactly one row");
        infinity = row_to_bitset(rows[0].members, g.n());
    } else {
        throw UserError("--inf must be perp:<point> or set:<file>");
    }
    const std::vector<SetRecord> sets = parse_sets(run.slurp(setPath));
    std::vector<std::string> lines;
    for (size_t i = 0; i < sets.size(); ++i) {
        const Bitset s = row_to_bitset(sets[i].members, g.n());
        const AtInfinityCheck chk = check_atinfinity(g, infinity, s);
        std::string line = "set=" + std::to_string(i) + " size=" + std::to_string(s.count()) +
                           " sign=" + short_sign(chk.ambient.sign) +
                           " h1=" + std::to_string(chk.ambient.h1) +
                           " h2=" + std::to_string(chk.ambient.h2) +
                           " inside=" + std::to_string(chk.profile.insideInfinity) +
                           " constant=" + (chk.profile.constant ? "1" : "0") +
                           " a1=" + rat_field(chk.profile.a1Defined, chk.profile.a1) +
                           " a2=" + rat_field(chk.profile.a2Defined, chk.profile.a2);
        if (chk.restriction)
            line += " restriction=" + std::to_string(chk.restriction->h1) + "," +
                    std::to_string(chk.restriction->h2) + "," + std::to_string(chk.restriction->size);
        else
            line += " restriction=none";
        lines.push_back(line);
    }
    emit_report(run, lines, outPath);
    return 0;
}

int cmd_complete(Run& run, const std::string& geoPath, int p, const std::string& setPath,
                 std::string outPath) {
    const IncidenceGeometry geo = parse_geometry(run.slurp(geoPath));
    const std::vector<SetRecord> sets = parse_sets(run.slurp(setPath));
    if (sets.empty()) throw UserError("no sets to complete");
    const DerivedGeometry dg = minus_perp(geo, p);
    const Graph g = collinearity_graph(geo);
    const SrgParams params = require_srg(g);
    std::vector<SetRecord> records;
    for (const auto& rec : sets) {
        const Bitset slice = row_to_bitset(rec.members, dg.geo.npoints);
        const Bitset hemi = complete_to_hemisystem(geo, p, slice);
        records.push_back(make_record(hemi, verify_intriguing(g, params, hemi)));
    }
    std::sort(records.begin(), records.end(),
              [](const SetRecord& a, const SetRecord& b) { return a.members < b.members; });
    records.erase(std::unique(records.begin(), records.end(),
                              [](const SetRecord& a, const SetRecord& b) {
                                  return a.members == b.members;
                              }),
                  records.end());
    if (outPath.empty()) outPath = stem(setPath) + "-completed.set";
    write_text_file(outPath, sets_text(records));
    run.finish(outPath + ".manifest");
    std::printf("wrote %s: %zu completions, %zu distinct\n", outPath.c_str(), sets.size(),
                records.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial quadrangles, strongly regular graphs and their intriguing sets"};
    app.require_subcommand(1);

    std::vector<std::string> buildWhat;
    std::string prefix;
    long long budget = 0;
    auto* build = app.add_subcommand("build", "construct a catalog graph, a quadric geometry or a cap representation");
    build->add_option("what", buildWhat, "<name> | q-minus 5 <q> | coxeter-pq | cap-rep <capfile>")
        ->required()
        ->expected(-1);
    build->add_option("--out-prefix", prefix, "output file prefix");
    build->add_option("--budget-nodes", budget, "search node budget, 0 = unlimited");

    std::string graphPath, signWord, groupPath, outPath;
    long long sizeCap = 0;
    bool first = false;
    int threads = 1;
    auto* enumerate = app.add_subcommand("enumerate", "enumerate intriguing sets of a graph");
    enumerate->add_option("graph", graphPath, "graph file")->required();
    enumerate->add_option("sign", signWord, "pos, neg or any")->required();
    enumerate->add_option("--size-cap", sizeCap, "only parameter rows up to this size");
    enumerate->add_option("--group", groupPath, "group file; output one set per orbit");
    enumerate->add_option("--budget-nodes", budget, "search node budget, 0 = unlimited");
    enumerate->add_flag("--first", first, "stop after the first set");
    enumerate->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
    enumerate->add_option("--out", outPath, "output set file");

    std::string setPath;
    auto* verify = app.add_subcommand("verify", "measure certificates of the sets in a set file");
    verify->add_option("graph", graphPath, "graph file")->required();
    verify->add_option("sets", setPath, "set file")->required();
    verify->add_option("--out", outPath, "also write the report here");

    std::string posPath, negPath;
    auto* intersect = app.add_subcommand("intersect", "check the intersection identity on every opposite-sign pair");
    intersect->add_option("graph", graphPath, "graph file")->required();
    intersect->add_option("positive", posPath, "positive set file")->required();
    intersect->add_option("negative", negPath, "negative set file")->required();
    intersect->add_option("--out", outPath, "also write the report here");

    std::vector<std::string> deriveWhat;
    int count = 1;
    auto* derive = app.add_subcommand("derive", "derive a geometry or find hemisystems");
    derive->add_option("what", deriveWhat,
                       "minus-perp <geo> <point> | hemi-restrict <geo> <setfile> | hemisystem <geo>")
        ->required()
        ->expected(-1);
    derive->add_option("--out-prefix", prefix, "output file prefix");
    derive->add_option("--count", count, "hemisystems to find")->check(CLI::PositiveNumber);
    derive->add_option("--out", outPath, "output set file for hemisystem");

    std::string geoPath, infSpec, evidence;
    auto* infinity = app.add_subcommand("infinity", "profile sets across a deleted infinity part");
    infinity->add_option("geometry", geoPath, "geometry file")->required();
    infinity->add_option("--inf", infSpec, "perp:<point> or set:<file>");
    infinity->add_option("--set", setPath, "set file of ambient sets to profile");
    infinity->add_option("--evidence", evidence, "negint, hemi-perp or hemi-diff");
    infinity->add_option("--budget-nodes", budget, "search node budget for evidence negint");
    infinity->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
    infinity->add_option("--out", outPath, "also write the report here");

    int point = 0;
    auto* complete = app.add_subcommand("complete", "complete negative sets of a minus-perp geometry to hemisystems");
    complete->add_option("geometry", geoPath, "geometry file")->required();
    complete->add_option("point", point, "deleted point")->required();
    complete->add_option("sets", setPath, "set file in minus-perp point indices")->required();
    complete->add_option("--out", outPath, "output set file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    Run run;
    run.manifest.command = app.get_subcommands().front()->get_name();
    for (int i = 1; i < argc; ++i) run.manifest.argv.push_back(argv[i]);

    try {
        if (build->parsed()) return cmd_build(run, buildWhat, prefix, budget);
        if (enumerate->parsed())
            return cmd_enumerate(run, graphPath, signWord, sizeCap, groupPath, budget, first,
                                 threads, outPath);
        if (verify->parsed()) return cmd_verify(run, graphPath, setPath, outPath);
        if (intersect->parsed()) return cmd_intersect(run, graphPath, posPath, negPath, outPath);
        if (derive->parsed()) return cmd_derive(run, deriveWhat, prefix, count, outPath);
        if (infinity->parsed())
            return cmd_infinity(run, geoPath, infSpec, setPath, evidence, budget, threads, outPath);
        if (complete->parsed()) return cmd_complete(run, geoPath, point, setPath, outPath);
    } catch (const UserError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const InternalCheckError& e) {
        std::fprintf(stderr, "internal check failed: %s\n", e.what());
        return 3;
    }
    return 0;
}
