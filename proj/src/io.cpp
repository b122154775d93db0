#include "pqi/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pqi {

namespace {

// comment and blank lines removed, trailing CR stripped
std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || line[i] == '#') continue;
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

long long parse_ll(const std::string& tok, const char* what) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (...) {
        pos = 0;
    }
    if (pos == 0 || pos != tok.size())
        throw UserError(std::string("cannot read ") + what + " from '" + tok + "'");
    return v;
}

std::string expect_kv(const std::string& tok, const std::string& key) {
    const std::string pre = key + "=";
    if (tok.rfind(pre, 0) != 0) throw UserError("expected " + pre + "<value>, got '" + tok + "'");
    return tok.substr(pre.size());
}

std::vector<int> parse_index_row(const std::vector<std::string>& toks, int bound, const char* what) {
    std::vector<int> row;
    row.reserve(toks.size());
    for (const auto& t : toks) {
        const long long v = parse_ll(t, what);
        if (v < 0 || v >= bound)
            throw UserError(std::string(what) + " " + t + " out of range [0, " + std::to_string(bound) + ")");
        if (!row.empty() && v <= row.back())
            throw UserError(std::string(what) + " rows must be strictly increasing");
        row.push_back(int(v));
    }
    return row;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UserError("cannot write file: " + path);
    out << content;
    if (!out) throw UserError("write failed: " + path);
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_hex(const std::string& data) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string graph_text(const Graph& g) {
    std::string out = "n=" + std::to_string(g.n()) + "\n";
    for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Graph parse_graph(const std::string& text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw UserError("graph file is empty");
    const auto head = split_ws(lines[0]);
    if (head.size() != 1) throw UserError("graph header must be a single n=<N> field");
    const long long n = parse_ll(expect_kv(head[0], "n"), "vertex count");
    if (n < 1) throw UserError("graph needs at least one vertex");
    Graph g{int(n)};
    std::pair<int, int> prev{-1, -1};
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto toks = split_ws(lines[i]);
        if (toks.size() != 2) throw UserError("edge lines carry exactly two endpoints");
        const long long u = parse_ll(toks[0], "edge endpoint");
        const long long v = parse_ll(toks[1], "edge endpoint");
        if (u >= v) throw UserError("edges must be written with u < v");
        const std::pair<int, int> cur{int(u), int(v)};
        if (!(prev < cur)) throw UserError("edges must be strictly sorted");
        prev = cur;
        g.add_edge(int(u), int(v));
    }
    return g;
}

Graph load_graph(const std::string& path) { return parse_graph(read_text_file(path)); }

std::string geometry_text(const IncidenceGeometry& geo) {
    std::string out = "points=" + std::to_string(geo.npoints) + " lines=" + std::to_string(geo.lines.size()) +
                      " s=" + std::to_string(geo.s) + " t=" + std::to_string(geo.t) +
                      " mu=" + (geo.is_gq() ? std::string("gq") : std::to_string(geo.mu)) + "\n";
    for (const auto& ln : geo.lines) {
        for (size_t i = 0; i < ln.size(); ++i) out += (i ? " " : "") + std::to_string(ln[i]);
        out += "\n";
    }
    return out;
}

IncidenceGeometry parse_geometry(const std::string& text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw UserError("geometry file is empty");
    const auto head = split_ws(lines[0]);
    if (head.size() != 5) throw UserError("geometry header must carry points, lines, s, t, mu");
    IncidenceGeometry geo;
    geo.npoints = int(parse_ll(expect_kv(head[0], "points"), "point count"));
    const long long m = parse_ll(expect_kv(head[1], "lines"), "line count");
    geo.s = int(parse_ll(expect_kv(head[2], "s"), "order s"));
    geo.t = int(parse_ll(expect_kv(head[3], "t"), "order t"));
    const std::string mu = expect_kv(head[4], "mu");
    geo.mu = mu == "gq" ? geo.t + 1 : int(parse_ll(mu, "mu"));
    if (geo.npoints < 1 || m < 1 || geo.s < 1 || geo.t < 0 || geo.mu < 1)
        throw UserError("geometry header values out of range");
    if (int(lines.size()) != m + 1)
        throw UserError("geometry declares " + std::to_string(m) + " lines but carries " +
                        std::to_string(lines.size() - 1));
    std::vector<int> prev;
    for (long long i = 1; i <= m; ++i) {
        auto row = parse_index_row(split_ws(lines[size_t(i)]), geo.npoints, "point index");
        if (int(row.size()) != geo.s + 1)
            throw UserError("every line must carry s+1 = " + std::to_string(geo.s + 1) + " points");
        if (!prev.empty() && !(prev < row)) throw UserError("geometry lines must be strictly sorted");
        prev = row;
        geo.lines.push_back(std::move(row));
    }
    return geo;
}

IncidenceGeometry load_geometry(const std::string& path) {
    IncidenceGeometry geo = parse_geometry(read_text_file(path));
    const GeometryCheck chk = verify_geometry(geo);
    if (!chk.ok) throw UserError("geometry file fails verification: " + chk.reason);
    return geo;
}

std::string sets_text(const std::vector<SetRecord>& sets) {
    std::string out;
    for (const auto& rec : sets) {
        std::string row;
        for (size_t i = 0; i < rec.members.size(); ++i)
            row += (i ? " " : "") + std::to_string(rec.members[i]);
        if (rec.cert) {
            row += std::string(" | sign=") + (rec.cert->sign == SetSign::Positive ? "pos" : "neg");
            row += " h1=" + std::to_string(rec.cert->h1);
            row += " h2=" + std::to_string(rec.cert->h2);
        }
        out += row + "\n";
    }
    return out;
}

std::vector<SetRecord> parse_sets(const std::string& text) {
    std::vector<SetRecord> out;
    for (const auto& raw : content_lines(text)) {
        std::string left = raw, right;
        const size_t bar = raw.find('|');
        if (bar != std::string::npos) {
            left = raw.substr(0, bar);
            right = raw.substr(bar + 1);
        }
        SetRecord rec;
        const auto toks = split_ws(left);
        if (toks.empty()) throw UserError("set rows cannot be empty");
        rec.members.reserve(toks.size());
        for (const auto& t : toks) {
            const long long v = parse_ll(t, "set member");
            if (v < 0) throw UserError("set members must be nonnegative");
            if (!rec.members.empty() && v <= rec.members.back())
                throw UserError("set members must be strictly increasing");
            rec.members.push_back(int(v));
        }
        if (bar != std::string::npos) {
            const auto ann = split_ws(right);
            if (ann.size() != 3) throw UserError("set annotations carry sign, h1 and h2");
            const std::string sign = expect_kv(ann[0], "sign");
            IntrigueCertificate c;
            if (sign == "pos") c.sign = SetSign::Positive;
            else if (sign == "neg") c.sign = SetSign::Negative;
            else throw UserError("sign must be pos or neg, got '" + sign + "'");
            c.h1 = parse_ll(expect_kv(ann[1], "h1"), "h1");
            c.h2 = parse_ll(expect_kv(ann[2], "h2"), "h2");
            c.size = (long long)rec.members.size();
            rec.cert = c;
        }
        if (!out.empty() && !(out.back().members < rec.members))
            throw UserError("sets must be sorted lexicographically");
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<SetRecord> load_sets(const std::string& path) { return parse_sets(read_text_file(path)); }

std::string group_text(const std::vector<Perm>& gens) {
    std::string out;
    for (const auto& p : gens) {
        for (size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + std::to_string(p[i]);
        out += "\n";
    }
    return out;
}

std::vector<Perm> parse_group(const std::string& text, int n) {
    std::vector<Perm> out;
    for (const auto& raw : content_lines(text)) {
        const auto toks = split_ws(raw);
        if (int(toks.size()) != n)
            throw UserError("every generator must list " + std::to_string(n) + " images");
        Perm p;
        p.reserve(n);
        for (const auto& t : toks) p.push_back(int(parse_ll(t, "image")));
        if (!is_permutation(p, n)) throw UserError("a generator row is not a permutation");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Perm> load_group(const std::string& path, int n) {
    return parse_group(read_text_file(path), n);
}

std::string cap_text(const CapFile& c) {
    std::string out = "n=" + std::to_string(c.n) + " q=" + std::to_string(c.q) +
                      " k=" + std::to_string(c.points.size()) + "\n";
    for (const auto& pt : c.points) {
        for (size_t i = 0; i < pt.size(); ++i) out += (i ? " " : "") + std::to_string(int(pt[i]));
        out += "\n";
    }
    return out;
}

CapFile parse_cap(const std::string& text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw UserError("cap file is empty");
    const auto head = split_ws(lines[0]);
    if (head.size() != 3) throw UserError("cap header must carry n, q and k");
    CapFile c;
    c.n = int(parse_ll(expect_kv(head[0], "n"), "dimension"));
    c.q = int(parse_ll(expect_kv(head[1], "q"), "field order"));
    const long long k = parse_ll(expect_kv(head[2], "k"), "cap size");
    if (c.n < 1 || c.q < 2 || k < 1) throw UserError("cap header values out of range");
    if (int(lines.size()) != k + 1)
        throw UserError("cap declares " + std::to_string(k) + " points but carries " +
                        std::to_string(lines.size() - 1));
    for (long long i = 1; i <= k; ++i) {
        const auto toks = split_ws(lines[size_t(i)]);
        if (int(toks.size()) != c.n + 1)
            throw UserError("cap rows carry n+1 = " + std::to_string(c.n + 1) + " coordinates");
        PointCoords pt;
        pt.reserve(toks.size());
        for (const auto& t : toks) {
            const long long v = parse_ll(t, "coordinate");
            if (v < 0 || v >= c.q) throw UserError("coordinates must be field elements below q");
            pt.push_back(std::uint8_t(v));
        }
        c.points.push_back(std::move(pt));
    }
    return c;
}

CapFile load_cap(const std::string& path) { return parse_cap(read_text_file(path)); }

std::string manifest_text(const RunManifest& m) {
    std::string out = "# run manifest\n";
    out += "command=" + m.command + "\n";
    std::string args;
    for (size_t i = 0; i < m.argv.size(); ++i) args += (i ? " " : "") + m.argv[i];
    out += "argv=" + args + "\n";
    for (const auto& [path, digest] : m.inputs) out += "input=" + path + " fnv1a=" + digest + "\n";
    out += std::string("exhaustive=") + (m.exhaustive ? "1" : "0") + "\n";
    out += "note=" + m.note + "\n";
    out += "wall_ms=" + std::to_string(m.wallMillis) + "\n";
    out += "workers=" + std::to_string(m.workers) + "\n";
    return out;
}

}  // namespace pqi
