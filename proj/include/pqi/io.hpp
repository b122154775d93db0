#pragma once

// File formats and run manifests. Every format is line-oriented text with
// full-line '#' comments, LF endings, and one canonical spelling: graphs as
// sorted edge lists, geometries as sorted point-index lines, set files as
// lexicographically sorted index rows with an optional certificate
// annotation, groups as one generator per line, caps as coordinate rows.
// Parsers are strict about the canonical order so that equal objects always
// produce byte-identical files.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqi/common.hpp"
#include "pqi/exactmath.hpp"
#include "pqi/geometry.hpp"
#include "pqi/graphcore.hpp"
#include "pqi/intrigue.hpp"

namespace pqi {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& data);
std::string digest_hex(const std::string& data);  // 16 hex digits of fnv1a64

// "n=<N>" then one "u v" line per edge, u < v, sorted lexicographically.
std::string graph_text(const Graph& g);
Graph parse_graph(const std::string& text);
Graph load_graph(const std::string& path);

// "points=<N> lines=<M> s=<s> t=<t> mu=<mu|gq>" then one sorted point-index
// row per line, rows sorted lexicographically. Coordinates are not stored;
// loading re-verifies the incidence axioms.
std::string geometry_text(const IncidenceGeometry& geo);
IncidenceGeometry parse_geometry(const std::string& text);
IncidenceGeometry load_geometry(const std::string& path);

struct SetRecord {
    std::vector<int> members;  // strictly increasing
    std::optional<IntrigueCertificate> cert;
};

// One set per line: sorted indices, then optionally
// " | sign=<pos|neg> h1=<n> h2=<n>". Rows sorted lexicographically.
std::string sets_text(const std::vector<SetRecord>& sets);
std::vector<SetRecord> parse_sets(const std::string& text);
std::vector<SetRecord> load_sets(const std::string& path);

// One generator per line: n space-separated images.
std::string group_text(const std::vector<Perm>& gens);
std::vector<Perm> parse_group(const std::string& text, int n);
std::vector<Perm> load_group(const std::string& path, int n);

struct CapFile {
    int n = 0, q = 0;
    std::vector<PointCoords> points;
};

// "n=<n> q=<q> k=<k>" then k rows of n+1 field-element indices.
std::string cap_text(const CapFile& c);
CapFile parse_cap(const std::string& text);
CapFile load_cap(const std::string& path);

struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    bool exhaustive = true;
    std::string note;
    long long wallMillis = 0;
    int workers = 1;
};

// Result files are byte-stable across reruns and worker counts; the manifest
// records how a result was produced (including wall time, which is not).
std::string manifest_text(const RunManifest& m);

}  // namespace pqi
