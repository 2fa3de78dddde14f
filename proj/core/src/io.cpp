#include "cubaug/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cubaug/error.hpp"

namespace cubaug {
namespace {

struct Line {
    int number = 0;
    std::vector<std::string_view> tokens;
};

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

int to_int(const Line& l, std::size_t i) {
    if (i >= l.tokens.size()) fail(l.number, "missing field " + std::to_string(i + 1));
    std::string_view t = l.tokens[i];
    int x = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || p != t.data() + t.size()) fail(l.number, "not an integer: '" + std::string(t) + "'");
    return x;
}

void expect_fields(const Line& l, std::size_t n) {
    if (l.tokens.size() != n)
        fail(l.number, "expected " + std::to_string(n - 1) + " fields after '" + std::string(l.tokens[0]) + "'");
}

// Splits text into token lines; header comments go to *comments.
std::vector<Line> tokenize(std::string_view text, std::vector<std::string>* comments) {
    std::vector<Line> out;
    int number = 0;
    bool header = true;
    while (!text.empty()) {
        std::size_t end = text.find('\n');
        std::string_view raw = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view() : text.substr(end + 1);
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::size_t hash = raw.find('#');
        if (header && hash == 0 && comments) {
            comments->emplace_back(raw.substr(1));
            continue;
        }
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line l{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
            if (j > i) l.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (l.tokens.empty()) continue;
        header = false;
        out.push_back(std::move(l));
    }
    return out;
}

struct PendingWalk {
    int line = 0;
    std::vector<Dart> walk;
    Dart container = kNone;
};

struct PendingIsolated {
    int line = 0;
    Vertex v = kNone;
    Dart container = kNone;
};

// Parses the graph part; lines it does not know go to extra, which returns false to reject them.
GraphFile parse_graph_lines(const std::vector<Line>& lines, const std::function<bool(const Line&)>& extra) {
    GraphFile f;
    int n = -1, m = -1;
    std::vector<std::pair<Vertex, Vertex>> ends;
    std::vector<bool> have_edge, have_vertex;
    std::vector<Tag> tags;
    std::vector<std::vector<Dart>> rot;
    std::vector<int> rot_line;
    int first_rot = 0;
    std::vector<PendingWalk> outers;
    std::vector<PendingIsolated> isolated;

    auto vertex_arg = [&](const Line& l, std::size_t i) {
        int x = to_int(l, i);
        if (x < 0 || x >= n) fail(l.number, "vertex " + std::to_string(x) + " out of range");
        return x;
    };
    auto dart_arg = [&](const Line& l, std::size_t i) {
        int x = to_int(l, i);
        if (x < 0 || x >= 2 * m) fail(l.number, "dart " + std::to_string(x) + " out of range");
        return x;
    };

    for (const Line& l : lines) {
        std::string_view kw = l.tokens[0];
        if (kw == "graph") {
            if (n >= 0) fail(l.number, "second graph header");
            expect_fields(l, 3);
            n = to_int(l, 1);
            m = to_int(l, 2);
            if (n < 0 || m < 0) fail(l.number, "negative size");
            ends.assign(m, {kNone, kNone});
            have_edge.assign(m, false);
            have_vertex.assign(n, false);
            tags.assign(n, Tag::original);
            rot.assign(n, {});
            rot_line.assign(n, 0);
            continue;
        }
        if (n < 0) {
            if (extra && extra(l)) continue;
            fail(l.number, "expected 'graph <n> <m>' first");
        }
        if (kw == "v") {
            if (l.tokens.size() != 2 && l.tokens.size() != 3) fail(l.number, "expected 'v <id> [tag]'");
            Vertex x = vertex_arg(l, 1);
            if (have_vertex[x]) fail(l.number, "vertex " + std::to_string(x) + " listed twice");
            have_vertex[x] = true;
            if (l.tokens.size() == 3) {
                std::string_view t = l.tokens[2];
                if (t == "original") {
                } else if (t == "added") {
                    tags[x] = Tag::added;
                } else if (t == "gadget") {
                    tags[x] = Tag::gadget;
                } else if (t == "u" || t == "v") {
                    Vertex& pole = t == "u" ? f.u : f.v;
                    if (pole != kNone) fail(l.number, "second vertex tagged " + std::string(t));
                    pole = x;
                } else {
                    fail(l.number, "unknown tag '" + std::string(t) + "'");
                }
            }
        } else if (kw == "e") {
            expect_fields(l, 4);
            int id = to_int(l, 1);
            if (id < 0 || id >= m) fail(l.number, "edge " + std::to_string(id) + " out of range");
            if (have_edge[id]) fail(l.number, "edge " + std::to_string(id) + " listed twice");
            Vertex a = vertex_arg(l, 2), b = vertex_arg(l, 3);
            if (a == b) fail(l.number, "loop at vertex " + std::to_string(a));
            have_edge[id] = true;
            ends[id] = {a, b};
        } else if (kw == "rot") {
            if (l.tokens.size() < 2 || l.tokens[1].empty() || l.tokens[1].back() != ':')
                fail(l.number, "expected 'rot <v>: <darts>'");
            Line head = l;
            head.tokens[1].remove_suffix(1);
            Vertex x = vertex_arg(head, 1);
            if (rot_line[x]) fail(l.number, "second rotation for vertex " + std::to_string(x));
            rot_line[x] = l.number;
            if (!first_rot) first_rot = l.number;
            for (std::size_t i = 2; i < l.tokens.size(); ++i) rot[x].push_back(dart_arg(l, i));
        } else if (kw == "outer") {
            PendingWalk w{l.number, {}, kNone};
            std::size_t i = 1;
            for (; i < l.tokens.size() && l.tokens[i] != "in"; ++i) w.walk.push_back(dart_arg(l, i));
            if (w.walk.empty()) fail(l.number, "empty outer walk");
            if (i < l.tokens.size()) {
                if (i + 2 != l.tokens.size()) fail(l.number, "expected one dart after 'in'");
                w.container = dart_arg(l, i + 1);
            }
            outers.push_back(std::move(w));
        } else if (kw == "isolated") {
            expect_fields(l, 4);
            if (l.tokens[2] != "in") fail(l.number, "expected 'isolated <v> in <dart>'");
            isolated.push_back({l.number, vertex_arg(l, 1), dart_arg(l, 3)});
        } else if (!extra || !extra(l)) {
            fail(l.number, "unknown directive '" + std::string(kw) + "'");
        }
    }
    if (n < 0) throw ParseError("line 1: missing 'graph <n> <m>' header");
    const int last = lines.empty() ? 1 : lines.back().number;
    for (Edge x = 0; x < m; ++x)
        if (!have_edge[x]) fail(last, "edge " + std::to_string(x) + " never defined");

    f.graph = MultiGraph(n);
    for (Vertex x = 0; x < n; ++x) f.graph.set_tag(x, tags[x]);
    for (auto [a, b] : ends) f.graph.add_edge(a, b);
    const MultiGraph& g = f.graph;

    if (!first_rot) {
        if (!outers.empty()) fail(outers.front().line, "outer walk without a rotation block");
        if (!isolated.empty()) fail(isolated.front().line, "placement without a rotation block");
        return f;
    }
    for (Vertex x = 0; x < n; ++x) {
        if (!rot_line[x]) fail(first_rot, "rotation block has no line for vertex " + std::to_string(x));
        std::vector<Dart> got = rot[x], want = g.darts(x);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want) fail(rot_line[x], "rotation of vertex " + std::to_string(x) + " must list each of its darts once");
    }

    Embedding e = embedding_with_toplevel(g, rot);
    std::vector<int> comp = connected_components(g);
    std::map<int, int> placement_of;  // component label -> placement index
    for (std::size_t c = 0; c < e.placements.size(); ++c) placement_of[comp[e.placements[c].rep]] = static_cast<int>(c);
    std::vector<bool> placed(e.placements.size(), false);

    for (const PendingWalk& w : outers) {
        int c = placement_of.at(comp[g.origin(w.walk[0])]);
        if (placed[c]) fail(w.line, "second outer walk for one component");
        placed[c] = true;
        std::vector<Dart> walk{w.walk[0]};
        for (Dart d = face_next(e, g, w.walk[0]); d != w.walk[0]; d = face_next(e, g, d)) walk.push_back(d);
        if (walk != w.walk) fail(w.line, "not a facial walk of the rotation block");
        e.placements[c].outer = w.walk[0];
        if (w.container != kNone && comp[g.origin(w.container)] == comp[g.origin(w.walk[0])])
            fail(w.line, "a component cannot lie in its own face");
        e.placements[c].container = w.container;
    }
    for (const PendingIsolated& p : isolated) {
        if (g.degree(p.v) != 0) fail(p.line, "vertex " + std::to_string(p.v) + " is not isolated");
        int c = placement_of.at(comp[p.v]);
        if (placed[c]) fail(p.line, "second placement for vertex " + std::to_string(p.v));
        placed[c] = true;
        e.placements[c].container = p.container;
    }
    if (!validate_planarity(g, e)) throw PlanarityError("rotation block is not a planar embedding");
    f.embedding = std::move(e);
    return f;
}

const char* tag_name(Tag t) {
    switch (t) {
        case Tag::added: return "added";
        case Tag::gadget: return "gadget";
        default: return nullptr;
    }
}

void write_graph(std::ostringstream& out, const GraphFile& f) {
    const MultiGraph& g = f.graph;
    for (const auto& c : f.comments) out << '#' << c << '\n';
    out << "graph " << g.n() << ' ' << g.m() << '\n';
    for (Vertex x = 0; x < g.n(); ++x) {
        out << "v " << x;
        if (x == f.u) {
            out << " u";
        } else if (x == f.v) {
            out << " v";
        } else if (const char* t = tag_name(g.tag(x))) {
            out << ' ' << t;
        }
        out << '\n';
    }
    for (Edge x = 0; x < g.m(); ++x) out << "e " << x << ' ' << g.ends(x).first << ' ' << g.ends(x).second << '\n';
    if (!f.embedding) return;
    const Embedding& e = *f.embedding;
    for (Vertex x = 0; x < g.n(); ++x) {
        out << "rot " << x << ':';
        for (Dart d : e.rotation[x]) out << ' ' << d;
        out << '\n';
    }
    for (const Placement& p : e.placements) {
        if (p.outer == kNone) {
            if (p.container != kNone) out << "isolated " << p.rep << " in " << p.container << '\n';
            continue;
        }
        out << "outer " << p.outer;
        for (Dart d = face_next(e, g, p.outer); d != p.outer; d = face_next(e, g, d)) out << ' ' << d;
        if (p.container != kNone) out << " in " << p.container;
        out << '\n';
    }
}

std::vector<int> clause_of(const Line& l, int variables) {
    if (l.tokens.size() < 2 || l.tokens.size() > 4) fail(l.number, "a clause lists 1 to 3 variables");
    std::vector<int> c;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        int x = to_int(l, i);
        if (x < 1 || x > variables) fail(l.number, "variable " + std::to_string(x) + " out of range");
        c.push_back(x - 1);
    }
    return c;
}

}  // namespace

GraphFile parse_graph(std::string_view text) {
    GraphFile f;
    std::vector<std::string> comments;
    auto lines = tokenize(text, &comments);
    f = parse_graph_lines(lines, nullptr);
    f.comments = std::move(comments);
    return f;
}

std::string emit_graph(const GraphFile& f) {
    std::ostringstream out;
    write_graph(out, f);
    return out.str();
}

std::string emit_graph(const MultiGraph& g, const std::optional<Embedding>& e) {
    GraphFile f;
    f.graph = g;
    f.embedding = e;
    return emit_graph(f);
}

CertificateFile parse_certificate(std::string_view text) {
    std::vector<std::string> comments;
    auto lines = tokenize(text, &comments);
    std::vector<std::pair<int, int>> vmap, emap;
    std::vector<int> vline, eline;
    auto extra = [&](const Line& l) {
        if (l.tokens[0] != "map" && l.tokens[0] != "emap") return false;
        expect_fields(l, 3);
        bool vertex = l.tokens[0] == "map";
        (vertex ? vmap : emap).push_back({to_int(l, 1), to_int(l, 2)});
        (vertex ? vline : eline).push_back(l.number);
        return true;
    };
    CertificateFile c;
    c.h = parse_graph_lines(lines, extra);
    c.h.comments = std::move(comments);
    auto fill = [](const std::vector<std::pair<int, int>>& pairs, const std::vector<int>& where, int range,
                   const char* what) {
        std::vector<int> out(pairs.size(), kNone);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto [a, b] = pairs[i];
            if (a < 0 || a >= static_cast<int>(pairs.size()) || out[a] != kNone)
                fail(where[i], std::string(what) + " map keys must be 0..count-1, each once");
            if (b < 0 || b >= range) fail(where[i], std::string(what) + " image out of range");
            out[a] = b;
        }
        return out;
    };
    c.vertex_map = fill(vmap, vline, c.h.graph.n(), "vertex");
    c.edge_map = fill(emap, eline, c.h.graph.m(), "edge");
    return c;
}

std::string emit_certificate(const AugmentationResult& r) {
    std::ostringstream out;
    GraphFile f;
    f.graph = r.h;
    f.embedding = r.h_embedding;
    write_graph(out, f);
    for (std::size_t i = 0; i < r.vertex_map.size(); ++i) out << "map " << i << ' ' << r.vertex_map[i] << '\n';
    for (std::size_t i = 0; i < r.edge_map.size(); ++i) out << "emap " << i << ' ' << r.edge_map[i] << '\n';
    return out.str();
}

AugmentationResult to_result(const CertificateFile& c) {
    if (!c.h.embedding) throw ParseError("line 1: certificate has no rotation block");
    return AugmentationResult{c.h.graph, *c.h.embedding, c.vertex_map, c.edge_map};
}

BFactorInstance parse_factor(std::string_view text) {
    auto lines = tokenize(text, nullptr);
    std::map<int, std::pair<int, DegreeSet>> sets;
    auto extra = [&](const Line& l) {
        if (l.tokens[0] != "b") return false;
        int v = to_int(l, 1);
        if (sets.count(v)) fail(l.number, "second degree set for vertex " + std::to_string(v));
        DegreeSet b;
        for (std::size_t i = 2; i < l.tokens.size(); ++i) b.push_back(to_int(l, i));
        sets[v] = {l.number, b};
        return true;
    };
    GraphFile f = parse_graph_lines(lines, extra);
    std::vector<DegreeSet> b(f.graph.n());
    for (auto& [v, entry] : sets) {
        if (v < 0 || v >= f.graph.n()) fail(entry.first, "vertex " + std::to_string(v) + " out of range");
        b[v] = entry.second;
    }
    if (static_cast<int>(sets.size()) != f.graph.n())
        fail(lines.empty() ? 1 : lines.back().number, "every vertex needs a 'b' line");
    return BFactorInstance(f.graph, b);
}

std::string emit_factor(const BFactorInstance& inst) {
    std::ostringstream out;
    GraphFile f;
    f.graph = inst.graph();
    write_graph(out, f);
    for (Vertex v = 0; v < inst.graph().n(); ++v) {
        out << "b " << v;
        for (int d : inst.degree_set(v)) out << ' ' << d;
        out << '\n';
    }
    return out.str();
}

PlanarMonotone3SatInstance parse_sat(std::string_view text) {
    auto lines = tokenize(text, nullptr);
    PlanarMonotone3SatInstance psi;
    int want_pos = -1, want_neg = -1;
    struct Nest {
        int line;
        bool positive;
        int inner, outer;
    };
    std::vector<Nest> nests;
    for (const Line& l : lines) {
        std::string_view kw = l.tokens[0];
        if (kw == "p") {
            if (want_pos >= 0) fail(l.number, "second problem line");
            expect_fields(l, 5);
            if (l.tokens[1] != "pm3sat") fail(l.number, "expected 'p pm3sat'");
            psi.variables = to_int(l, 2);
            want_pos = to_int(l, 3);
            want_neg = to_int(l, 4);
            if (psi.variables < 0 || want_pos < 0 || want_neg < 0) fail(l.number, "negative count");
        } else if (want_pos < 0) {
            fail(l.number, "expected 'p pm3sat <vars> <pos> <neg>' first");
        } else if (kw == "cp") {
            psi.positive.push_back(clause_of(l, psi.variables));
        } else if (kw == "cn") {
            psi.negative.push_back(clause_of(l, psi.variables));
        } else if (kw == "nest") {
            expect_fields(l, 4);
            if (l.tokens[1] != "p" && l.tokens[1] != "n") fail(l.number, "nest side must be p or n");
            nests.push_back({l.number, l.tokens[1] == "p", to_int(l, 2) - 1, to_int(l, 3) - 1});
        } else {
            fail(l.number, "unknown directive '" + std::string(kw) + "'");
        }
    }
    if (want_pos < 0) throw ParseError("line 1: missing problem line");
    const int last = lines.back().number;
    if (static_cast<int>(psi.positive.size()) != want_pos || static_cast<int>(psi.negative.size()) != want_neg)
        fail(last, "clause counts differ from the problem line");
    validate(psi);
    for (const Nest& x : nests) {
        const auto& side = x.positive ? psi.positive : psi.negative;
        const int count = static_cast<int>(side.size());
        if (x.inner < 0 || x.inner >= count || x.outer < 0 || x.outer >= count)
            fail(x.line, "clause index out of range");
        if (clause_parents(side)[x.inner] != x.outer)
            throw InvalidNesting("line " + std::to_string(x.line) + ": clause " + std::to_string(x.inner + 1) +
                                 " does not lie directly inside clause " + std::to_string(x.outer + 1));
    }
    return psi;
}

std::string emit_sat(const PlanarMonotone3SatInstance& psi) {
    std::ostringstream out;
    out << "p pm3sat " << psi.variables << ' ' << psi.positive.size() << ' ' << psi.negative.size() << '\n';
    auto clauses = [&](const char* kw, const std::vector<std::vector<int>>& side) {
        for (const auto& c : side) {
            out << kw;
            for (int x : c) out << ' ' << x + 1;
            out << '\n';
        }
    };
    clauses("cp", psi.positive);
    clauses("cn", psi.negative);
    auto nests = [&](const char* side_name, const std::vector<std::vector<int>>& side) {
        auto parent = clause_parents(side);
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (parent[i] >= 0) out << "nest " << side_name << ' ' << i + 1 << ' ' << parent[i] + 1 << '\n';
    };
    nests("p", psi.positive);
    nests("n", psi.negative);
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace cubaug
