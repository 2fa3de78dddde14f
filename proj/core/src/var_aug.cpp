#include "cubaug/var_aug.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "cubaug/error.hpp"

namespace cubaug {

LabelSet LabelSet::of(std::initializer_list<const char*> labels, LabelKind kind) {
    LabelSet s;
    s.kind = kind;
    for (const char* l : labels) {
        std::string x(l);
        if (x.size() != 2 || (x[0] != '0' && x[0] != '1') || (x[1] != '0' && x[1] != '1'))
            throw ParseError("bad label '" + x + "'");
        s.insert(x[0] - '0', x[1] - '0');
    }
    return s;
}

LabelSet LabelSet::from_checks(bool has00, bool has01_or_10, bool has11, LabelKind kind) {
    LabelSet s;
    s.kind = kind;
    if (has00) s.insert(0, 0);
    if (has01_or_10) {
        s.insert(0, 1);
        s.insert(1, 0);
    }
    if (has11) s.insert(1, 1);
    return s;
}

LabelSet LabelSet::mirrored() const {
    LabelSet s;
    s.kind = kind;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (contains(a, b)) s.insert(b, a);
    return s;
}

std::string LabelSet::to_string() const {
    std::string out = "{";
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (contains(a, b)) {
                if (out.size() > 1) out += ',';
                out += static_cast<char>('0' + a);
                out += static_cast<char>('0' + b);
            }
    return out + "}";
}

std::array<LabelSet, 8> symmetric_label_sets() {
    std::array<LabelSet, 8> out;
    for (int i = 0; i < 8; ++i) out[i] = LabelSet::from_checks(i & 1, i & 2, i & 4, LabelKind::variable);
    return out;
}

ClosedUv close_uv(const UvGraph& g) {
    if (!g.embedding) throw NoEmbedding("uv-graph has no embedding");
    if (g.u == g.v || g.u < 0 || g.v < 0 || g.u >= g.graph.n() || g.v >= g.graph.n())
        throw PreconditionViolated("poles must be two distinct vertices");
    const Embedding& e = *g.embedding;
    FaceStructure fs = faces_of(g.graph, e);
    auto corner = [&](Vertex x) -> Dart {
        if (g.graph.degree(x) == 0) return kNone;
        for (const auto& w : fs.faces[FaceStructure::outer].walks)
            for (Dart d : w)
                if (g.graph.origin(d) == x) return rotate_prev(e, g.graph, d);
        throw PreconditionViolated("pole not on the outer face");
    };
    ClosedUv c;
    c.graph = g.graph;
    Embedding emb = e;
    Dart au = corner(g.u), av = corner(g.v);
    c.closing = insert_edge(c.graph, emb, g.u, au, g.v, av);
    c.embedding = connected_embedding(c.graph, std::move(emb.rotation), 2 * c.closing + 1);
    return c;
}

UvGraph open_uv(const ClosedUv& c) {
    UvGraph g;
    g.u = c.u();
    g.v = c.v();
    IdMap map;
    g.graph = remove_edges(c.graph, {c.closing}, &map);
    auto rot = remap_rotation(c.embedding, map, g.graph.n());
    Dart outer = face_next(c.embedding, c.graph, 2 * c.closing);
    if (edge_of(outer) == c.closing) {
        g.embedding = embedding_with_toplevel(g.graph, std::move(rot));
    } else {
        g.embedding = connected_embedding(g.graph, std::move(rot), 2 * map.edge[edge_of(outer)] + (outer & 1));
    }
    return g;
}

namespace {

enum class Side : std::uint8_t { A, B, inner };

struct WhiteCorner {
    Vertex w = kNone;
    std::array<Dart, 2> darts{};
    std::array<Side, 2> before{};  // side of the corner just before darts[i]
};

struct Entry {
    Gadget gadget;
    Dart pendant_u = kNone, pendant_v = kNone;
    std::vector<WhiteCorner> whites;
};

using Drawing = std::vector<std::pair<double, double>>;

// Vertex 0 is u at (0,0), vertex 1 is v at (10,0), edge 0 the closing edge, all else above it.
Entry from_drawing(const Drawing& at, const std::vector<std::pair<int, int>>& edges, LabelSet realized) {
    MultiGraph g(static_cast<int>(at.size()));
    for (auto [a, b] : edges) g.add_edge(a, b);
    std::vector<std::vector<Dart>> rot(g.n());
    for (Vertex x = 0; x < g.n(); ++x) {
        rot[x] = g.darts(x);
        auto angle = [&](Dart d) {
            auto [hx, hy] = at[g.head(d)];
            return std::atan2(hy - at[x].second, hx - at[x].first);
        };
        std::sort(rot[x].begin(), rot[x].end(), [&](Dart p, Dart q) { return angle(p) > angle(q); });
    }
    Entry out;
    ClosedUv& c = out.gadget.closed;
    c.graph = g;
    c.closing = 0;
    c.embedding = connected_embedding(g, std::move(rot), 1);
    if (!validate_planarity(c.graph, c.embedding)) throw std::logic_error("gadget drawing is not planar");
    out.gadget.uv_graph = open_uv(c);
    out.gadget.realized = realized;

    FaceStructure fs = faces_of(c.graph, c.embedding);
    const int fa = fs.face_of_dart[0], fb = fs.face_of_dart[1];
    for (Dart d : c.embedding.rotation[0])
        if (d != 0) out.pendant_u = d;
    for (Dart d : c.embedding.rotation[1])
        if (d != 1) out.pendant_v = d;
    for (Vertex x = 2; x < g.n(); ++x) {
        if (g.degree(x) != 2) continue;
        out.gadget.whites.push_back(x);
        WhiteCorner wc;
        wc.w = x;
        for (int i = 0; i < 2; ++i) {
            wc.darts[i] = c.embedding.rotation[x][i];
            int f = fs.face_of_dart[wc.darts[i]];
            wc.before[i] = f == fa ? Side::A : f == fb ? Side::B : Side::inner;
        }
        out.whites.push_back(wc);
    }
    return out;
}

struct Library {
    std::map<int, Entry> symmetric;  // by bits
    std::array<Entry, 4> oriented;   // by 2a+b; 00 and 11 unused

    Library() {
        auto add = [&](std::initializer_list<const char*> labels, const Drawing& at,
                       const std::vector<std::pair<int, int>>& edges) {
            LabelSet s = LabelSet::of(labels);
            symmetric.emplace(s.bits, from_drawing(at, edges, s));
        };
        const std::pair<double, double> u{0, 0}, v{10, 0};
        // K4 minus an edge between the pendants.
        add({"00"}, {u, v, {2, 3}, {5, 4.5}, {5, 1.5}, {8, 3}},
            {{0, 1}, {0, 2}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {5, 1}});
        add({"01", "10"}, {u, v, {5, 3}}, {{0, 1}, {0, 2}, {2, 1}});
        // 4-cycle with one white vertex on each side.
        add({"00", "11"}, {u, v, {2, 2.5}, {5, 1}, {8, 2.5}, {5, 4}},
            {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 2}, {4, 1}});
        // Whites on both sides, each alone in its inner face.
        add({"11"}, {u, v, {2, 2.5}, {5, 1}, {8, 2.5}, {3.5, 4}, {6.5, 4}, {5, 5.5}},
            {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {4, 1}, {2, 5}, {5, 7}, {7, 6}, {6, 4}, {5, 6}});
        // 4-cycle plus one ear whose white sits in the middle face.
        add({"00", "01", "10"}, {u, v, {1, 3}, {5, 0.5}, {9, 3}, {5, 5.5}, {2.33, 2.17}, {3.67, 1.33}, {3.4, 2.4}},
            {{0, 1}, {0, 2}, {2, 6}, {6, 7}, {7, 3}, {3, 4}, {4, 5}, {5, 2}, {6, 8}, {8, 7}, {4, 1}});
        // Outer whites walled off from a middle face holding three whites.
        add({"01", "10", "11"},
            {u, v, {1, 3}, {9, 3}, {3, 1.5}, {5, 0.5}, {7, 1.5}, {3.8, 2.3}, {4.5, 2.5}, {5.5, 2.5}, {5, 3.2},
             {3, 4.5}, {5, 5.5}, {7, 4.5}, {5, 4.2}},
            {{0, 1}, {0, 2}, {2, 4}, {4, 5}, {5, 6}, {6, 3}, {3, 1}, {2, 11}, {11, 12}, {12, 13}, {13, 3},
             {4, 7}, {7, 8}, {8, 9}, {9, 6}, {8, 10}, {10, 9}, {11, 14}, {14, 13}});
        // 4-cycle plus two ears in the middle face.
        add({"00", "01", "10", "11"},
            {u, v, {1, 3}, {5, 0.5}, {9, 3}, {5, 5.5}, {2.33, 2.17}, {3.67, 1.33}, {3.4, 2.4}, {6.33, 4.67},
             {7.67, 3.83}, {6.6, 3.6}},
            {{0, 1}, {0, 2}, {2, 6}, {6, 7}, {7, 3}, {3, 4}, {4, 10}, {10, 9}, {9, 5}, {5, 2}, {6, 8}, {8, 7},
             {9, 11}, {11, 10}, {4, 1}});

        // A triangle on the path with its white on one side only.
        Entry low = from_drawing({u, v, {2, 2.5}, {5, 1}, {8, 2.5}}, {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {2, 4}, {4, 1}}, {});
        Entry high = from_drawing({u, v, {2, 2.5}, {5, 4}, {8, 2.5}}, {{0, 1}, {0, 2}, {2, 4}, {2, 3}, {3, 4}, {4, 1}}, {});
        for (Entry* e : {&low, &high}) {
            const WhiteCorner& w = e->whites.at(0);
            bool on_a = w.before[0] == Side::A || w.before[1] == Side::A;
            e->gadget.realized = LabelSet::of({on_a ? "10" : "01"});
            oriented[on_a ? 2 : 1] = *e;
        }
    }
};

const Library& library() {
    static const Library lib;
    return lib;
}

const Entry& entry_for(const LabelSet& set) {
    if (set.empty()) throw EmptySet("no gadget for the empty label set");
    if (!set.symmetric()) throw PreconditionViolated("label set " + set.to_string() + " is not symmetric");
    return library().symmetric.at(set.bits);
}

// Closing piece for label ab of the closed graph: a gadget realizing ba, nullptr for a plain edge.
const Entry* closer_for(int a, int b) {
    if (a == 0 && b == 0) return nullptr;
    if (a == 1 && b == 1) return &entry_for(LabelSet::of({"11"}));
    return &library().oriented[2 * b + a];
}

// A frame graph with each edge either kept or replaced by a gadget; frame vertex ids are kept.
struct Built {
    MultiGraph g;
    std::vector<std::vector<Dart>> rot;
    std::vector<std::vector<WhiteCorner>> whites;  // per frame edge
};

Built expand(const MultiGraph& f, const std::vector<std::vector<Dart>>& frot, const std::vector<const Entry*>& slot) {
    Built b;
    b.g = MultiGraph(f.n());
    b.rot.resize(f.n());
    b.whites.resize(f.m());
    std::vector<Dart> at(f.dart_count());
    for (Edge e = 0; e < f.m(); ++e) {
        auto [x, y] = f.ends(e);
        if (!slot[e]) {
            Edge ne = b.g.add_edge(x, y);
            at[2 * e] = 2 * ne;
            at[2 * e + 1] = 2 * ne + 1;
            continue;
        }
        const ClosedUv& c = slot[e]->gadget.closed;
        const MultiGraph& pg = c.graph;
        std::vector<Vertex> vmap(pg.n());
        for (Vertex z = 0; z < pg.n(); ++z) vmap[z] = z == c.u() ? x : z == c.v() ? y : b.g.add_vertex(Tag::gadget);
        b.rot.resize(b.g.n());
        std::vector<Edge> emap(pg.m(), kNone);
        for (Edge pe = 0; pe < pg.m(); ++pe)
            if (pe != c.closing) emap[pe] = b.g.add_edge(vmap[pg.ends(pe).first], vmap[pg.ends(pe).second]);
        auto md = [&](Dart d) { return 2 * emap[edge_of(d)] + (d & 1); };
        for (Vertex z = 0; z < pg.n(); ++z) {
            if (z == c.u() || z == c.v()) continue;
            for (Dart d : c.embedding.rotation[z]) b.rot[vmap[z]].push_back(md(d));
        }
        at[2 * e] = md(slot[e]->pendant_u);
        at[2 * e + 1] = md(slot[e]->pendant_v);
        for (WhiteCorner w : slot[e]->whites) {
            w.w = vmap[w.w];
            for (Dart& d : w.darts) d = md(d);
            b.whites[e].push_back(w);
        }
    }
    for (Vertex x = 0; x < f.n(); ++x)
        for (Dart d : frot[x]) b.rot[x].push_back(at[d]);
    return b;
}

// Replaces degree-2 vertex w by K4 minus an edge whose two degree-2 vertices take w's edges.
void modify(Built& b, Vertex w) {
    MultiGraph& g = b.g;
    const Dart d1 = b.rot[w][0], d2 = b.rot[w][1];
    Vertex p = g.add_vertex(Tag::gadget), q = g.add_vertex(Tag::gadget), z = g.add_vertex(Tag::gadget);
    b.rot.resize(g.n());
    Edge wp = g.add_edge(w, p), wq = g.add_edge(w, q), pq = g.add_edge(p, q), pz = g.add_edge(p, z),
         qz = g.add_edge(q, z);
    g.reattach(d2, z);
    b.rot[w] = {d1, 2 * wp, 2 * wq};
    b.rot[z] = {d2, 2 * qz + 1, 2 * pz + 1};
    b.rot[p] = {2 * pz, 2 * pq, 2 * wp + 1};
    b.rot[q] = {2 * wq + 1, 2 * pq + 1, 2 * qz};
}

std::optional<AugmentationResult> solve(const Built& b) {
    Embedding e = connected_embedding(b.g, b.rot, 0);
    return augment_2con_fixed_multi(b.g, e);
}

// Pendant ends left on the A and B sides of the gadget in frame edge e.
std::pair<int, int> exits(const Built& b, const AugmentationResult& r, Edge e) {
    int na = 0, nb = 0;
    for (const WhiteCorner& w : b.whites[e]) {
        const Vertex hw = r.vertex_map[w.w];
        std::array<Dart, 2> img{};
        for (int i = 0; i < 2; ++i) {
            Dart d = 2 * r.edge_map[edge_of(w.darts[i])];
            img[i] = r.h.origin(d) == hw ? d : twin(d);
        }
        const auto& rot = r.h_embedding.rotation[hw];
        auto it = std::find_if(rot.begin(), rot.end(), [&](Dart d) { return d != img[0] && d != img[1]; });
        if (it == rot.end()) throw std::logic_error("white vertex gained no edge");
        Dart succ = std::next(it) == rot.end() ? rot.front() : *std::next(it);
        Side s = w.before[succ == img[0] ? 0 : 1];
        if (s == Side::A) ++na;
        if (s == Side::B) ++nb;
    }
    return {na, nb};
}

std::optional<AugmentationResult> closed_check(const ClosedUv& c, const Entry* closer) {
    std::vector<const Entry*> slot(c.graph.m(), nullptr);
    slot[c.closing] = closer;
    Built b = expand(c.graph, c.embedding.rotation, slot);
    for (Vertex x : {c.u(), c.v()})
        if (b.g.degree(x) == 2) modify(b, x);
    return solve(b);
}

// Skeleton of a node as a graph on local ids with a fixed rotation system.
struct Frame {
    MultiGraph sk;
    std::vector<std::vector<Dart>> rot;
    std::vector<Vertex> vertex;  // local -> graph id
    std::unordered_map<Vertex, int> local;
};

Frame make_frame(const SpqrTree& t, int i) {
    const SpqrNode& nd = t.nodes[i];
    Frame f;
    auto id = [&](Vertex x) {
        auto [it, fresh] = f.local.emplace(x, static_cast<int>(f.vertex.size()));
        if (fresh) f.vertex.push_back(x);
        return it->second;
    };
    std::vector<std::pair<int, int>> ends;
    for (const auto& e : nd.skeleton) ends.push_back({id(e.u), id(e.v)});
    f.sk = MultiGraph(static_cast<int>(f.vertex.size()));
    for (auto [a, b] : ends) f.sk.add_edge(a, b);
    f.rot.resize(f.sk.n());
    if (nd.kind == NodeKind::R) {
        auto emb = planar_embedding(f.sk);
        if (!emb) throw PlanarityError("graph is not planar");
        f.rot = emb->rotation;
    } else if (nd.kind == NodeKind::P) {
        for (Edge e = 0; e < f.sk.m(); ++e) f.rot[0].push_back(f.sk.dart_from(e, 0));
        for (Edge e = f.sk.m(); e-- > 0;) f.rot[1].push_back(f.sk.dart_from(e, 1));
    } else {
        for (Vertex x = 0; x < f.sk.n(); ++x) f.rot[x] = f.sk.darts(x);
    }
    return f;
}

void mirror(Frame& f) {
    for (auto& r : f.rot) std::reverse(r.begin(), r.end());
}

// Frame for node i with gadgets for its children and closer in the parent slot, modified.
Built build_node(const MultiGraph& g, const SpqrTree& t, int i, const Frame& f, const std::vector<LabelSet>& sets,
                 const Entry* closer, bool root_child) {
    const SpqrNode& nd = t.nodes[i];
    std::vector<const Entry*> slot(nd.skeleton.size(), nullptr);
    for (int j = 0; j < static_cast<int>(nd.skeleton.size()); ++j) {
        if (j == nd.parent_edge) {
            slot[j] = closer;
            continue;
        }
        int c = nd.skeleton[j].link;
        if (t.nodes[c].kind == NodeKind::Q) continue;
        if (sets[c].empty()) throw EmptySet("child " + std::to_string(c) + " has an empty label set");
        slot[j] = &entry_for(sets[c]);
    }
    Built b = expand(f.sk, f.rot, slot);
    for (Vertex x = 0; x < f.sk.n(); ++x) {
        const Vertex gx = f.vertex[x];
        const bool pole = gx == nd.pole_u || gx == nd.pole_v;
        if (b.g.degree(x) == 2 && (g.degree(gx) == 3 || (pole && !root_child))) modify(b, x);
    }
    return b;
}

LabelSet node_set(const MultiGraph& g, const SpqrTree& t, int i, const Frame& f, const std::vector<LabelSet>& sets) {
    auto run = [&](const Entry* closer) { return solve(build_node(g, t, i, f, sets, closer, false)).has_value(); };
    return LabelSet::from_checks(run(nullptr), run(&entry_for(LabelSet::of({"01", "10"}))),
                                 run(&entry_for(LabelSet::of({"11"}))), LabelKind::variable);
}

}  // namespace

const Gadget& gadget_for(const LabelSet& set) { return entry_for(set).gadget; }

const Gadget& oriented_gadget(int a, int b) {
    if (a == b || a < 0 || a > 1 || b < 0 || b > 1) throw PreconditionViolated("oriented gadgets exist for 01 and 10");
    return library().oriented[2 * a + b].gadget;
}

bool has_label(const ClosedUv& g, int a, int b) { return closed_check(g, closer_for(a, b)).has_value(); }

LabelCheck label_check_embedded(const ClosedUv& g) {
    LabelCheck c;
    c.has00 = has_label(g, 0, 0);
    c.has01_or_10 = closed_check(g, &entry_for(LabelSet::of({"01", "10"}))).has_value();
    c.has11 = has_label(g, 1, 1);
    return c;
}

LabelCheck label_check_embedded(const UvGraph& g) { return label_check_embedded(close_uv(g)); }

LabelSet embedded_label_set(const ClosedUv& g) {
    LabelSet s;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (has_label(g, a, b)) s.insert(a, b);
    return s;
}

LabelSet variable_label_set(const UvGraph& g) {
    MultiGraph closed = g.graph;
    Edge c = closed.add_edge(g.u, g.v);
    LabelSet out;
    out.kind = LabelKind::variable;
    enumerate_embeddings(closed, {}, [&](const Embedding& e) {
        ClosedUv cu{closed, e, c};
        out.bits |= embedded_label_set(cu).bits;
    });
    return out;
}

LabelSet dp_node_label_set(const MultiGraph& g, const SpqrTree& t, int node, const std::vector<LabelSet>& sets) {
    if (node < 0 || node >= static_cast<int>(t.nodes.size())) throw PreconditionViolated("node out of range");
    if (t.nodes[node].kind == NodeKind::Q) return LabelSet::of({"00"});
    if (node == t.root) throw RootHasNoParent("the root has no label set");
    return node_set(g, t, node, make_frame(t, node), sets);
}

VariableTrace trace_2con_variable(const MultiGraph& g, Edge root_edge) {
    VariableTrace tr;
    tr.tree = build_spqr(g, root_edge);
    const SpqrTree& t = tr.tree;
    const int count = static_cast<int>(t.nodes.size());
    tr.sets.assign(count, LabelSet::of({"00"}));

    if (std::all_of(t.nodes.begin(), t.nodes.end(), [](const SpqrNode& nd) { return nd.kind == NodeKind::Q; })) {
        auto e = planar_embedding(g);
        if (augment_2con_fixed_multi(g, *e)) {
            tr.feasible = true;
            tr.embedding = *e;
        }
        return tr;
    }

    const int top = t.nodes[t.root].children.at(0);
    std::vector<Frame> frames(count);
    for (int i = count; i-- > 0;) {
        if (t.nodes[i].kind == NodeKind::Q) continue;
        frames[i] = make_frame(t, i);
        tr.sets[i] = node_set(g, t, i, frames[i], tr.sets);
        if (tr.sets[i].empty() && i != top) return tr;
    }

    // Solve every node top-down; each child must realize what its gadget did in the parent.
    const Entry* plain = &entry_for(LabelSet::of({"00"}));
    std::vector<std::pair<int, int>> want(count, {0, 0});
    std::vector<int> order{top};
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int i = order[k];
        const SpqrNode& nd = t.nodes[i];
        const bool is_top = i == top;
        const Entry* closer = is_top ? plain : closer_for(want[i].first, want[i].second);
        Built b = build_node(g, t, i, frames[i], tr.sets, closer, is_top);
        auto r = solve(b);
        // One orientation may realize only 01 where the other realizes only 10.
        if (!r) {
            mirror(frames[i]);
            b = build_node(g, t, i, frames[i], tr.sets, closer, is_top);
            r = solve(b);
        }
        if (!r) {
            if (is_top) return tr;
            throw std::logic_error("node " + std::to_string(i) + " cannot realize its required label");
        }
        for (int j = 0; j < static_cast<int>(nd.skeleton.size()); ++j) {
            if (j == nd.parent_edge) continue;
            const int c = nd.skeleton[j].link;
            if (t.nodes[c].kind == NodeKind::Q) continue;
            auto [a, bb] = exits(b, *r, j);
            const SkeletonEdge& up = t.nodes[c].skeleton[t.nodes[c].parent_edge];
            want[c] = up.u == nd.skeleton[j].u ? std::pair{a, bb} : std::pair{bb, a};
            order.push_back(c);
        }
    }

    // Compose the rotation of g from the frames, gadgets replaced by their nodes.
    std::vector<std::vector<Dart>> rot(g.n());
    auto emit = [&](auto&& self, int i, Vertex gx, int skip, std::vector<Dart>& out) -> void {
        const SpqrNode& nd = t.nodes[i];
        const Frame& f = frames[i];
        const auto& r = f.rot[f.local.at(gx)];
        std::size_t start = 0;
        if (skip != kNone)
            while (edge_of(r[start]) != skip) ++start;
        for (std::size_t k = 1; k <= r.size(); ++k) {
            const int j = edge_of(r[(start + k) % r.size()]);
            if (j == skip) continue;
            if (j == nd.parent_edge) {
                out.push_back(g.dart_from(t.root_edge, gx));
                continue;
            }
            const int c = nd.skeleton[j].link;
            if (t.nodes[c].kind == NodeKind::Q)
                out.push_back(g.dart_from(t.nodes[c].skeleton[0].real, gx));
            else
                self(self, c, gx, t.nodes[c].parent_edge, out);
        }
    };
    std::vector<char> done(g.n(), 0);
    for (int i : order)
        for (Vertex gx : frames[i].vertex)
            if (!done[gx]) {
                done[gx] = 1;
                emit(emit, i, gx, kNone, rot[gx]);
            }
    Embedding e = connected_embedding(g, std::move(rot), 0);
    if (!augment_2con_fixed_multi(g, e)) throw std::logic_error("composed embedding admits no augmentation");
    tr.feasible = true;
    tr.embedding = std::move(e);
    return tr;
}

std::optional<AugmentationResult> augment_2con_variable_biconnected(const MultiGraph& g) {
    VariableTrace tr = trace_2con_variable(g, 0);
    if (!tr.feasible) return std::nullopt;
    return augment_2con_fixed_multi(g, *tr.embedding);
}

namespace {

struct Assembly {
    MultiGraph h;
    std::vector<std::vector<Dart>> rot;
    std::vector<char> original;  // per h edge: image of an input edge
    std::vector<Vertex> vertex_map;
    std::vector<Edge> edge_map;
};

Vertex append(Assembly& as, const MultiGraph& x, const std::vector<std::vector<Dart>>& xrot, Edge* eoff) {
    Vertex off = append_graph(as.h, x, eoff);
    as.rot.resize(as.h.n());
    for (Vertex v = 0; v < x.n(); ++v)
        for (Dart d : xrot[v]) as.rot[off + v].push_back(d + 2 * *eoff);
    as.original.resize(as.h.m(), 0);
    return off;
}

// Swaps the far ends of u-a and v-b into u-v and a-b; keeps planarity across two components.
Edge swap_join(Assembly& as, Dart du, Dart dv) {
    const Dart da = twin(du);
    const Vertex a = as.h.origin(da), v = as.h.origin(dv);
    as.h.reattach(da, v);
    as.h.reattach(dv, a);
    std::replace(as.rot[v].begin(), as.rot[v].end(), dv, da);
    std::replace(as.rot[a].begin(), as.rot[a].end(), da, dv);
    return edge_of(du);
}

Dart new_dart_at(const Assembly& as, Vertex x) {
    for (Dart d : as.rot[x])
        if (!as.original[edge_of(d)]) return d;
    throw std::logic_error("no new edge at vertex " + std::to_string(x));
}

// Joins the components of as, one new edge each, through a K4 with a subdivided edge.
void join_components(Assembly& as) {
    int count = 0;
    auto comp = connected_components(as.h, &count);
    if (count < 2) return;
    std::vector<Dart> pick(count, kNone);
    for (Edge e = 0; e < as.h.m(); ++e)
        if (!as.original[e] && pick[comp[as.h.origin(2 * e)]] == kNone) pick[comp[as.h.origin(2 * e)]] = 2 * e;
    EmbeddedGadget hub = k4_chain_embedded(2 * count);
    Embedding he = hub.embedding;
    FaceStructure fs = faces_of(hub.graph, he);
    const int outer = fs.face_of_dart[he.placements.front().outer];
    auto corner = [&](Vertex p) {
        for (Dart d : he.rotation[p])
            if (fs.face_of_dart[d] == outer) return rotate_prev(he, hub.graph, d);
        throw std::logic_error("port off the outer face");
    };
    std::vector<Dart> after(hub.ports.size());
    for (std::size_t k = 0; k < hub.ports.size(); ++k) after[k] = corner(hub.ports[k]);
    std::vector<Edge> temp;
    for (int k = 0; k < count; ++k)
        temp.push_back(insert_edge(hub.graph, he, hub.ports[2 * k], after[2 * k], hub.ports[2 * k + 1], after[2 * k + 1]));
    Edge eoff = 0;
    append(as, hub.graph, he.rotation, &eoff);
    for (int k = 0; k < count; ++k) swap_join(as, 2 * (temp[k] + eoff), pick[k]);
}

AugmentationResult finish(Assembly& as) {
    AugmentationResult r;
    r.h_embedding = connected_embedding(as.h, std::move(as.rot), 0);
    r.h = std::move(as.h);
    r.vertex_map = std::move(as.vertex_map);
    r.edge_map = std::move(as.edge_map);
    return r;
}

void check_input(const MultiGraph& g) {
    if (g.n() == 0) throw PreconditionViolated("empty graph");
    if (g.max_degree() > 3) throw PreconditionViolated("maximum degree above 3");
    if (!planar_embedding(g)) throw PlanarityError("graph is not planar");
}

// Vertex and edge lists per connected component.
std::vector<std::pair<std::vector<Vertex>, std::vector<Edge>>> split(const MultiGraph& g, const std::vector<int>& comp,
                                                                     int count) {
    std::vector<std::pair<std::vector<Vertex>, std::vector<Edge>>> out(count);
    for (Vertex v = 0; v < g.n(); ++v) out[comp[v]].first.push_back(v);
    for (Edge e = 0; e < g.m(); ++e) out[comp[g.origin(2 * e)]].second.push_back(e);
    return out;
}

bool some_cubic_component(const MultiGraph& g, const std::vector<int>& comp, int count) {
    std::vector<char> full(count, 1);
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) != 3) full[comp[v]] = 0;
    return std::find(full.begin(), full.end(), 1) != full.end();
}

}  // namespace

std::optional<AugmentationResult> augment_2con_variable(const MultiGraph& g) {
    check_input(g);
    int count = 0;
    auto comp = connected_components(g, &count);
    if (count > 1 && some_cubic_component(g, comp, count)) return std::nullopt;

    std::vector<Edge> bridges = bridges_of(g);
    MultiGraph rest = remove_edges(g, bridges);
    int pieces = 0;
    auto piece_of = connected_components(rest, &pieces);
    auto parts = split(rest, piece_of, pieces);

    Assembly as;
    as.vertex_map.assign(g.n(), kNone);
    as.edge_map.assign(g.m(), kNone);
    std::vector<char> is_bridge(g.m(), 0);
    for (Edge e : bridges) is_bridge[e] = 1;
    // rest keeps g's vertex ids; its edges are g's non-bridges in order.
    std::vector<Edge> to_g;
    for (Edge e = 0; e < g.m(); ++e)
        if (!is_bridge[e]) to_g.push_back(e);

    for (const auto& [vs, es] : parts) {
        Edge eoff = 0;
        if (es.empty()) {
            MultiGraph k4(4);
            for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})
                k4.add_edge(a, b);
            Vertex off = append(as, k4, planar_embedding(k4)->rotation, &eoff);
            as.vertex_map[vs[0]] = off;
            continue;
        }
        IdMap map;
        MultiGraph piece = induced_on_edges(rest, es, &map);
        auto r = augment_2con_variable_biconnected(piece);
        if (!r) return std::nullopt;
        Vertex off = append(as, r->h, r->h_embedding.rotation, &eoff);
        for (Vertex v : vs) as.vertex_map[v] = off + r->vertex_map[map.vertex[v]];
        for (Edge e : es) {
            Edge he = eoff + r->edge_map[map.edge[e]];
            as.edge_map[to_g[e]] = he;
            as.original[he] = 1;
        }
    }
    for (Edge e : bridges) {
        auto [u, v] = g.ends(e);
        const Vertex hu = as.vertex_map[u], hv = as.vertex_map[v];
        Edge joined = swap_join(as, new_dart_at(as, hu), new_dart_at(as, hv));
        as.original[joined] = 1;
        as.edge_map[e] = joined;
    }
    join_components(as);
    return finish(as);
}

std::optional<AugmentationResult> augment_1con_variable(const MultiGraph& g) {
    check_input(g);
    int count = 0;
    auto comp = connected_components(g, &count);
    if (count > 1 && some_cubic_component(g, comp, count)) return std::nullopt;

    Assembly as;
    as.vertex_map.assign(g.n(), kNone);
    as.edge_map.assign(g.m(), kNone);
    for (const auto& [vs, es] : split(g, comp, count)) {
        IdMap map;
        std::vector<char> keep(g.n(), 0);
        for (Vertex v : vs) keep[v] = 1;
        std::vector<Vertex> drop;
        for (Vertex v = 0; v < g.n(); ++v)
            if (!keep[v]) drop.push_back(v);
        MultiGraph c = remove_vertices(g, drop, &map);
        Embedding e = *planar_embedding(c);
        complete_with_gadgets(c, e);
        Edge eoff = 0;
        Vertex off = append(as, c, e.rotation, &eoff);
        for (Vertex v : vs) as.vertex_map[v] = off + map.vertex[v];
        for (Edge x : es) {
            as.edge_map[x] = eoff + map.edge[x];
            as.original[eoff + map.edge[x]] = 1;
        }
    }
    join_components(as);
    return finish(as);
}

}  // namespace cubaug
