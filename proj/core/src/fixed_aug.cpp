#include "cubaug/fixed_aug.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "cubaug/error.hpp"

namespace cubaug {

namespace {

DegreeSet range(int lo, int hi) {
    DegreeSet b;
    for (int x = lo; x <= hi; ++x) b.push_back(x);
    return b;
}

// Puts d into v's rotation just before y, which opens the corner; at the end if y is kNone.
void attach(std::vector<std::vector<Dart>>& rot, Vertex v, Dart y, Dart d) {
    auto& r = rot[v];
    if (y == kNone) {
        r.push_back(d);
        return;
    }
    auto it = std::find(r.begin(), r.end(), y);
    if (it == r.end()) throw InvalidRotation("corner dart " + std::to_string(y) + " not at vertex " + std::to_string(v));
    r.insert(it, d);
}

// A dart on the global outer face of e, if any component there has edges.
Dart outer_dart(const Embedding& e) {
    for (const auto& p : e.placements)
        if (p.container == kNone && p.outer != kNone) return p.outer;
    return kNone;
}

void check_result(const MultiGraph& h, const Embedding& emb) {
    int count = 0;
    connected_components(h, &count);
    if (h.n() > 0 && (h.min_degree() != 3 || h.max_degree() != 3))
        throw std::logic_error("reconstruction left a vertex with degree other than 3");
    if (count > 1) throw std::logic_error("reconstruction left the graph disconnected");
    if (!validate_planarity(h, emb)) throw std::logic_error("reconstruction broke planarity");
}

AugmentationInstance finish_instance(MultiGraph a, std::vector<DegreeSet> sets, int sinks, std::vector<Vertex> vertex,
                                     std::vector<int> face, int k) {
    AugmentationInstance inst;
    inst.sinks = sinks;
    inst.vertex = std::move(vertex);
    inst.face = std::move(face);
    inst.k = k;
    inst.graph = a;
    bool empty = std::any_of(sets.begin(), sets.end(), [](const DegreeSet& b) { return b.empty(); });
    if (!empty) inst.factor = BFactorInstance(std::move(a), std::move(sets));
    return inst;
}


}  // namespace

MinDegree2 preprocess_min_degree_2(const MultiGraph& g, const Embedding& e) {
    MinDegree2 r;
    r.graph = g;
    r.embedding = e;
    MultiGraph& h = r.graph;
    auto& rot = r.embedding.rotation;
    rot.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        const int d = g.degree(v);
        if (d >= 2) continue;
        Vertex a = h.add_vertex(Tag::added), b = h.add_vertex(Tag::added);
        Edge x1 = h.add_edge(v, a), x2 = h.add_edge(a, b), x3 = h.add_edge(b, v);
        rot.resize(h.n());
        rot[a] = {2 * x1 + 1, 2 * x2};
        rot[b] = {2 * x2 + 1, 2 * x3};
        if (d == 0) {
            rot[v] = {2 * x1, 2 * x3 + 1};
            for (auto& p : r.embedding.placements)
                if (p.rep == v) p.outer = 2 * x1;
        } else {
            rot[v] = {rot[v][0], 2 * x1, 2 * x3 + 1};
        }
        r.triangles.push_back({v, a, b});
    }
    return r;
}

std::vector<int> FaceClassification::blocks_of(int face, BlockKind kind) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(blocks.size()); ++i)
        if (blocks[i].face == face && blocks[i].kind == kind) out.push_back(i);
    return out;
}

FaceClassification classify_faces(const MultiGraph& g, const Embedding& e) {
    FaceClassification cls;
    cls.faces = faces_of(g, e);
    const auto& fs = cls.faces;
    std::vector<char> bridge(g.m(), 0);
    for (Edge x : bridges_of(g)) bridge[x] = 1;
    std::vector<std::vector<Vertex>> isolated(fs.faces.size());
    for (Vertex v = 0; v < g.n(); ++v)
        if (fs.face_of_vertex[v] != kNone) isolated[fs.face_of_vertex[v]].push_back(v);

    for (const Face& f : fs.faces) {
        std::vector<Edge> edges;
        bool has_bridge = false;
        for (const auto& w : f.walks)
            for (Dart d : w) {
                edges.push_back(edge_of(d));
                has_bridge = has_bridge || bridge[edge_of(d)];
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        const bool comp = f.walks.size() + isolated[f.id].size() >= 2;
        const bool conn = comp || has_bridge;
        (conn ? cls.connecting_faces : cls.normal_faces).push_back(f.id);
        if (!conn) continue;
        if (comp) cls.component_connecting_faces.push_back(f.id);

        IdMap map;
        MultiGraph sub = induced_on_edges(g, edges, &map);
        std::vector<Vertex> back_v(sub.n());
        std::vector<Edge> back_e(sub.m());
        for (Vertex v = 0; v < g.n(); ++v)
            if (map.vertex[v] != kNone) back_v[map.vertex[v]] = v;
        for (Edge x = 0; x < g.m(); ++x)
            if (map.edge[x] != kNone) back_e[map.edge[x]] = x;

        auto rep = analyze_connectivity(sub);
        std::vector<char> cut(sub.n(), 0);
        for (Vertex c : rep.cut_vertices) cut[c] = 1;
        for (const auto& blk : rep.blocks) {
            FacePiece p;
            p.face = f.id;
            int cuts = 0;
            for (Edge x : blk) {
                p.edges.push_back(back_e[x]);
                auto [u, v] = sub.ends(x);
                p.vertices.push_back(u);
                p.vertices.push_back(v);
            }
            std::sort(p.vertices.begin(), p.vertices.end());
            p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());
            for (Vertex& v : p.vertices) {
                cuts += cut[v];
                v = back_v[v];
            }
            std::sort(p.edges.begin(), p.edges.end());
            std::sort(p.vertices.begin(), p.vertices.end());
            p.kind = cuts == 0 ? BlockKind::singleton : cuts == 1 ? BlockKind::leaf : BlockKind::inner;
            cls.blocks.push_back(std::move(p));
        }
        for (Vertex v : isolated[f.id]) cls.blocks.push_back({f.id, BlockKind::singleton, {}, {v}});

        if (!comp) continue;
        std::vector<FacePiece> parts(rep.component_count);
        for (auto& p : parts) p.face = f.id;
        for (Vertex v = 0; v < sub.n(); ++v) parts[rep.component_of[v]].vertices.push_back(back_v[v]);
        for (Edge x = 0; x < sub.m(); ++x) parts[rep.component_of[sub.ends(x).first]].edges.push_back(back_e[x]);
        for (Vertex v : isolated[f.id]) parts.push_back({f.id, BlockKind::singleton, {}, {v}});
        for (auto& p : parts) {
            std::sort(p.vertices.begin(), p.vertices.end());
            std::sort(p.edges.begin(), p.edges.end());
        }
        std::sort(parts.begin(), parts.end(),
                  [](const FacePiece& a, const FacePiece& b) { return a.vertices.front() < b.vertices.front(); });
        for (auto& p : parts) cls.components.push_back(std::move(p));
    }
    return cls;
}

AugmentationInstance build_2con_instance(const MultiGraph& g, const Embedding&, const FaceClassification& cls) {
    if (g.n() > 0 && (g.min_degree() < 2 || g.max_degree() > 3))
        throw PreconditionViolated("degrees must lie in [2, 3]");
    const auto& fs = cls.faces;
    std::vector<int> sink(g.n(), kNone);
    std::vector<Vertex> vertex;
    std::vector<int> face;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 2) {
            sink[v] = static_cast<int>(vertex.size());
            vertex.push_back(v);
            face.push_back(kNone);
        }
    const int sinks = static_cast<int>(vertex.size());
    std::vector<std::vector<Vertex>> members;
    std::vector<int> kind;  // -1 for a normal face
    for (int f : cls.normal_faces) {
        std::vector<Vertex> vs = fs.faces[f].incident_vertices;
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        members.push_back(vs);
        kind.push_back(-1);
        vertex.push_back(kNone);
        face.push_back(f);
    }
    for (const auto& b : cls.blocks) {
        members.push_back(b.vertices);
        kind.push_back(static_cast<int>(b.kind));
        vertex.push_back(kNone);
        face.push_back(b.face);
    }
    MultiGraph a(static_cast<int>(vertex.size()));
    std::vector<DegreeSet> sets(a.n(), DegreeSet{1});
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Vertex x = sinks + static_cast<int>(i);
        for (Vertex v : members[i])
            if (sink[v] != kNone) a.add_edge(sink[v], x);
        const int d = a.degree(x);
        switch (kind[i]) {
            case -1:
                sets[x] = range(2, d);
                sets[x].insert(sets[x].begin(), 0);
                break;
            case static_cast<int>(BlockKind::inner):
                sets[x] = range(0, d);
                break;
            case static_cast<int>(BlockKind::leaf):
                sets[x] = range(1, d);
                break;
            default:
                sets[x] = range(2, d);
        }
    }
    if (a.m() > 8 * g.n()) throw std::logic_error("factor instance exceeds 8n edges");
    return finish_instance(std::move(a), std::move(sets), sinks, std::move(vertex), std::move(face), 2);
}

AugmentationInstance build_1con_instance(const MultiGraph& g, const Embedding&, const FaceClassification& cls) {
    if (g.n() > 0 && g.max_degree() > 3) throw PreconditionViolated("maximum degree above 3");
    std::vector<int> sink(g.n(), kNone);
    std::vector<Vertex> vertex;
    std::vector<int> face;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) <= 2) {
            sink[v] = static_cast<int>(vertex.size());
            vertex.push_back(v);
            face.push_back(kNone);
        }
    const int sinks = static_cast<int>(vertex.size());
    for (const auto& c : cls.components) {
        vertex.push_back(kNone);
        face.push_back(c.face);
    }
    MultiGraph a(static_cast<int>(vertex.size()));
    for (std::size_t i = 0; i < cls.components.size(); ++i)
        for (Vertex v : cls.components[i].vertices)
            if (sink[v] != kNone) a.add_edge(sink[v], sinks + static_cast<int>(i));
    std::vector<DegreeSet> sets(a.n());
    for (int s = 0; s < sinks; ++s) sets[s] = range(0, std::min(3 - g.degree(vertex[s]), a.degree(s)));
    for (Vertex x = sinks; x < a.n(); ++x) sets[x] = range(1, a.degree(x));
    if (a.m() > 2 * g.n()) throw std::logic_error("factor instance exceeds 2n edges");
    return finish_instance(std::move(a), std::move(sets), sinks, std::move(vertex), std::move(face), 1);
}

void complete_with_gadgets(MultiGraph& h, Embedding& emb) {
    const EmbeddedGadget k4 = k4_chain_embedded(1);
    const Vertex port = k4.ports.front();
    Dart opening = k4.embedding.placements.front().outer;
    while (k4.graph.origin(opening) != port) opening = face_next(k4.embedding, k4.graph, opening);

    auto& rot = emb.rotation;
    const Vertex n = h.n();
    for (Vertex v = 0; v < n; ++v)
        while (h.degree(v) < 3) {
            Edge eoff = 0;
            const Vertex off = append_graph(h, k4.graph, &eoff);
            rot.resize(h.n());
            for (Vertex x = 0; x < k4.graph.n(); ++x) {
                h.set_tag(off + x, Tag::gadget);
                for (Dart d : k4.embedding.rotation[x]) rot[off + x].push_back(d + 2 * eoff);
            }
            Edge link = h.add_edge(v, off + port);
            attach(rot, v, kNone, 2 * link);
            attach(rot, off + port, opening + 2 * eoff, 2 * link + 1);
        }
}

AugmentationResult reconstruct_h(const MultiGraph& g, const Embedding& e, const FaceClassification& cls,
                                 const AugmentationInstance& inst, const BFactorSolution& solution) {
    if (!inst.factor || !is_valid_factor(*inst.factor, solution))
        throw InvalidSolution("solution does not satisfy the degree sets");
    const auto& fs = cls.faces;
    const MultiGraph& a = inst.graph;

    std::map<int, std::vector<Vertex>> wanted;
    for (Edge x : solution.chosen_edges) {
        auto [s, node] = a.ends(x);
        if (s >= inst.sinks) std::swap(s, node);
        wanted[inst.face[node]].push_back(inst.vertex[s]);
    }

    MultiGraph h = g;
    std::vector<std::vector<Dart>> rot = e.rotation;
    rot.resize(g.n());
    std::vector<Vertex> hubs;
    std::vector<Edge> direct;
    for (auto& [f, vs] : wanted) {
        std::sort(vs.begin(), vs.end());
        std::vector<char> done(vs.size(), 0);
        auto claim = [&](Vertex v) {
            auto it = std::lower_bound(vs.begin(), vs.end(), v);
            if (it == vs.end() || *it != v || done[it - vs.begin()]) return false;
            done[it - vs.begin()] = 1;
            return true;
        };
        // Corners grouped by boundary walk, in walk order.
        std::vector<std::vector<std::pair<Vertex, Dart>>> groups;
        for (const auto& w : fs.faces[f].walks) {
            groups.emplace_back();
            for (Dart y : w)
                if (claim(g.origin(y))) groups.back().push_back({g.origin(y), y});
        }
        for (Vertex v : vs)
            if (claim(v)) groups.push_back({{v, kNone}});
        int k = 0;
        for (const auto& grp : groups) k += static_cast<int>(grp.size());
        if (k != static_cast<int>(vs.size())) throw InvalidSolution("attachment vertex not on face " + std::to_string(f));

        if (inst.k == 2 && k == 2) {
            std::vector<std::pair<Vertex, Dart>> ends;
            for (const auto& grp : groups) ends.insert(ends.end(), grp.begin(), grp.end());
            Edge x = h.add_edge(ends[0].first, ends[1].first);
            attach(rot, ends[0].first, ends[0].second, 2 * x);
            attach(rot, ends[1].first, ends[1].second, 2 * x + 1);
            direct.push_back(x);
            continue;
        }
        const Vertex hub = h.add_vertex(Tag::added);
        rot.resize(h.n());
        hubs.push_back(hub);
        // Seen from inside the face every boundary walk runs counterclockwise.
        for (const auto& grp : groups) {
            std::vector<Dart> spokes;
            for (auto [v, y] : grp) {
                Edge x = h.add_edge(hub, v);
                attach(rot, v, y, 2 * x + 1);
                spokes.push_back(2 * x);
            }
            rot[hub].insert(rot[hub].end(), spokes.rbegin(), spokes.rend());
        }
    }

    Embedding emb;
    emb.rotation = std::move(rot);
    for (Edge x : direct) {
        auto p = parallel_edge_gadget(h, emb, x);
        h = std::move(p.gadget.graph);
        emb = std::move(p.embedding);
    }
    for (Vertex hub : hubs)
        if (h.degree(hub) > 3) {
            auto w = wheel_extension(h, emb, hub);
            h = std::move(w.wheel.graph);
            emb = std::move(w.embedding);
        }
    if (inst.k == 1) complete_with_gadgets(h, emb);

    Dart outer = outer_dart(e);
    if (outer == kNone && h.m() > 0) outer = 0;
    AugmentationResult r;
    r.h_embedding = connected_embedding(h, std::move(emb.rotation), outer);
    r.h = std::move(h);
    check_result(r.h, r.h_embedding);
    for (Vertex v = 0; v < g.n(); ++v) r.vertex_map.push_back(v);
    for (Edge x = 0; x < g.m(); ++x) r.edge_map.push_back(x);
    return r;
}

std::optional<AugmentationResult> augment_2con_fixed(const MultiGraph& g, const Embedding& e) {
    if (g.n() == 0) throw PreconditionViolated("empty graph");
    if (g.max_degree() > 3) throw PreconditionViolated("maximum degree above 3");
    if (!g.is_simple()) throw PreconditionViolated("parallel edges; use augment_2con_fixed_multi");
    MinDegree2 pre = preprocess_min_degree_2(g, e);
    FaceClassification cls = classify_faces(pre.graph, pre.embedding);
    AugmentationInstance inst = build_2con_instance(pre.graph, pre.embedding, cls);
    if (!inst.factor) return std::nullopt;
    auto sol = solve(*inst.factor);
    if (!sol) return std::nullopt;
    AugmentationResult r = reconstruct_h(pre.graph, pre.embedding, cls, inst, *sol);
    r.vertex_map.resize(g.n());
    r.edge_map.resize(g.m());
    return r;
}

std::optional<AugmentationResult> augment_2con_fixed_multi(const MultiGraph& g, const Embedding& e) {
    if (g.is_simple()) return augment_2con_fixed(g, e);
    if (g.max_degree() > 3) throw PreconditionViolated("maximum degree above 3");
    MultiGraph s = g;
    Embedding se = e;
    std::vector<ParallelEdgeGadget> gadgets;
    std::map<std::pair<Vertex, Vertex>, int> seen;
    for (Edge x = 0; x < g.m(); ++x) {
        auto [u, v] = g.ends(x);
        if (seen[{std::min(u, v), std::max(u, v)}]++ == 0) continue;
        auto p = parallel_edge_gadget(s, se, x);
        s = p.gadget.graph;
        se = std::move(p.embedding);
        gadgets.push_back(std::move(p.gadget));
    }
    auto r = augment_2con_fixed(s, se);
    if (!r) return std::nullopt;

    // Fold every gadget back into the edge it replaced.
    MultiGraph& h = r->h;
    auto& rot = r->h_embedding.rotation;
    std::vector<Vertex> drop;
    for (Edge x = 0; x < g.m(); ++x) {
        auto it = std::find_if(gadgets.begin(), gadgets.end(), [&](const ParallelEdgeGadget& p) {
            return p.graph.ends(x).second == p.a;
        });
        if (it == gadgets.end()) continue;
        const Vertex v = g.ends(x).second;
        h.reattach(2 * x + 1, v);
        std::replace(rot[v].begin(), rot[v].end(), 2 * it->new_edge + 1, 2 * x + 1);
        drop.insert(drop.end(), it->added.begin(), it->added.end());
    }
    IdMap map;
    MultiGraph folded = remove_vertices(h, drop, &map);
    AugmentationResult out;
    out.h_embedding = connected_embedding(folded, remap_rotation(r->h_embedding, map, folded.n()),
                                          2 * map.edge[edge_of(r->h_embedding.placements.front().outer)] +
                                              (r->h_embedding.placements.front().outer & 1));
    out.h = std::move(folded);
    for (Vertex v = 0; v < g.n(); ++v) out.vertex_map.push_back(map.vertex[v]);
    for (Edge x = 0; x < g.m(); ++x) out.edge_map.push_back(map.edge[x]);
    check_result(out.h, out.h_embedding);
    return out;
}

std::optional<AugmentationResult> augment_1con_fixed(const MultiGraph& g, const Embedding& e) {
    if (g.n() == 0) throw PreconditionViolated("empty graph");
    FaceClassification cls = classify_faces(g, e);
    AugmentationInstance inst = build_1con_instance(g, e, cls);
    if (!inst.factor) return std::nullopt;
    auto sol = solve(*inst.factor);
    if (!sol) return std::nullopt;
    return reconstruct_h(g, e, cls, inst, *sol);
}

}  // namespace cubaug
