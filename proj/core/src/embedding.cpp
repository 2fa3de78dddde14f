#include "cubaug/embedding.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "cubaug/error.hpp"

namespace cubaug {

namespace {

int index_in(const std::vector<Dart>& r, Dart d) {
    auto it = std::find(r.begin(), r.end(), d);
    return it == r.end() ? kNone : static_cast<int>(it - r.begin());
}

// Components numbered by increasing smallest vertex.
std::vector<int> ordered_components(const MultiGraph& g, int& count) {
    std::vector<int> comp = connected_components(g, &count);
    std::vector<int> rep(count, g.n());
    for (Vertex v = 0; v < g.n(); ++v) rep[comp[v]] = std::min(rep[comp[v]], v);
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rep[a] < rep[b]; });
    std::vector<int> rank(count);
    for (int i = 0; i < count; ++i) rank[order[i]] = i;
    for (auto& c : comp) c = rank[c];
    return comp;
}

// next_cw[d]: clockwise successor of d at its origin. Throws on malformed rotations.
std::vector<Dart> successor_table(const MultiGraph& g, const Embedding& e) {
    if (static_cast<int>(e.rotation.size()) != g.n())
        throw InvalidRotation("rotation has " + std::to_string(e.rotation.size()) + " entries for " +
                              std::to_string(g.n()) + " vertices");
    std::vector<Dart> next(g.dart_count(), kNone);
    for (Vertex v = 0; v < g.n(); ++v) {
        const auto& r = e.rotation[v];
        if (static_cast<int>(r.size()) != g.degree(v))
            throw InvalidRotation("rotation at vertex " + std::to_string(v) + " has wrong length");
        for (std::size_t i = 0; i < r.size(); ++i) {
            Dart d = r[i];
            if (d < 0 || d >= g.dart_count() || g.origin(d) != v || next[d] != kNone)
                throw InvalidRotation("rotation at vertex " + std::to_string(v) + " is not a permutation of its darts");
            next[d] = r[(i + 1) % r.size()];
        }
    }
    return next;
}

struct Walks {
    std::vector<int> walk_of;
    std::vector<Dart> start;
    std::vector<std::vector<Dart>> seq;
};

Walks trace_walks(const MultiGraph& g, const std::vector<Dart>& next) {
    Walks w;
    w.walk_of.assign(g.dart_count(), kNone);
    for (Dart d = 0; d < g.dart_count(); ++d) {
        if (w.walk_of[d] != kNone) continue;
        int id = static_cast<int>(w.start.size());
        w.start.push_back(d);
        w.seq.emplace_back();
        Dart x = d;
        do {
            w.walk_of[x] = id;
            w.seq.back().push_back(x);
            x = next[twin(x)];
        } while (x != d);
    }
    return w;
}

}  // namespace

Embedding connected_embedding(const MultiGraph& g, std::vector<std::vector<Dart>> rotation, Dart outer) {
    Embedding e;
    e.rotation = std::move(rotation);
    if (g.n() > 0) e.placements.push_back({0, g.m() == 0 ? kNone : outer, kNone});
    return e;
}

Embedding embedding_with_toplevel(const MultiGraph& g, std::vector<std::vector<Dart>> rotation,
                                  const std::vector<Dart>& outer_darts) {
    int count = 0;
    auto comp = ordered_components(g, count);
    Embedding e;
    e.rotation = std::move(rotation);
    e.placements.resize(count);
    for (Vertex v = g.n() - 1; v >= 0; --v) e.placements[comp[v]].rep = v;
    for (Dart d = g.dart_count() - 1; d >= 0; --d) e.placements[comp[g.origin(d)]].outer = d;
    for (int c = 0; c < count && c < static_cast<int>(outer_darts.size()); ++c)
        if (outer_darts[c] != kNone) e.placements[c].outer = outer_darts[c];
    return e;
}

Dart rotate_next(const Embedding& e, const MultiGraph& g, Dart d) {
    const auto& r = e.rotation[g.origin(d)];
    int i = index_in(r, d);
    if (i == kNone) throw InvalidRotation("dart " + std::to_string(d) + " missing from its rotation");
    return r[(i + 1) % r.size()];
}

Dart rotate_prev(const Embedding& e, const MultiGraph& g, Dart d) {
    const auto& r = e.rotation[g.origin(d)];
    int i = index_in(r, d);
    if (i == kNone) throw InvalidRotation("dart " + std::to_string(d) + " missing from its rotation");
    return r[(i + r.size() - 1) % r.size()];
}

Dart face_next(const Embedding& e, const MultiGraph& g, Dart d) { return rotate_next(e, g, twin(d)); }

FaceStructure faces_of(const MultiGraph& g, const Embedding& e) {
    auto next = successor_table(g, e);
    FaceStructure fs;
    int count = 0;
    fs.component_of = ordered_components(g, count);
    fs.component_count = count;
    const auto& comp = fs.component_of;

    if (static_cast<int>(e.placements.size()) != count)
        throw InvalidRotation("expected " + std::to_string(count) + " placements, got " +
                              std::to_string(e.placements.size()));
    std::vector<bool> has_edges(count, false);
    for (Dart d = 0; d < g.dart_count(); ++d) has_edges[comp[g.origin(d)]] = true;
    for (int c = 0; c < count; ++c) {
        const auto& p = e.placements[c];
        if (p.rep < 0 || p.rep >= g.n() || comp[p.rep] != c)
            throw InvalidRotation("placement " + std::to_string(c) + " has a bad representative");
        if (has_edges[c]) {
            if (p.outer < 0 || p.outer >= g.dart_count() || comp[g.origin(p.outer)] != c)
                throw InvalidRotation("placement " + std::to_string(c) + " has a bad outer dart");
        } else if (p.outer != kNone) {
            throw InvalidRotation("isolated vertex " + std::to_string(p.rep) + " cannot have an outer dart");
        }
        if (p.container != kNone &&
            (p.container < 0 || p.container >= g.dart_count() || comp[g.origin(p.container)] == c))
            throw InvalidNesting("placement " + std::to_string(c) + " has a bad container");
    }

    Walks w = trace_walks(g, next);
    const int nw = static_cast<int>(w.start.size());
    std::vector<bool> is_outer(nw, false);
    for (int c = 0; c < count; ++c)
        if (e.placements[c].outer != kNone) is_outer[w.walk_of[e.placements[c].outer]] = true;

    std::vector<int> walk_face(nw, kNone);
    int next_face = 1;
    for (int i = 0; i < nw; ++i)
        if (!is_outer[i]) walk_face[i] = next_face++;

    // Face holding component c: 0 = unresolved, 1 = in progress, 2 = done.
    std::vector<int> comp_face(count, kNone), state(count, 0);
    for (int c0 = 0; c0 < count; ++c0) {
        std::vector<int> chain;
        int c = c0;
        int face = kNone;
        while (true) {
            if (state[c] == 2) { face = comp_face[c]; break; }
            if (state[c] == 1) throw InvalidNesting("placements form a containment cycle");
            state[c] = 1;
            chain.push_back(c);
            Dart d = e.placements[c].container;
            if (d == kNone) { face = FaceStructure::outer; break; }
            int wi = w.walk_of[d];
            if (!is_outer[wi]) { face = walk_face[wi]; break; }
            c = comp[g.origin(d)];
        }
        for (int x : chain) {
            comp_face[x] = face;
            state[x] = 2;
        }
    }

    fs.faces.resize(next_face);
    for (int f = 0; f < next_face; ++f) fs.faces[f].id = f;
    fs.walk_start = w.start;
    fs.walk_of_dart = w.walk_of;
    fs.face_of_dart.assign(g.dart_count(), kNone);
    for (int i = 0; i < nw; ++i) {
        int f = is_outer[i] ? comp_face[comp[g.origin(w.start[i])]] : walk_face[i];
        for (Dart d : w.seq[i]) {
            fs.face_of_dart[d] = f;
            fs.faces[f].incident_vertices.push_back(g.origin(d));
        }
        fs.faces[f].walks.push_back(std::move(w.seq[i]));
    }
    fs.face_of_vertex.assign(g.n(), kNone);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) != 0) continue;
        int f = comp_face[comp[v]];
        fs.face_of_vertex[v] = f;
        fs.faces[f].incident_vertices.push_back(v);
    }
    return fs;
}

bool validate_planarity(const MultiGraph& g, const Embedding& e) {
    FaceStructure fs;
    try {
        fs = faces_of(g, e);
    } catch (const InvalidRotation&) {
        return false;
    } catch (const InvalidNesting&) {
        return false;
    }
    std::vector<long> euler(fs.component_count, 0);
    for (Vertex v = 0; v < g.n(); ++v) ++euler[fs.component_of[v]];
    for (Edge x = 0; x < g.m(); ++x) --euler[fs.component_of[g.ends(x).first]];
    for (Dart s : fs.walk_start) ++euler[fs.component_of[g.origin(s)]];
    for (int c = 0; c < fs.component_count; ++c) {
        // An isolated vertex has no walks: 1 - 0 + 0, counted as the single face it sits in.
        bool isolated = g.degree(e.placements[c].rep) == 0;
        if (euler[c] + (isolated ? 1 : 0) != 2) return false;
    }
    return true;
}

Embedding flip(const Embedding& e) {
    Embedding r = e;
    for (auto& rot : r.rotation) std::reverse(rot.begin(), rot.end());
    for (auto& p : r.placements) {
        if (p.outer != kNone) p.outer = twin(p.outer);
        if (p.container != kNone) p.container = twin(p.container);
    }
    return r;
}

Embedding canonical(const MultiGraph& g, const Embedding& e) {
    FaceStructure fs = faces_of(g, e);
    Embedding r = e;
    for (auto& rot : r.rotation)
        if (!rot.empty()) std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
    auto on_outer = [&](Dart d) {
        int c = fs.component_of[g.origin(d)];
        return fs.walk_of_dart[d] == fs.walk_of_dart[e.placements[c].outer];
    };
    for (std::size_t c = 0; c < e.placements.size(); ++c) {
        auto& p = r.placements[c];
        if (p.outer != kNone) p.outer = fs.walk_start[fs.walk_of_dart[p.outer]];
        Dart d = e.placements[c].container;
        while (d != kNone && on_outer(d)) d = e.placements[fs.component_of[g.origin(d)]].container;
        p.container = d == kNone ? kNone : fs.walk_start[fs.walk_of_dart[d]];
    }
    return r;
}

void enumerate_embeddings(const MultiGraph& g, const EnumerateOptions& opt,
                          const std::function<void(const Embedding&)>& yield) {
    if (g.n() > opt.cap)
        throw TooLarge("enumeration capped at " + std::to_string(opt.cap) + " vertices, got " + std::to_string(g.n()));
    int count = 0;
    auto comp = ordered_components(g, count);
    std::vector<std::vector<Vertex>> members(count);
    for (Vertex v = 0; v < g.n(); ++v) members[comp[v]].push_back(v);
    std::vector<int> edges_in(count, 0);
    for (Edge x = 0; x < g.m(); ++x) ++edges_in[comp[g.ends(x).first]];

    // Planar rotation systems per component, with their walk start darts.
    struct Option {
        std::vector<std::vector<Dart>> rot;  // per member vertex
        std::vector<Dart> walks;
    };
    std::vector<std::vector<Option>> options(count);
    for (int c = 0; c < count; ++c) {
        const auto& vs = members[c];
        if (edges_in[c] == 0) {
            options[c].push_back({{{}}, {}});
            continue;
        }
        Embedding tmp;
        tmp.rotation.assign(g.n(), {});
        std::vector<std::vector<Dart>> cur(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) {
            cur[i] = g.darts(vs[i]);
            std::sort(cur[i].begin(), cur[i].end());
        }
        std::vector<Dart> next(g.dart_count(), kNone);
        std::vector<char> seen(g.dart_count(), 0);
        std::vector<Dart> comp_darts;
        for (Vertex v : vs)
            for (Dart d : g.darts(v)) comp_darts.push_back(d);
        std::sort(comp_darts.begin(), comp_darts.end());
        const long target = 2 - static_cast<long>(vs.size()) + edges_in[c];

        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == vs.size()) {
                for (std::size_t k = 0; k < vs.size(); ++k) {
                    const auto& r = cur[k];
                    for (std::size_t j = 0; j < r.size(); ++j) next[r[j]] = r[(j + 1) % r.size()];
                }
                for (Dart d : comp_darts) seen[d] = 0;
                std::vector<Dart> walks;
                for (Dart d : comp_darts) {
                    if (seen[d]) continue;
                    walks.push_back(d);
                    if (static_cast<long>(walks.size()) > target) return;
                    Dart x = d;
                    do {
                        seen[x] = 1;
                        x = next[twin(x)];
                    } while (x != d);
                }
                if (static_cast<long>(walks.size()) == target) options[c].push_back({cur, walks});
                return;
            }
            auto& r = cur[i];
            if (r.size() <= 1) {
                rec(i + 1);
                return;
            }
            std::sort(r.begin() + 1, r.end());
            do {
                rec(i + 1);
            } while (std::next_permutation(r.begin() + 1, r.end()));
        };
        rec(0);
    }

    std::vector<bool> want(g.n(), false);
    for (Vertex v : opt.outer_vertices) {
        if (v < 0 || v >= g.n()) throw PreconditionViolated("outer vertex " + std::to_string(v) + " out of range");
        want[v] = true;
    }

    Embedding emb;
    emb.rotation.assign(g.n(), {});
    emb.placements.resize(count);
    for (int c = 0; c < count; ++c) emb.placements[c].rep = members[c].empty() ? kNone : members[c][0];
    std::vector<int> choice(count, 0);
    std::vector<Dart> outer_of(count, kNone);

    auto emit_nestings = [&]() {
        // Inner walk starts of every component given the chosen outer walks.
        std::vector<Dart> inner;
        std::vector<int> inner_comp;
        for (int c = 0; c < count; ++c)
            for (Dart s : options[c][choice[c]].walks)
                if (s != outer_of[c]) {
                    inner.push_back(s);
                    inner_comp.push_back(c);
                }
        std::vector<int> parent(count, kNone);  // index into inner
        std::function<void(int)> nest = [&](int c) {
            if (c == count) {
                for (int s = 0; s < count; ++s) {
                    int x = s;
                    int steps = 0;
                    while (parent[x] != kNone && steps <= count) {
                        x = inner_comp[parent[x]];
                        ++steps;
                    }
                    if (steps > count) return;
                }
                if (!opt.outer_vertices.empty()) {
                    for (Vertex v = 0; v < g.n(); ++v) {
                        if (!want[v]) continue;
                        int cv = comp[v];
                        if (parent[cv] != kNone) return;
                        if (g.degree(v) == 0) continue;
                        Dart o = outer_of[cv];
                        bool found = false;
                        Dart x = o;
                        do {
                            if (g.origin(x) == v) { found = true; break; }
                            x = rotate_next(emb, g, twin(x));
                        } while (x != o);
                        if (!found) return;
                    }
                }
                for (int k = 0; k < count; ++k)
                    emb.placements[k].container = parent[k] == kNone ? kNone : inner[parent[k]];
                yield(emb);
                return;
            }
            parent[c] = kNone;
            nest(c + 1);
            for (int i = 0; i < static_cast<int>(inner.size()); ++i) {
                if (inner_comp[i] == c) continue;
                parent[c] = i;
                nest(c + 1);
            }
            parent[c] = kNone;
        };
        nest(0);
    };

    std::function<void(int)> pick_outer = [&](int c) {
        if (c == count) {
            emit_nestings();
            return;
        }
        const auto& opt_c = options[c][choice[c]];
        if (opt_c.walks.empty()) {
            outer_of[c] = kNone;
            emb.placements[c].outer = kNone;
            pick_outer(c + 1);
            return;
        }
        for (Dart s : opt_c.walks) {
            outer_of[c] = s;
            emb.placements[c].outer = s;
            pick_outer(c + 1);
        }
    };

    std::function<void(int)> pick_rotation = [&](int c) {
        if (c == count) {
            pick_outer(0);
            return;
        }
        for (std::size_t k = 0; k < options[c].size(); ++k) {
            choice[c] = static_cast<int>(k);
            if (edges_in[c] > 0)
                for (std::size_t i = 0; i < members[c].size(); ++i)
                    emb.rotation[members[c][i]] = options[c][k].rot[i];
            pick_rotation(c + 1);
        }
    };
    pick_rotation(0);
}

std::vector<Embedding> enumerate_embeddings(const MultiGraph& g, const EnumerateOptions& opt) {
    std::vector<Embedding> out;
    enumerate_embeddings(g, opt, [&](const Embedding& e) { out.push_back(e); });
    return out;
}

std::optional<Embedding> planar_embedding(const MultiGraph& g) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
    using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
    BGraph bg(g.n());
    std::map<std::pair<Vertex, Vertex>, int> rep_of;
    std::vector<Edge> rep_edge;
    std::vector<std::vector<Edge>> parallels;
    for (Edge x = 0; x < g.m(); ++x) {
        auto [u, v] = g.ends(x);
        auto key = std::minmax(u, v);
        auto it = rep_of.find(key);
        if (it != rep_of.end()) {
            parallels[it->second].push_back(x);
            continue;
        }
        int k = static_cast<int>(rep_edge.size());
        rep_of[key] = k;
        rep_edge.push_back(x);
        parallels.emplace_back();
        boost::add_edge(u, v, k, bg);
    }
    std::vector<std::vector<BEdge>> storage(g.n());
    auto emb_map = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, bg));
    bool ok = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                                  boost::boyer_myrvold_params::embedding = emb_map);
    if (!ok) return std::nullopt;

    std::vector<std::vector<Dart>> rotation(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        for (const BEdge& be : storage[v]) {
            int k = boost::get(boost::edge_index, bg, be);
            Edge x = rep_edge[k];
            const Vertex a = std::min(g.ends(x).first, g.ends(x).second);
            const auto& par = parallels[k];
            if (v == a) {
                rotation[v].push_back(g.dart_from(x, v));
                for (Edge p : par) rotation[v].push_back(g.dart_from(p, v));
            } else {
                for (auto it = par.rbegin(); it != par.rend(); ++it) rotation[v].push_back(g.dart_from(*it, v));
                rotation[v].push_back(g.dart_from(x, v));
            }
        }
    }
    Embedding e = embedding_with_toplevel(g, std::move(rotation));
    if (!validate_planarity(g, e)) throw PlanarityError("planarity test produced an invalid rotation system");
    return e;
}

Inclusion complete_inclusion(const MultiGraph& g, const MultiGraph& h, const std::vector<Vertex>& vertex_map) {
    Inclusion inc;
    inc.vertex = vertex_map;
    if (static_cast<int>(vertex_map.size()) != g.n())
        throw NotSubgraph("vertex map has " + std::to_string(vertex_map.size()) + " entries for " +
                          std::to_string(g.n()) + " vertices");
    std::vector<bool> used(h.m(), false);
    inc.edge.resize(g.m());
    for (Edge x = 0; x < g.m(); ++x) {
        auto [u, v] = g.ends(x);
        Vertex hu = vertex_map[u], hv = vertex_map[v];
        if (hu < 0 || hu >= h.n() || hv < 0 || hv >= h.n()) throw NotSubgraph("vertex map out of range");
        Edge found = kNone;
        for (Dart d : h.darts(hu)) {
            Edge y = edge_of(d);
            if (h.head(d) == hv && !used[y]) {
                found = y;
                break;
            }
        }
        if (found == kNone)
            throw NotSubgraph("edge " + std::to_string(u) + "-" + std::to_string(v) + " has no image");
        used[found] = true;
        inc.edge[x] = found;
    }
    return inc;
}

bool extends(const MultiGraph& g, const Embedding& sub, const MultiGraph& h, const Embedding& sup,
             const Inclusion& inc_in) {
    Inclusion inc = inc_in;
    if (inc.edge.empty() && g.m() > 0) {
        if (!g.is_simple()) throw NotSubgraph("an edge map is required for multigraphs");
        inc = complete_inclusion(g, h, inc.vertex);
    }
    if (static_cast<int>(inc.vertex.size()) != g.n() || static_cast<int>(inc.edge.size()) != g.m())
        throw NotSubgraph("inclusion has the wrong size");
    std::vector<bool> vused(h.n(), false), eused(h.m(), false);
    for (Vertex v = 0; v < g.n(); ++v) {
        Vertex x = inc.vertex[v];
        if (x < 0 || x >= h.n() || vused[x]) throw NotSubgraph("vertex map is not injective");
        vused[x] = true;
    }
    std::vector<Dart> dmap(g.dart_count());
    std::vector<Dart> preimage(h.dart_count(), kNone);
    for (Edge x = 0; x < g.m(); ++x) {
        Edge y = inc.edge[x];
        if (y < 0 || y >= h.m() || eused[y]) throw NotSubgraph("edge map is not injective");
        eused[y] = true;
        Vertex a = inc.vertex[g.origin(2 * x)], b = inc.vertex[g.origin(2 * x + 1)];
        auto [p, q] = h.ends(y);
        if (p == a && q == b) {
            dmap[2 * x] = 2 * y;
            dmap[2 * x + 1] = 2 * y + 1;
        } else if (p == b && q == a) {
            dmap[2 * x] = 2 * y + 1;
            dmap[2 * x + 1] = 2 * y;
        } else {
            throw NotSubgraph("edge " + std::to_string(x) + " maps to an edge with other ends");
        }
        preimage[dmap[2 * x]] = 2 * x;
        preimage[dmap[2 * x + 1]] = 2 * x + 1;
    }

    FaceStructure fg = faces_of(g, sub);
    FaceStructure fh = faces_of(h, sup);

    // Rotations, up to cyclic shift.
    for (Vertex v = 0; v < g.n(); ++v) {
        const auto& rg = sub.rotation[v];
        if (rg.size() <= 2) continue;
        std::vector<Dart> filtered;
        for (Dart d : sup.rotation[inc.vertex[v]])
            if (preimage[d] != kNone) filtered.push_back(preimage[d]);
        int shift = index_in(filtered, rg[0]);
        if (shift == kNone || filtered.size() != rg.size()) return false;
        for (std::size_t i = 0; i < rg.size(); ++i)
            if (filtered[(shift + i) % filtered.size()] != rg[i]) return false;
    }

    // Region of the plane minus the image of component c2 containing each H face,
    // named by the G walk of c2 that bounds it.
    const int nfh = static_cast<int>(fh.faces.size());
    auto region_labels = [&](int c2) {
        std::vector<int> label(nfh, kNone);
        std::vector<int> seen(nfh, 0);
        for (int f0 = 0; f0 < nfh; ++f0) {
            if (seen[f0]) continue;
            std::vector<int> members{f0};
            seen[f0] = 1;
            int found = kNone;
            for (std::size_t i = 0; i < members.size(); ++i) {
                for (const auto& walk : fh.faces[members[i]].walks)
                    for (Dart d : walk) {
                        Dart gd = preimage[d];
                        if (gd != kNone && fg.component_of[g.origin(gd)] == c2) {
                            if (found == kNone) found = fg.walk_of_dart[gd];
                            continue;
                        }
                        int f = fh.face_of_dart[twin(d)];
                        if (!seen[f]) {
                            seen[f] = 1;
                            members.push_back(f);
                        }
                    }
            }
            for (int f : members) label[f] = found;
        }
        return label;
    };

    auto outer_walk = [&](int c) { return fg.walk_of_dart[sub.placements[c].outer]; };
    // Walk of c2 whose face holds component c in G.
    auto locate_g = [&](int c, int c2) {
        while (true) {
            Dart d = sub.placements[c].container;
            if (d == kNone) return outer_walk(c2);
            int owner = fg.component_of[g.origin(d)];
            if (owner == c2) return fg.walk_of_dart[d];
            c = owner;
        }
    };
    auto h_face_at = [&](Vertex x) {
        if (h.degree(x) == 0) return fh.face_of_vertex[x];
        return fh.face_of_dart[h.darts(x)[0]];
    };

    for (int c2 = 0; c2 < fg.component_count; ++c2) {
        if (sub.placements[c2].outer == kNone) continue;
        auto label = region_labels(c2);
        if (label[FaceStructure::outer] != outer_walk(c2)) return false;
        for (int c = 0; c < fg.component_count; ++c) {
            if (c == c2) continue;
            if (label[h_face_at(inc.vertex[sub.placements[c].rep])] != locate_g(c, c2)) return false;
        }
    }
    return true;
}

std::vector<std::vector<Dart>> remap_rotation(const Embedding& e, const IdMap& map, int n) {
    std::vector<std::vector<Dart>> rot(n);
    for (Vertex v = 0; v < static_cast<int>(e.rotation.size()); ++v) {
        if (map.vertex[v] == kNone) continue;
        for (Dart d : e.rotation[v]) {
            Edge x = map.edge[edge_of(d)];
            if (x != kNone) rot[map.vertex[v]].push_back(2 * x + (d & 1));
        }
    }
    return rot;
}

Edge insert_edge(MultiGraph& g, Embedding& e, Vertex u, Dart after_u, Vertex v, Dart after_v) {
    Edge x = g.add_edge(u, v);
    if (static_cast<int>(e.rotation.size()) < g.n()) e.rotation.resize(g.n());
    auto place = [&](Vertex w, Dart after, Dart d) {
        auto& r = e.rotation[w];
        if (after == kNone) {
            if (!r.empty()) throw InvalidRotation("insertion point missing at vertex " + std::to_string(w));
            r.push_back(d);
            return;
        }
        int i = index_in(r, after);
        if (i == kNone) throw InvalidRotation("dart " + std::to_string(after) + " not at vertex " + std::to_string(w));
        r.insert(r.begin() + i + 1, d);
    };
    place(u, after_u, 2 * x);
    place(v, after_v, 2 * x + 1);
    return x;
}

EmbeddedWheel wheel_extension(const MultiGraph& g, const Embedding& e, Vertex v) {
    EmbeddedWheel r;
    const auto& ds = e.rotation[v];
    r.wheel = wheel_extension(g, v, ds);
    const MultiGraph& h = r.wheel.graph;
    const int l = static_cast<int>(ds.size());
    const Edge base = g.m();
    auto ed = [&](int i, int k) { return base + 4 * ((i % l + l) % l) + k; };
    r.embedding = e;
    auto& rot = r.embedding.rotation;
    rot.resize(h.n());
    const auto& w = r.wheel;
    for (int i = 0; i < l; ++i) {
        rot[w.attach[i]] = {ds[i], 2 * ed(i, 1), 2 * ed(i, 0) + 1};
        rot[w.rim[i]] = {2 * ed(i, 0), 2 * ed(i, 2), 2 * ed(i - 1, 1) + 1};
        rot[w.hub[i]] = {2 * ed(i, 2) + 1, 2 * ed(i, 3), 2 * ed(i - 1, 3) + 1};
    }
    return r;
}

EmbeddedGadget k4_chain_embedded(int a) {
    EmbeddedGadget r;
    r.graph = k4_chain_gadget(a);
    const MultiGraph& g = r.graph;
    std::vector<std::vector<Dart>> rot(g.n());
    // Triangle 0,1,2 with 3 inside; the chain bows out below edge 0-1.
    rot[0] = {0, 2, 10};
    rot[1] = {2 * (5 + a) + 1, 6, 4};
    rot[2] = {5, 8, 1};
    rot[3] = {7, 3, 9};
    for (int i = 1; i <= a; ++i) rot[3 + i] = {2 * (4 + i) + 1, 2 * (5 + i)};
    r.embedding = connected_embedding(g, std::move(rot), 0);
    Dart d = 0;
    do {
        Vertex x = g.origin(d);
        if (x >= 4) r.ports.push_back(x);
        d = face_next(r.embedding, g, d);
    } while (d != 0);
    return r;
}

EmbeddedParallel parallel_edge_gadget(const MultiGraph& g, const Embedding& e, Edge edge) {
    EmbeddedParallel r;
    r.gadget = parallel_edge_gadget(g, edge);
    const MultiGraph& h = r.gadget.graph;
    const Vertex v = g.ends(edge).second;
    const Edge b0 = g.m();
    const Vertex p = g.n(), q = g.n() + 1, s = g.n() + 2, t = g.n() + 3;
    const Vertex a = r.gadget.a, b = r.gadget.b;
    auto fwd = [&](int k) { return 2 * (b0 + k); };
    auto bwd = [&](int k) { return 2 * (b0 + k) + 1; };
    r.embedding = e;
    auto& rot = r.embedding.rotation;
    rot.resize(h.n());
    for (Dart& d : rot[v])
        if (d == 2 * edge + 1) d = bwd(8);
    rot[a] = {2 * edge + 1, fwd(6), bwd(5)};
    rot[b] = {fwd(8), fwd(7), bwd(6)};
    rot[p] = {fwd(5), fwd(1), fwd(0)};
    rot[q] = {bwd(7), fwd(2), fwd(3)};
    rot[s] = {bwd(0), fwd(4), bwd(2)};
    rot[t] = {bwd(4), bwd(1), bwd(3)};
    return r;
}

}  // namespace cubaug
