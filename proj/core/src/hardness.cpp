#include "cubaug/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "cubaug/error.hpp"

namespace cubaug {
namespace {

using Clause = std::vector<int>;

FaceColor opposite(FaceColor c) { return c == FaceColor::red ? FaceColor::blue : FaceColor::red; }

Clause sorted_clause(const Clause& c, int variables) {
    if (c.empty() || c.size() > 3) throw PreconditionViolated("clause with " + std::to_string(c.size()) + " literals");
    Clause s = c;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= variables) throw PreconditionViolated("variable " + std::to_string(s[i]) + " out of range");
        if (i > 0 && s[i] == s[i - 1]) throw PreconditionViolated("repeated variable in a clause");
    }
    return s;
}

// inner lies between two consecutive variables of outer (both sorted).
bool nested_in(const Clause& inner, const Clause& outer) {
    for (std::size_t i = 0; i + 1 < outer.size(); ++i)
        if (outer[i] <= inner.front() && inner.back() <= outer[i + 1]) return true;
    return false;
}

bool apart(const Clause& a, const Clause& b) { return a.back() <= b.front() || b.back() <= a.front(); }

void check_side(const std::vector<Clause>& side) {
    for (std::size_t i = 0; i < side.size(); ++i)
        for (std::size_t j = i + 1; j < side.size(); ++j) {
            const Clause &a = side[i], &b = side[j];
            if (a == b || apart(a, b) || nested_in(a, b) || nested_in(b, a)) continue;
            throw InvalidNesting("clauses " + std::to_string(i) + " and " + std::to_string(j) + " cross");
        }
}

// 1 + deepest clause nested inside; innermost clauses get 1.
std::vector<int> nesting_levels(const std::vector<Clause>& side) {
    std::vector<int> level(side.size(), 0);
    std::function<int(std::size_t)> get = [&](std::size_t i) {
        if (level[i]) return level[i];
        int best = 0;
        for (std::size_t j = 0; j < side.size(); ++j)
            if (j != i && nested_in(side[j], side[i])) best = std::max(best, get(j));
        return level[i] = best + 1;
    };
    for (std::size_t i = 0; i < side.size(); ++i) get(i);
    return level;
}

// Clause ids at variable x, left to right, so that no leg crosses another clause.
std::vector<int> leg_order(const std::vector<Clause>& side, const std::vector<int>& level, int x) {
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    for (std::size_t i = 0; i < side.size(); ++i) {
        const Clause& c = side[i];
        if (!std::binary_search(c.begin(), c.end(), x)) continue;
        int group, key = level[i];
        if (c.size() == 1) group = 1;
        else if (x == c.back()) group = 0;
        else if (x == c.front()) {
            group = 3;
            key = -key;
        } else {
            group = 2;
        }
        keyed.push_back({{group, key}, static_cast<int>(i)});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (auto& k : keyed) out.push_back(k.second);
    return out;
}

// Straight-line drawing; rotations come from the angles.
struct Sketch {
    std::map<std::pair<long long, long long>, Vertex> index;
    std::vector<std::pair<double, double>> at;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<char> white;

    Vertex add(double x, double y, bool w) {
        at.push_back({x, y});
        white.push_back(w);
        return static_cast<Vertex>(at.size()) - 1;
    }
    Vertex point(double x, double y) {
        auto key = std::make_pair(std::llround(x * 1024), std::llround(y * 1024));
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        return index[key] = add(x, y, false);
    }
    std::vector<Vertex> segment(Vertex a, Vertex b, int whites) {
        std::vector<Vertex> ws;
        Vertex prev = a;
        for (int i = 1; i <= whites; ++i) {
            double t = static_cast<double>(i) / (whites + 1);
            Vertex w = add(at[a].first + t * (at[b].first - at[a].first), at[a].second + t * (at[b].second - at[a].second), true);
            edges.push_back({prev, w});
            ws.push_back(w);
            prev = w;
        }
        edges.push_back({prev, b});
        return ws;
    }
    void line(double x0, double y0, double x1, double y1) { segment(point(x0, y0), point(x1, y1), 0); }
    std::vector<Vertex> rung(double x, double y, int whites) { return segment(point(x, y), point(x + 1, y), whites); }

    // Rungs above the start rung at y0 up to y1, m faces; rung t carries 2 whites when t is odd.
    void ladder(double x, double y0, double y1, int m) {
        double prev = y0;
        for (int t = 1; t <= m; ++t) {
            double y = y0 + (y1 - y0) * t / m;
            line(x, prev, x, y);
            line(x + 1, prev, x + 1, y);
            rung(x, y, t % 2 ? 2 : 1);
            prev = y;
        }
    }

    std::pair<MultiGraph, std::vector<std::vector<Dart>>> graph() const {
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
        return {std::move(g), std::move(rot)};
    }

    // Per component, ordered by smallest vertex: the steepest dart at the leftmost-lowest vertex,
    // whose left face is the unbounded one.
    std::vector<Dart> outer_darts(const MultiGraph& g, const std::vector<std::vector<Dart>>& rot) const {
        std::vector<int> comp = connected_components(g);
        std::vector<int> order(g.n(), kNone);
        std::vector<Vertex> best;
        for (Vertex v = 0; v < g.n(); ++v) {
            if (order[comp[v]] == kNone) {
                order[comp[v]] = static_cast<int>(best.size());
                best.push_back(v);
            }
            Vertex& b = best[order[comp[v]]];
            if (at[v] < at[b]) b = v;
        }
        std::vector<Dart> out;
        for (Vertex b : best) out.push_back(rot[b].empty() ? kNone : rot[b].front());
        return out;
    }
};

struct ClauseSeed {
    Vertex q_white = kNone;  // a white between the clause face and its two-white neighbour
    FaceColor color = FaceColor::uncolored;
};

std::vector<int> white_count(const MultiGraph& g, const Embedding& e, const FaceStructure& fs,
                             const std::vector<char>& white) {
    std::vector<int> count(fs.faces.size(), 0);
    for (Vertex w = 0; w < g.n(); ++w)
        if (white[w])
            for (Dart d : e.rotation[w]) ++count[fs.face_of_dart[d]];
    return count;
}

// Two-colours the faces that touch whites, starting from the clause faces.
std::vector<FaceColor> color_faces(const MultiGraph& g, const Embedding& e, const FaceStructure& fs,
                                   const std::vector<char>& white, const std::vector<ClauseSeed>& seeds,
                                   std::vector<int>* clause_faces) {
    const int nf = static_cast<int>(fs.faces.size());
    std::vector<int> count = white_count(g, e, fs, white);
    std::vector<std::vector<int>> adj(nf);
    for (Vertex w = 0; w < g.n(); ++w) {
        if (!white[w]) continue;
        int a = fs.face_of_dart[e.rotation[w][0]], b = fs.face_of_dart[e.rotation[w][1]];
        if (a == b) throw std::logic_error("white vertex with one face on both sides");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<FaceColor> color(nf, FaceColor::uncolored);
    std::queue<int> q;
    auto paint = [&](int f, FaceColor c) {
        if (color[f] == FaceColor::uncolored) {
            color[f] = c;
            q.push(f);
        } else if (color[f] != c) {
            throw std::logic_error("face colouring conflict at face " + std::to_string(f));
        }
    };
    for (const auto& s : seeds) {
        int a = fs.face_of_dart[e.rotation[s.q_white][0]], b = fs.face_of_dart[e.rotation[s.q_white][1]];
        int c = count[a] > count[b] ? a : b;
        if (clause_faces) clause_faces->push_back(c);
        paint(c, s.color);
    }
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int h : adj[f]) paint(h, opposite(color[f]));
    }
    for (int f = 0; f < nf; ++f)
        if (count[f] > 0 && color[f] == FaceColor::uncolored) throw std::logic_error("white face left uncoloured");
    return color;
}

// Places a hub in every face without whites, joined to a new vertex on each boundary edge and
// to every degree-2 corner that is not white. Hubs of degree above 3 become wheels.
void fill_uncolored(MultiGraph& g, Embedding& emb, const std::vector<char>& white, const std::vector<FaceColor>& color) {
    FaceStructure fs = faces_of(g, emb);
    auto& rot = emb.rotation;
    const int m0 = g.m();
    const std::vector<Vertex> degree2 = [&] {
        std::vector<Vertex> v;
        for (Vertex x = 0; x < g.n(); ++x)
            if (g.degree(x) == 2 && !white[x]) v.push_back(x);
        return v;
    }();
    std::vector<char> cornered(g.n(), 0);

    struct Request {
        Vertex corner = kNone;  // or an edge side
        Dart dart = kNone;
        Dart spoke = kNone;
    };
    struct Hub {
        Vertex id;
        std::vector<std::vector<Request>> groups;
    };
    std::vector<Hub> hubs;
    for (const Face& f : fs.faces) {
        if (color[f.id] != FaceColor::uncolored) continue;
        Hub h{g.add_vertex(Tag::added), {}};
        for (const auto& walk : f.walks) {
            h.groups.emplace_back();
            for (Dart d : walk) {
                Vertex v = g.origin(d);
                if (std::binary_search(degree2.begin(), degree2.end(), v) && !cornered[v]) {
                    cornered[v] = 1;
                    h.groups.back().push_back({v, d, kNone});
                }
                h.groups.back().push_back({kNone, d, kNone});
            }
        }
        hubs.push_back(std::move(h));
    }
    rot.resize(g.n());

    for (auto& h : hubs)
        for (auto& grp : h.groups)
            for (auto& r : grp) {
                if (r.corner == kNone) continue;
                Edge x = g.add_edge(h.id, r.corner);
                auto& rv = rot[r.corner];
                rv.insert(std::find(rv.begin(), rv.end(), r.dart), 2 * x + 1);
                r.spoke = 2 * x;
            }

    // Edge sides: the piece of an original edge that now carries side s.
    std::vector<Edge> piece(m0);
    for (Edge e = 0; e < m0; ++e) piece[e] = e;
    auto subdivide = [&](Edge e, int side, Vertex hub) {
        const Vertex b = g.head(2 * e);
        const Vertex s = g.add_vertex(Tag::added);
        rot.resize(g.n());
        g.reattach(2 * e + 1, s);
        const Edge f = g.add_edge(s, b);
        std::replace(rot[b].begin(), rot[b].end(), 2 * e + 1, 2 * f + 1);
        const Edge x = g.add_edge(hub, s);
        if (side == 0) rot[s] = {2 * e + 1, 2 * x + 1, 2 * f};
        else rot[s] = {2 * e + 1, 2 * f, 2 * x + 1};
        return std::make_pair(f, 2 * x);
    };
    // Side 0 first so that the remaining piece keeps both orientations.
    for (int side = 0; side < 2; ++side)
        for (auto& h : hubs)
            for (auto& grp : h.groups)
                for (auto& r : grp) {
                    if (r.corner != kNone || (r.dart & 1) != side) continue;
                    const Edge e0 = edge_of(r.dart);
                    auto [f, spoke] = subdivide(side == 0 ? e0 : piece[e0], side, h.id);
                    if (side == 0) piece[e0] = f;
                    r.spoke = spoke;
                }
    for (auto& h : hubs) {
        rot[h.id].clear();
        for (auto& grp : h.groups)
            for (auto it = grp.rbegin(); it != grp.rend(); ++it) rot[h.id].push_back(it->spoke);
    }
    for (auto& h : hubs)
        if (g.degree(h.id) > 3) {
            auto w = wheel_extension(g, emb, h.id);
            g = std::move(w.wheel.graph);
            emb.rotation = std::move(w.embedding.rotation);
        }
}

struct Suppressed {
    MultiGraph graph;
    std::vector<int> whites_on_edge;
    bool ok = true;
};

// Smooths the white vertices; ok is false on loops or a white cycle.
Suppressed suppress_whites(const MultiGraph& g, const std::vector<char>& white) {
    Suppressed r;
    std::vector<Vertex> id(g.n(), kNone);
    for (Vertex v = 0; v < g.n(); ++v)
        if (!white[v]) id[v] = r.graph.add_vertex();
    std::vector<char> seen(g.dart_count(), 0);
    for (Vertex b = 0; b < g.n(); ++b) {
        if (white[b]) continue;
        for (Dart d : g.darts(b)) {
            if (seen[d]) continue;
            seen[d] = 1;
            Dart cur = d;
            int count = 0;
            while (white[g.head(cur)]) {
                const Vertex w = g.head(cur);
                if (g.degree(w) != 2) {
                    r.ok = false;
                    return r;
                }
                ++count;
                const auto& ds = g.darts(w);
                seen[twin(cur)] = 1;
                cur = ds[0] == twin(cur) ? ds[1] : ds[0];
                seen[cur] = 1;
            }
            seen[twin(cur)] = 1;
            if (g.head(cur) == b) {
                r.ok = false;
                return r;
            }
            r.graph.add_edge(id[b], id[g.head(cur)]);
            r.whites_on_edge.push_back(count);
        }
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (white[v])
            for (Dart d : g.darts(v))
                if (!seen[d]) r.ok = false;
    return r;
}

std::string cubic_defect(const Suppressed& s) {
    const MultiGraph& r = s.graph;
    if (!s.ok) return "loop or white cycle";
    if (r.n() < 4 || r.min_degree() != 3 || r.max_degree() != 3) return "not cubic";
    if (!r.is_simple()) return "parallel edges";
    for (int c : s.whites_on_edge)
        if (c > 2) return "edge subdivided more than twice";
    if (edge_connectivity(r) != 3) return "not 3-connected";
    return {};
}

bool cubic_three_connected(const Suppressed& s) { return cubic_defect(s).empty(); }

struct Shape {
    std::vector<Vertex> pendants;
    std::vector<char> white;
};

Shape check_shape(const MultiGraph& g, const Embedding& e) {
    Shape s;
    s.white.assign(g.n(), 0);
    if (g.max_degree() > 3) throw WrongShape("vertex of degree above 3");
    std::vector<char> pendant(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) == 0 || g.degree(v) == 2) throw WrongShape("vertex " + std::to_string(v) + " of degree " + std::to_string(g.degree(v)));
        if (g.degree(v) != 1) continue;
        const Vertex w = g.head(g.darts(v)[0]);
        if (g.degree(w) != 3 || s.white[w]) throw WrongShape("pendant " + std::to_string(v) + " not on a subdivision vertex");
        s.white[w] = 1;
        pendant[v] = 1;
        s.pendants.push_back(v);
    }
    std::vector<Edge> keep;
    for (Edge x = 0; x < g.m(); ++x) {
        auto [a, b] = g.ends(x);
        if (!pendant[a] && !pendant[b]) keep.push_back(x);
    }
    IdMap map;
    MultiGraph r2 = induced_on_edges(g, keep, &map);
    std::vector<char> w2(r2.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v)
        if (s.white[v]) w2[map.vertex[v]] = 1;
    if (!cubic_three_connected(suppress_whites(r2, w2)))
        throw WrongShape("not a pendant-decorated (<=2)-subdivision of a 3-connected cubic graph");
    if (!validate_planarity(g, e)) throw WrongShape("embedding is not planar");
    return s;
}

}  // namespace

bool clause_nested_in(const std::vector<int>& inner, const std::vector<int>& outer) {
    return nested_in(inner, outer);
}

std::vector<int> clause_parents(const std::vector<std::vector<int>>& side) {
    std::vector<Clause> cs;
    for (const auto& c : side) {
        cs.push_back(c);
        std::sort(cs.back().begin(), cs.back().end());
    }
    const std::vector<int> level = nesting_levels(cs);
    std::vector<int> parent(cs.size(), -1);
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j)
            if (j != i && nested_in(cs[i], cs[j]) && (parent[i] == -1 || level[j] < level[parent[i]]))
                parent[i] = static_cast<int>(j);
    return parent;
}

void validate(const PlanarMonotone3SatInstance& psi) {
    if (psi.variables < 0) throw PreconditionViolated("negative variable count");
    for (const auto* side : {&psi.positive, &psi.negative}) {
        std::vector<Clause> cs;
        for (const auto& c : *side) cs.push_back(sorted_clause(c, psi.variables));
        check_side(cs);
    }
}

bool truth_table_satisfiable(const PlanarMonotone3SatInstance& psi, std::vector<bool>* assignment) {
    if (psi.variables > 24) throw TooLarge("truth table over " + std::to_string(psi.variables) + " variables");
    for (std::uint32_t mask = 0; mask < (1u << psi.variables); ++mask) {
        auto val = [&](int v) { return ((mask >> v) & 1u) != 0; };
        auto sat = [&](const std::vector<Clause>& side, bool want) {
            for (const auto& c : side) {
                bool any = false;
                for (int v : c) any = any || val(v) == want;
                if (!any) return false;
            }
            return true;
        };
        if (sat(psi.positive, true) && sat(psi.negative, false)) {
            if (assignment) {
                assignment->assign(psi.variables, false);
                for (int v = 0; v < psi.variables; ++v) (*assignment)[v] = val(v);
            }
            return true;
        }
    }
    return false;
}

NormalizedFormula normalize(const PlanarMonotone3SatInstance& psi) {
    validate(psi);
    NormalizedFormula r;
    r.psi.variables = psi.variables;
    r.fixed.assign(psi.variables, -1);
    auto dedupe = [&](const std::vector<Clause>& side) {
        std::set<Clause> seen;
        std::vector<Clause> out;
        for (const auto& c : side) {
            Clause s = sorted_clause(c, psi.variables);
            if (seen.insert(s).second) out.push_back(s);
        }
        return out;
    };
    r.psi.positive = dedupe(psi.positive);
    r.psi.negative = dedupe(psi.negative);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> pos(psi.variables, 0), neg(psi.variables, 0);
        for (const auto& c : r.psi.positive)
            for (int v : c) ++pos[v];
        for (const auto& c : r.psi.negative)
            for (int v : c) ++neg[v];
        for (int v = 0; v < psi.variables; ++v) {
            if (r.fixed[v] != -1 || (pos[v] > 0) == (neg[v] > 0)) continue;
            r.fixed[v] = pos[v] > 0 ? 1 : 0;
            auto& side = pos[v] > 0 ? r.psi.positive : r.psi.negative;
            std::erase_if(side, [&](const Clause& c) { return std::binary_search(c.begin(), c.end(), v); });
            changed = true;
        }
    }
    std::vector<char> used(psi.variables, 0);
    for (const auto* side : {&r.psi.positive, &r.psi.negative})
        for (const auto& c : *side)
            for (int v : c) used[v] = 1;
    for (int v = 0; v < psi.variables; ++v)
        if (!used[v] && r.fixed[v] == -1) r.fixed[v] = 0;
    return r;
}

HardnessInstance generate_instance(const PlanarMonotone3SatInstance& psi) {
    HardnessInstance inst;
    inst.formula = normalize(psi);
    const auto& f = inst.formula.psi;
    inst.variable_white.assign(f.variables, kNone);

    std::vector<char> white;
    std::vector<ClauseSeed> seeds;
    MultiGraph g;
    Embedding emb;
    if (f.positive.empty()) {
        // Nothing left to encode: K4 stands for the trivially satisfiable formula.
        g = MultiGraph(4);
        for (Vertex a = 0; a < 4; ++a)
            for (Vertex b = a + 1; b < 4; ++b) g.add_edge(a, b);
        emb = *planar_embedding(g);
        white.assign(4, 0);
    } else {
        const std::vector<int> up_level = nesting_levels(f.positive), down_level = nesting_levels(f.negative);
        std::vector<std::vector<int>> up(f.variables), down(f.variables);
        int band[2] = {0, 0};
        for (int v = 0; v < f.variables; ++v) {
            if (inst.formula.fixed[v] != -1) continue;
            up[v] = leg_order(f.positive, up_level, v);
            down[v] = leg_order(f.negative, down_level, v);
            for (int s = 0; s < 2; ++s) {
                const int k = static_cast<int>((s == 0 ? up : down)[v].size());
                if (k >= 2) band[s] = std::max(band[s], 3 * (k - 2) + 3);
            }
        }

        Sketch sk;
        // Per side: clause id -> leg columns.
        std::vector<std::vector<double>> legs_up(f.positive.size()), legs_down(f.negative.size());
        double x0 = 0;
        for (int v = 0; v < f.variables; ++v) {
            if (inst.formula.fixed[v] != -1) continue;
            inst.variable_white[v] = sk.rung(x0, 0, 1)[0];
            for (int s = 0; s < 2; ++s) {
                const double sign = s == 0 ? 1 : -1;
                const auto& order = s == 0 ? up[v] : down[v];
                const auto& level = s == 0 ? up_level : down_level;
                auto& legs = s == 0 ? legs_up : legs_down;
                // The face just across the axis rung; the end face of every leg must take the
                // colour of the clause's two-white neighbour.
                const FaceColor across = s == 0 ? FaceColor::red : FaceColor::blue;
                const FaceColor want = s == 0 ? FaceColor::red : FaceColor::blue;
                struct Start {
                    double x, y;
                    FaceColor before;
                };
                std::vector<Start> starts;
                const int k = static_cast<int>(order.size());
                if (k == 1) {
                    starts.push_back({x0, 0, across});
                } else {
                    FaceColor before = across;
                    for (int j = 0; j + 1 < k; ++j) {
                        const double t = x0 + 3 * j, yb = sign * (2 + 3 * j), yt = sign * (3 + 3 * j);
                        sk.ladder(t, j == 0 ? 0.0 : yb - sign * 2, yb, 2);
                        // Splitter face: one incoming rung, two outgoing ones.
                        sk.line(t, yb, t, yt);
                        sk.line(t + 1, yb, t + 4, yt);
                        sk.line(t + 1, yt, t + 3, yt);
                        sk.rung(t, yt, 1);
                        sk.rung(t + 3, yt, 1);
                        before = opposite(before);
                        starts.push_back({t, yt, before});
                        if (j + 2 == k) starts.push_back({t + 3, yt, before});
                    }
                }
                for (int j = 0; j < k; ++j) {
                    const int c = order[j];
                    const double h = sign * (band[s] + 4 * level[c]);
                    sk.ladder(starts[j].x, starts[j].y, h, starts[j].before == want ? 2 : 3);
                    legs[c].push_back(starts[j].x);
                }
            }
            x0 += 3 * std::max<std::size_t>({up[v].size(), down[v].size(), 1});
        }
        for (int s = 0; s < 2; ++s) {
            const double sign = s == 0 ? 1 : -1;
            auto& legs = s == 0 ? legs_up : legs_down;
            const auto& level = s == 0 ? up_level : down_level;
            for (std::size_t c = 0; c < legs.size(); ++c) {
                auto& xs = legs[c];
                std::sort(xs.begin(), xs.end());
                const double h = sign * (band[s] + 4 * level[c]);
                const double l = xs.front(), r = xs.back() + 1;
                for (std::size_t i = 0; i + 1 < xs.size(); ++i) sk.line(xs[i] + 1, h, xs[i + 1], h);
                sk.line(l, h, l, h + sign);
                sk.line(r, h, r, h + sign);
                const auto q = sk.segment(sk.point(l, h + sign), sk.point(r, h + sign), 2);
                sk.line(l, h + sign, l, h + 2 * sign);
                sk.line(l, h + 2 * sign, r, h + 2 * sign);
                sk.line(r, h + 2 * sign, r, h + sign);
                seeds.push_back({q[0], s == 0 ? FaceColor::blue : FaceColor::red});
            }
        }
        auto [sg, rot] = sk.graph();
        g = std::move(sg);
        const auto outers = sk.outer_darts(g, rot);
        emb = embedding_with_toplevel(g, std::move(rot), outers);
        if (!validate_planarity(g, emb)) throw InvalidNesting("clause drawing is not planar");
        white = sk.white;

        FaceStructure fs = faces_of(g, emb);
        std::vector<FaceColor> color = color_faces(g, emb, fs, white, seeds, nullptr);
        fill_uncolored(g, emb, white, color);
        white.resize(g.n(), 0);
        Dart outer = kNone;
        for (Vertex x = 0; x < g.n() && outer == kNone; ++x)
            if (g.tag(x) == Tag::added && g.degree(x) == 3) outer = emb.rotation[x][0];
        emb = connected_embedding(g, std::move(emb.rotation), outer);
    }

    if (!validate_planarity(g, emb)) throw std::logic_error("filled drawing is not planar");
    if (auto why = cubic_defect(suppress_whites(g, white)); !why.empty())
        throw std::logic_error("filled drawing: " + why);
    FaceStructure fs = faces_of(g, emb);
    std::vector<int> clause_faces;
    inst.face_colors = color_faces(g, emb, fs, white, seeds, &clause_faces);
    inst.positive_clause_face.assign(clause_faces.begin(), clause_faces.begin() + static_cast<long>(f.positive.size()));
    inst.negative_clause_face.assign(clause_faces.begin() + static_cast<long>(f.positive.size()), clause_faces.end());
    for (Vertex v = 0; v < g.n(); ++v)
        if (white[v]) inst.whites.push_back(v);

    inst.g_psi = g;
    auto rot = emb.rotation;
    for (Vertex w : inst.whites) {
        const Vertex p = inst.g_psi.add_vertex(Tag::added);
        const Edge x = inst.g_psi.add_edge(w, p);
        Dart into = kNone;
        for (Dart d : emb.rotation[w])
            if (inst.face_colors[fs.face_of_dart[d]] == FaceColor::red) into = d;
        auto& rw = rot[w];
        rw.insert(std::find(rw.begin(), rw.end(), into), 2 * x);
        rot.push_back({2 * x + 1});
        inst.pendant_map[w] = p;
    }
    for (Edge x = 0; x < g.m(); ++x) inst.r2_edges.push_back(x);
    inst.embedding = connected_embedding(inst.g_psi, std::move(rot), emb.placements.front().outer);
    inst.r2 = std::move(g);
    inst.r2_embedding = std::move(emb);
    return inst;
}

bool check_face_condition(const MultiGraph& g, const Embedding& e) {
    check_shape(g, e);
    FaceStructure fs = faces_of(g, e);
    std::vector<int> count(fs.faces.size(), 0);
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 1) ++count[fs.face_of_dart[g.darts(v)[0]]];
    return std::none_of(count.begin(), count.end(), [](int c) { return c == 1 || c == 2; });
}

AugmentationResult construct_3con_solution(const MultiGraph& g, const Embedding& e) {
    check_shape(g, e);
    FaceStructure fs = faces_of(g, e);
    // Pendant darts per face, grouped by walk in walk order.
    std::vector<std::vector<std::vector<Dart>>> at_face(fs.faces.size());
    std::vector<int> count(fs.faces.size(), 0);
    for (const Face& f : fs.faces)
        for (const auto& walk : f.walks) {
            at_face[f.id].emplace_back();
            for (Dart d : walk)
                if (g.degree(g.origin(d)) == 1) {
                    at_face[f.id].back().push_back(d);
                    ++count[f.id];
                }
        }
    for (std::size_t f = 0; f < count.size(); ++f)
        if (count[f] == 1 || count[f] == 2)
            throw FaceConditionViolated("face " + std::to_string(f) + " holds " + std::to_string(count[f]) + " pendants");

    MultiGraph h = g;
    Embedding emb;
    emb.rotation = e.rotation;
    std::vector<Vertex> image(g.n());
    for (Vertex v = 0; v < g.n(); ++v) image[v] = v;
    std::vector<Vertex> drop;
    for (std::size_t f = 0; f < count.size(); ++f) {
        if (count[f] == 0) continue;
        // Seen from inside the face the walks run counterclockwise, so clockwise order is reversed.
        std::vector<Dart> order;
        for (const auto& grp : at_face[f]) order.insert(order.end(), grp.rbegin(), grp.rend());
        const int l = static_cast<int>(order.size());
        if (l == 3) {
            Edge x[3];
            for (int i = 0; i < 3; ++i) x[i] = h.add_edge(g.origin(order[i]), g.origin(order[(i + 1) % 3]));
            for (int i = 0; i < 3; ++i) emb.rotation[g.origin(order[i])] = {order[i], 2 * x[i], 2 * x[(i + 2) % 3] + 1};
            continue;
        }
        const Vertex hub = h.add_vertex(Tag::added);
        emb.rotation.resize(h.n());
        for (Dart d : order) {
            drop.push_back(g.origin(d));
            emb.rotation[g.origin(d)].clear();
            h.reattach(d, hub);
        }
        emb.rotation[hub] = order;
        auto w = wheel_extension(h, emb, hub);
        h = std::move(w.wheel.graph);
        emb.rotation = std::move(w.embedding.rotation);
        for (int i = 0; i < l; ++i) image[g.origin(order[i])] = w.wheel.attach[i];
    }

    IdMap map;
    MultiGraph hh = remove_vertices(h, drop, &map);
    std::vector<std::vector<Dart>> rot = remap_rotation(emb, map, hh.n());
    AugmentationResult r;
    Dart outer = e.placements.front().outer;
    outer = 2 * map.edge[edge_of(outer)] + (outer & 1);
    r.h_embedding = connected_embedding(hh, std::move(rot), outer);
    r.h = std::move(hh);
    for (Vertex v = 0; v < g.n(); ++v) r.vertex_map.push_back(map.vertex[image[v]]);
    for (Edge x = 0; x < g.m(); ++x) r.edge_map.push_back(map.edge[x]);
    if (r.h.n() > 3 * g.n()) throw std::logic_error("augmentation exceeds the size bound");
    return r;
}

std::optional<std::vector<char>> toy_solve_3con(const HardnessInstance& inst, int max_whites) {
    const int s = static_cast<int>(inst.whites.size());
    if (s > max_whites) throw TooLarge(std::to_string(s) + " subdivision vertices");
    FaceStructure fs = faces_of(inst.r2, inst.r2_embedding);
    const int nf = static_cast<int>(fs.faces.size());
    std::vector<int> red(s), blue(s), remaining(nf, 0), chosen(nf, 0);
    for (int i = 0; i < s; ++i) {
        for (Dart d : inst.r2_embedding.rotation[inst.whites[i]]) {
            int f = fs.face_of_dart[d];
            (inst.face_colors[f] == FaceColor::red ? red[i] : blue[i]) = f;
            ++remaining[f];
        }
    }
    auto bad = [&](int f) { return chosen[f] > 0 && chosen[f] < 3 && chosen[f] + remaining[f] < 3; };
    std::vector<char> pick(s, 0);
    std::function<bool(int)> search = [&](int i) {
        if (i == s) return true;
        for (int option : {1, 0}) {
            const int f = option ? blue[i] : red[i];
            --remaining[red[i]];
            --remaining[blue[i]];
            ++chosen[f];
            pick[i] = static_cast<char>(option);
            const bool ok = !bad(red[i]) && !bad(blue[i]) && search(i + 1);
            --chosen[f];
            ++remaining[red[i]];
            ++remaining[blue[i]];
            if (ok) return true;
        }
        return false;
    };
    if (!search(0)) return std::nullopt;
    return pick;
}

bool toy_decide_3con(const HardnessInstance& inst, int max_whites) { return toy_solve_3con(inst, max_whites).has_value(); }

Embedding embedding_for_choices(const HardnessInstance& inst, const std::vector<char>& blue) {
    if (blue.size() != inst.whites.size()) throw PreconditionViolated("one choice per subdivision vertex expected");
    FaceStructure fs = faces_of(inst.r2, inst.r2_embedding);
    auto rot = inst.r2_embedding.rotation;
    for (std::size_t i = 0; i < inst.whites.size(); ++i) {
        const Vertex w = inst.whites[i];
        const Edge x = inst.r2.m() + static_cast<Edge>(i);
        const FaceColor want = blue[i] ? FaceColor::blue : FaceColor::red;
        Dart into = kNone;
        for (Dart d : inst.r2_embedding.rotation[w])
            if (inst.face_colors[fs.face_of_dart[d]] == want) into = d;
        rot[w].insert(std::find(rot[w].begin(), rot[w].end(), into), 2 * x);
        rot.push_back({2 * x + 1});
    }
    return connected_embedding(inst.g_psi, std::move(rot), inst.r2_embedding.placements.front().outer);
}

std::vector<bool> assignment_from_choices(const HardnessInstance& inst, const std::vector<char>& blue) {
    const auto& fixed = inst.formula.fixed;
    std::vector<bool> value(fixed.size(), false);
    for (std::size_t v = 0; v < fixed.size(); ++v) {
        if (fixed[v] != -1) {
            value[v] = fixed[v] == 1;
            continue;
        }
        auto it = std::find(inst.whites.begin(), inst.whites.end(), inst.variable_white[v]);
        value[v] = blue.at(static_cast<std::size_t>(it - inst.whites.begin())) != 0;
    }
    return value;
}

}  // namespace cubaug
