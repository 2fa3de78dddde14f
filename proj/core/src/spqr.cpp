#include "cubaug/spqr.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cubaug/error.hpp"

namespace cubaug {

char to_char(NodeKind k) {
    switch (k) {
        case NodeKind::S: return 'S';
        case NodeKind::P: return 'P';
        case NodeKind::Q: return 'Q';
        default: return 'R';
    }
}

int SpqrTree::skeleton_size() const {
    int total = 0;
    for (const auto& n : nodes) total += static_cast<int>(n.skeleton.size());
    return total;
}

namespace {

// id < m is a real edge, larger ids are virtual.
struct PEdge {
    Vertex u, v;
    int id;
};

struct RawNode {
    NodeKind kind;
    std::vector<PEdge> edges;
};

class Splitter {
public:
    Splitter(int n, int m) : next_(m), index_(n, -1), deg_(n, 0) {}

    std::vector<RawNode> run(std::vector<PEdge> all) {
        std::vector<std::vector<PEdge>> stack{std::move(all)};
        while (!stack.empty()) {
            std::vector<PEdge> es = std::move(stack.back());
            stack.pop_back();
            while (true) {
                load(es);
                if (verts_.size() == 2) {
                    emit(NodeKind::P, es);
                    break;
                }
                if (std::all_of(verts_.begin(), verts_.end(), [&](Vertex v) { return deg_[v] == 2; })) {
                    emit(NodeKind::S, es);
                    break;
                }
                if (bundles(es) || chains(es)) continue;
                if (!cut(es, stack)) emit(NodeKind::R, es);
                break;
            }
            unload();
        }
        return std::move(out_);
    }

private:
    int next_;
    std::vector<int> index_, deg_;
    std::vector<Vertex> verts_;
    std::vector<std::vector<int>> adj_;  // per local vertex: indices into the current edge list
    std::vector<RawNode> out_;
    std::mt19937_64 rng_{0x5eed};

    void unload() {
        for (Vertex v : verts_) {
            index_[v] = -1;
            deg_[v] = 0;
        }
        verts_.clear();
    }

    void load(const std::vector<PEdge>& es) {
        unload();
        for (const auto& e : es)
            for (Vertex x : {e.u, e.v}) {
                if (index_[x] == -1) {
                    index_[x] = static_cast<int>(verts_.size());
                    verts_.push_back(x);
                }
                ++deg_[x];
            }
        adj_.assign(verts_.size(), {});
        for (int i = 0; i < static_cast<int>(es.size()); ++i) {
            adj_[index_[es[i].u]].push_back(i);
            adj_[index_[es[i].v]].push_back(i);
        }
    }

    void emit(NodeKind k, std::vector<PEdge> es) { out_.push_back({k, std::move(es)}); }

    // Parallel classes become bonds.
    bool bundles(std::vector<PEdge>& es) {
        std::vector<int> order(es.size());
        std::iota(order.begin(), order.end(), 0);
        auto key = [&](int i) { return std::minmax(es[i].u, es[i].v); };
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
        std::vector<PEdge> rest;
        bool changed = false;
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i;
            while (j < order.size() && key(order[j]) == key(order[i])) ++j;
            if (j - i == 1) {
                rest.push_back(es[order[i]]);
            } else {
                std::vector<PEdge> bond;
                for (std::size_t k = i; k < j; ++k) bond.push_back(es[order[k]]);
                PEdge v{es[order[i]].u, es[order[i]].v, next_++};
                bond.push_back(v);
                emit(NodeKind::P, std::move(bond));
                rest.push_back(v);
                changed = true;
            }
            i = j;
        }
        if (changed) es = std::move(rest);
        return changed;
    }

    // Maximal paths through degree-2 vertices become cycles closed by a virtual edge.
    bool chains(std::vector<PEdge>& es) {
        std::vector<char> used(es.size(), 0);
        std::vector<PEdge> added;
        bool changed = false;
        auto other = [&](int i, Vertex x) { return es[i].u == x ? es[i].v : es[i].u; };
        for (Vertex w : verts_) {
            if (deg_[w] != 2 || used[adj_[index_[w]][0]]) continue;
            // Walk back to the start of the chain, then forward to its end.
            Vertex start = w;
            int via = adj_[index_[w]][0];
            while (true) {
                Vertex x = other(via, start);
                if (deg_[x] != 2) {
                    start = x;
                    break;
                }
                const auto& a = adj_[index_[x]];
                via = a[0] == via ? a[1] : a[0];
                start = x;
                if (start == w) throw std::logic_error("chain closes on itself");
            }
            std::vector<PEdge> cyc;
            Vertex cur = start;
            while (true) {
                used[via] = 1;
                cyc.push_back(es[via]);
                cur = other(via, cur);
                if (deg_[cur] != 2) break;
                const auto& a = adj_[index_[cur]];
                via = a[0] == via ? a[1] : a[0];
            }
            if (cur == start) throw NotBiconnected("cut vertex " + std::to_string(cur));
            PEdge v{start, cur, next_++};
            cyc.push_back(v);
            emit(NodeKind::S, std::move(cyc));
            added.push_back(v);
            changed = true;
        }
        if (!changed) return false;
        std::vector<PEdge> rest;
        for (std::size_t i = 0; i < es.size(); ++i)
            if (!used[i]) rest.push_back(es[i]);
        rest.insert(rest.end(), added.begin(), added.end());
        es = std::move(rest);
        return true;
    }

    // Cubic simple piece: splits along a 2-edge cut into a 4-cycle and two sides.
    bool cut(const std::vector<PEdge>& es, std::vector<std::vector<PEdge>>& stack) {
        const int n = static_cast<int>(verts_.size());
        const int m = static_cast<int>(es.size());
        std::vector<int> parent_edge(n, -1), order;
        std::vector<char> seen(n, 0), tree(m, 0);
        std::vector<std::uint64_t> label(m, 0), acc(n, 0);
        std::vector<std::pair<int, std::size_t>> st{{0, 0}};
        seen[0] = 1;
        order.push_back(0);
        while (!st.empty()) {
            auto& [x, i] = st.back();
            if (i == adj_[x].size()) {
                st.pop_back();
                continue;
            }
            int e = adj_[x][i++];
            int y = index_[es[e].u] == x ? index_[es[e].v] : index_[es[e].u];
            if (!seen[y]) {
                seen[y] = 1;
                tree[e] = 1;
                parent_edge[y] = e;
                order.push_back(y);
                st.push_back({y, 0});
            }
        }
        if (static_cast<int>(order.size()) != n) throw NotBiconnected("disconnected piece");
        for (int e = 0; e < m; ++e)
            if (!tree[e]) {
                label[e] = rng_();
                acc[index_[es[e].u]] ^= label[e];
                acc[index_[es[e].v]] ^= label[e];
            }
        for (int k = n - 1; k > 0; --k) {
            int y = order[k];
            int e = parent_edge[y];
            label[e] = acc[y];
            int p = index_[es[e].u] == y ? index_[es[e].v] : index_[es[e].u];
            acc[p] ^= acc[y];
        }
        std::unordered_map<std::uint64_t, int> first;
        for (int e = 0; e < m; ++e) {
            if (label[e] == 0) throw NotBiconnected("bridge");
            auto [it, fresh] = first.emplace(label[e], e);
            if (fresh) continue;
            int x = it->second, y = e;
            std::vector<char> side;
            if (!separates(es, x, y, side)) continue;
            split(es, x, y, side, stack);
            return true;
        }
        return false;
    }

    bool separates(const std::vector<PEdge>& es, int x, int y, std::vector<char>& side) {
        side.assign(verts_.size(), 0);
        std::vector<int> q{index_[es[x].u]};
        side[q[0]] = 1;
        for (std::size_t h = 0; h < q.size(); ++h)
            for (int e : adj_[q[h]]) {
                if (e == x || e == y) continue;
                int z = index_[es[e].u] == q[h] ? index_[es[e].v] : index_[es[e].u];
                if (!side[z]) {
                    side[z] = 1;
                    q.push_back(z);
                }
            }
        return !side[index_[es[x].v]];
    }

    void split(const std::vector<PEdge>& es, int x, int y, const std::vector<char>& side,
               std::vector<std::vector<PEdge>>& stack) {
        auto in_a = [&](Vertex v) { return side[index_[v]] != 0; };
        Vertex a1 = in_a(es[x].u) ? es[x].u : es[x].v, b1 = a1 == es[x].u ? es[x].v : es[x].u;
        Vertex a2 = in_a(es[y].u) ? es[y].u : es[y].v, b2 = a2 == es[y].u ? es[y].v : es[y].u;
        PEdge va{a1, a2, next_++}, vb{b1, b2, next_++};
        emit(NodeKind::S, {es[x], vb, es[y], va});
        std::vector<PEdge> pa{va}, pb{vb};
        for (int e = 0; e < static_cast<int>(es.size()); ++e) {
            if (e == x || e == y) continue;
            (in_a(es[e].u) ? pa : pb).push_back(es[e]);
        }
        stack.push_back(std::move(pa));
        stack.push_back(std::move(pb));
    }
};

int find(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
}

// Skeleton edge with a tree-edge id before the final numbering.
struct TempEdge {
    Vertex u, v;
    Edge real;
    int pair;     // tree edge id, kNone for a real edge
    int to;       // node on the other side
};

struct TempNode {
    NodeKind kind;
    std::vector<TempEdge> edges;
};

// Orders a cycle's edges starting with edges[first], walking away from its u end.
std::vector<TempEdge> cycle_order(const std::vector<TempEdge>& es, int first) {
    std::vector<TempEdge> out{es[first]};
    std::vector<char> used(es.size(), 0);
    used[first] = 1;
    Vertex cur = es[first].v;
    for (std::size_t k = 1; k < es.size(); ++k) {
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (used[i] || (es[i].u != cur && es[i].v != cur)) continue;
            used[i] = 1;
            TempEdge e = es[i];
            if (e.u != cur) std::swap(e.u, e.v);
            out.push_back(e);
            cur = e.v;
            break;
        }
    }
    return out;
}

}  // namespace

SpqrTree build_spqr(const MultiGraph& g, Edge root_edge) {
    if (root_edge < 0 || root_edge >= g.m()) throw PreconditionViolated("root edge out of range");
    if (g.max_degree() > 3) throw PreconditionViolated("maximum degree above 3");
    auto rep = analyze_connectivity(g);
    if (g.n() < 2 || rep.component_count != 1 || !rep.cut_vertices.empty())
        throw NotBiconnected("graph is not 2-connected");

    std::vector<TempNode> nodes;
    if (g.n() == 2 && g.m() <= 2) {
        for (Edge e = 0; e < g.m(); ++e) {
            TempNode q{NodeKind::Q, {{g.ends(e).first, g.ends(e).second, e, kNone, kNone}}};
            if (g.m() == 2) q.edges.push_back({g.ends(e).first, g.ends(e).second, kNone, 0, 1 - e});
            nodes.push_back(q);
        }
    } else {
        std::vector<PEdge> all;
        for (Edge e = 0; e < g.m(); ++e) all.push_back({g.ends(e).first, g.ends(e).second, e});
        std::vector<RawNode> raw = Splitter(g.n(), g.m()).run(std::move(all));

        // Merge neighbouring cycles and neighbouring bonds.
        std::unordered_map<int, std::vector<int>> holders;
        for (int i = 0; i < static_cast<int>(raw.size()); ++i)
            for (const auto& e : raw[i].edges)
                if (e.id >= g.m()) holders[e.id].push_back(i);
        std::vector<int> uf(raw.size());
        std::iota(uf.begin(), uf.end(), 0);
        for (const auto& [id, hs] : holders) {
            if (hs.size() != 2) throw std::logic_error("virtual edge not shared by two pieces");
            if (raw[hs[0]].kind == raw[hs[1]].kind && raw[hs[0]].kind != NodeKind::R)
                uf[find(uf, hs[0])] = find(uf, hs[1]);
        }
        std::vector<int> group(raw.size(), -1);
        for (int i = 0; i < static_cast<int>(raw.size()); ++i) {
            int r = find(uf, i);
            if (group[r] == -1) {
                group[r] = static_cast<int>(nodes.size());
                nodes.push_back({raw[i].kind, {}});
            }
            group[i] = group[r];
        }
        const int inner = static_cast<int>(nodes.size());
        std::unordered_map<int, int> pair_of;
        int pairs = 0;
        for (int i = 0; i < static_cast<int>(raw.size()); ++i)
            for (const auto& e : raw[i].edges) {
                TempNode& nd = nodes[group[i]];
                if (e.id < g.m()) {
                    // Real edge: link to its own Q-node.
                    nd.edges.push_back({e.u, e.v, kNone, pairs, inner + e.id});
                    pair_of[-1 - e.id] = pairs++;
                    continue;
                }
                const auto& hs = holders[e.id];
                int other = group[hs[0]] == group[i] ? group[hs[1]] : group[hs[0]];
                if (other == group[i]) continue;
                auto [it, fresh] = pair_of.emplace(e.id, pairs);
                if (fresh) ++pairs;
                nd.edges.push_back({e.u, e.v, kNone, it->second, other});
            }
        for (Edge e = 0; e < g.m(); ++e) {
            auto [u, v] = g.ends(e);
            int home = kNone;
            nodes.push_back({NodeKind::Q, {{u, v, e, kNone, kNone}, {u, v, kNone, pair_of[-1 - e], home}}});
        }
        for (int i = 0; i < inner; ++i)
            for (const auto& e : nodes[i].edges)
                if (e.to >= inner) nodes[e.to].edges[1].to = i;
    }

    // Root at Q(root_edge) and renumber breadth-first.
    const int count = static_cast<int>(nodes.size());
    int root = kNone;
    for (int i = 0; i < count; ++i)
        if (nodes[i].kind == NodeKind::Q && nodes[i].edges[0].real == root_edge) root = i;
    std::vector<int> parent_pair(count, kNone), order{root}, pos(count, kNone);
    pos[root] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (const auto& e : nodes[order[h]].edges)
            if (e.pair != kNone && e.pair != parent_pair[order[h]] && pos[e.to] == kNone) {
                pos[e.to] = static_cast<int>(order.size());
                parent_pair[e.to] = e.pair;
                order.push_back(e.to);
            }
    if (static_cast<int>(order.size()) != count) throw std::logic_error("decomposition tree is disconnected");

    SpqrTree t;
    t.root = 0;
    t.root_edge = root_edge;
    t.q_node.assign(g.m(), kNone);
    t.nodes.resize(count);
    std::vector<std::vector<std::pair<int, int>>> twins(count + g.m() + 1);
    for (int k = 0; k < count; ++k) {
        const TempNode& src = nodes[order[k]];
        SpqrNode& dst = t.nodes[k];
        dst.kind = src.kind;
        std::vector<TempEdge> es = src.edges;
        int first = 0;
        if (src.kind != NodeKind::Q)
            for (int i = 0; i < static_cast<int>(es.size()); ++i)
                if (es[i].pair == parent_pair[order[k]]) first = i;
        if (src.kind == NodeKind::S) {
            es = cycle_order(es, first);
        } else if (src.kind != NodeKind::Q) {
            std::rotate(es.begin(), es.begin() + first, es.begin() + first + 1);
        }
        for (int i = 0; i < static_cast<int>(es.size()); ++i) {
            SkeletonEdge se;
            se.u = es[i].u;
            se.v = es[i].v;
            se.real = es[i].real;
            if (es[i].pair != kNone) {
                se.link = pos[es[i].to];
                twins[es[i].pair].push_back({k, i});
                if (es[i].pair == parent_pair[order[k]]) {
                    dst.parent = se.link;
                    dst.parent_edge = i;
                    dst.pole_u = se.u;
                    dst.pole_v = se.v;
                } else {
                    dst.children.push_back(se.link);
                }
            }
            if (se.real != kNone) t.q_node[se.real] = k;
            dst.skeleton.push_back(se);
        }
    }
    for (const auto& tw : twins) {
        if (tw.empty()) continue;
        if (tw.size() != 2) throw std::logic_error("tree edge without two ends");
        t.nodes[tw[0].first].skeleton[tw[0].second].link_edge = tw[1].second;
        t.nodes[tw[1].first].skeleton[tw[1].second].link_edge = tw[0].second;
    }
    if (t.skeleton_size() > 8 * g.m() + 8) throw std::logic_error("skeletons exceed the linear size bound");
    return t;
}

std::vector<Edge> pertinent_edges(const SpqrTree& t, int node) {
    if (t.nodes[node].parent == kNone) throw RootHasNoParent("node " + std::to_string(node) + " is the root");
    std::vector<Edge> out;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        const SpqrNode& nd = t.nodes[x];
        if (nd.kind == NodeKind::Q) out.push_back(nd.skeleton[0].real);
        for (int c : nd.children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

PertinentGraph pertinent(const MultiGraph& g, const SpqrTree& t, int node) {
    PertinentGraph p;
    p.node = node;
    p.edges = pertinent_edges(t, node);
    p.graph = induced_on_edges(g, p.edges, &p.map);
    p.pole_u = t.nodes[node].pole_u;
    p.pole_v = t.nodes[node].pole_v;
    return p;
}

std::string dump(const SpqrTree& t) {
    std::ostringstream out;
    out << "spqr " << t.nodes.size() << " root " << t.root << " edge " << t.root_edge << '\n';
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const SpqrNode& nd = t.nodes[i];
        out << "node " << i << ' ' << to_char(nd.kind) << " parent ";
        if (nd.parent == kNone)
            out << '-';
        else
            out << nd.parent;
        out << " poles " << nd.pole_u << ' ' << nd.pole_v << '\n';
        for (const auto& e : nd.skeleton) {
            out << "  " << e.u << ' ' << e.v;
            if (e.real != kNone)
                out << " real " << e.real;
            else
                out << " virtual " << e.link;
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace cubaug
