#include "cubaug/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>

#include "cubaug/error.hpp"

namespace cubaug {

MultiGraph::MultiGraph(int n, Tag tag) : out_(n), tag_(n, tag) {}

Vertex MultiGraph::add_vertex(Tag tag) {
    out_.emplace_back();
    tag_.push_back(tag);
    return n() - 1;
}

Edge MultiGraph::add_edge(Vertex u, Vertex v) {
    if (u == v) throw LoopPresent("edge at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n() || v >= n()) throw PreconditionViolated("edge endpoint out of range");
    Edge e = m();
    origin_.push_back(u);
    origin_.push_back(v);
    out_[u].push_back(2 * e);
    out_[v].push_back(2 * e + 1);
    return e;
}

void MultiGraph::reattach(Dart d, Vertex w) {
    Vertex old = origin_[d];
    if (old == w) return;
    if (origin_[twin(d)] == w) throw LoopPresent("reattach would create a loop at " + std::to_string(w));
    auto& lst = out_[old];
    lst.erase(std::find(lst.begin(), lst.end(), d));
    origin_[d] = w;
    out_[w].push_back(d);
}

Vertex MultiGraph::other(Edge e, Vertex v) const {
    return origin_[2 * e] == v ? origin_[2 * e + 1] : origin_[2 * e];
}

Dart MultiGraph::dart_from(Edge e, Vertex v) const {
    if (origin_[2 * e] == v) return 2 * e;
    if (origin_[2 * e + 1] == v) return 2 * e + 1;
    return kNone;
}

std::vector<Vertex> MultiGraph::neighbors(Vertex v) const {
    std::vector<Vertex> r;
    r.reserve(out_[v].size());
    for (Dart d : out_[v]) r.push_back(head(d));
    return r;
}

int MultiGraph::max_degree() const {
    int r = 0;
    for (auto& l : out_) r = std::max(r, static_cast<int>(l.size()));
    return r;
}

int MultiGraph::min_degree() const {
    if (out_.empty()) return 0;
    int r = static_cast<int>(out_[0].size());
    for (auto& l : out_) r = std::min(r, static_cast<int>(l.size()));
    return r;
}

bool MultiGraph::is_simple() const {
    std::vector<int> mark(n(), -1);
    for (Vertex v = 0; v < n(); ++v) {
        for (Dart d : out_[v]) {
            Vertex w = head(d);
            if (mark[w] == v) return false;
            mark[w] = v;
        }
    }
    return true;
}

Edge MultiGraph::find_edge(Vertex u, Vertex v) const {
    for (Dart d : out_[u])
        if (head(d) == v) return edge_of(d);
    return kNone;
}

namespace {

MultiGraph rebuild(const MultiGraph& g, const std::vector<char>& keep_v, const std::vector<char>& keep_e, IdMap* map) {
    MultiGraph r;
    IdMap local;
    IdMap& mp = map ? *map : local;
    mp.vertex.assign(g.n(), kNone);
    mp.edge.assign(g.m(), kNone);
    for (Vertex v = 0; v < g.n(); ++v)
        if (keep_v[v]) mp.vertex[v] = r.add_vertex(g.tag(v));
    for (Edge e = 0; e < g.m(); ++e) {
        if (!keep_e[e]) continue;
        auto [u, v] = g.ends(e);
        if (mp.vertex[u] == kNone || mp.vertex[v] == kNone) continue;
        mp.edge[e] = r.add_edge(mp.vertex[u], mp.vertex[v]);
    }
    return r;
}

}  // namespace

MultiGraph remove_edges(const MultiGraph& g, const std::vector<Edge>& drop, IdMap* map) {
    std::vector<char> kv(g.n(), 1), ke(g.m(), 1);
    for (Edge e : drop) ke[e] = 0;
    return rebuild(g, kv, ke, map);
}

MultiGraph remove_vertices(const MultiGraph& g, const std::vector<Vertex>& drop, IdMap* map) {
    std::vector<char> kv(g.n(), 1), ke(g.m(), 1);
    for (Vertex v : drop) kv[v] = 0;
    return rebuild(g, kv, ke, map);
}

MultiGraph induced_on_edges(const MultiGraph& g, const std::vector<Edge>& keep, IdMap* map) {
    std::vector<char> kv(g.n(), 0), ke(g.m(), 0);
    for (Edge e : keep) {
        ke[e] = 1;
        auto [u, v] = g.ends(e);
        kv[u] = kv[v] = 1;
    }
    return rebuild(g, kv, ke, map);
}

Vertex append_graph(MultiGraph& g, const MultiGraph& h, Edge* edge_offset) {
    Vertex off = g.n();
    if (edge_offset) *edge_offset = g.m();
    for (Vertex v = 0; v < h.n(); ++v) g.add_vertex(h.tag(v));
    for (Edge e = 0; e < h.m(); ++e) {
        auto [u, v] = h.ends(e);
        g.add_edge(u + off, v + off);
    }
    return off;
}

std::vector<int> connected_components(const MultiGraph& g, int* count) {
    std::vector<int> comp(g.n(), -1);
    int c = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Dart d : g.darts(v)) {
                Vertex w = g.head(d);
                if (comp[w] == -1) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

namespace {

struct Lowpoint {
    std::vector<std::vector<Edge>> blocks;
    std::vector<Edge> bridges;
    std::vector<Vertex> cut_vertices;
};

Lowpoint lowpoint_dfs(const MultiGraph& g) {
    Lowpoint out;
    const int n = g.n();
    std::vector<int> disc(n, -1), low(n, 0), next(n, 0);
    std::vector<Edge> parent_edge(n, kNone);
    std::vector<char> is_cut(n, 0);
    std::vector<Edge> estack;
    std::vector<Vertex> vstack;
    int timer = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (disc[s] != -1 || g.degree(s) == 0) continue;
        disc[s] = low[s] = timer++;
        int root_children = 0;
        vstack.push_back(s);
        while (!vstack.empty()) {
            Vertex v = vstack.back();
            if (next[v] < g.degree(v)) {
                Dart d = g.darts(v)[next[v]++];
                Edge e = edge_of(d);
                if (e == parent_edge[v]) continue;
                Vertex w = g.head(d);
                if (disc[w] == -1) {
                    estack.push_back(e);
                    disc[w] = low[w] = timer++;
                    parent_edge[w] = e;
                    if (v == s) ++root_children;
                    vstack.push_back(w);
                } else if (disc[w] < disc[v]) {
                    estack.push_back(e);
                    low[v] = std::min(low[v], disc[w]);
                }
                continue;
            }
            vstack.pop_back();
            if (parent_edge[v] == kNone) continue;
            Vertex p = g.other(parent_edge[v], v);
            low[p] = std::min(low[p], low[v]);
            if (low[v] >= disc[p]) {
                std::vector<Edge> block;
                while (true) {
                    Edge e = estack.back();
                    estack.pop_back();
                    block.push_back(e);
                    if (e == parent_edge[v]) break;
                }
                std::sort(block.begin(), block.end());
                out.blocks.push_back(std::move(block));
                if (p != s) is_cut[p] = 1;
            }
            if (low[v] > disc[p]) out.bridges.push_back(parent_edge[v]);
        }
        if (root_children >= 2) is_cut[s] = 1;
    }
    for (Vertex v = 0; v < n; ++v)
        if (is_cut[v]) out.cut_vertices.push_back(v);
    std::sort(out.bridges.begin(), out.bridges.end());
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

bool connected_without(const MultiGraph& g, Edge a, Edge b) {
    if (g.n() == 0) return true;
    std::vector<char> seen(g.n(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Dart d : g.darts(v)) {
            Edge e = edge_of(d);
            if (e == a || e == b) continue;
            Vertex w = g.head(d);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == g.n();
}

// Unit-capacity max flow between s and t, stopping at cap.
int unit_flow(const MultiGraph& g, Vertex s, Vertex t, int cap) {
    // flow[d] = 1 when one unit is routed along dart d.
    std::vector<int> flow(g.dart_count(), 0);
    int value = 0;
    std::vector<Dart> via(g.n());
    while (value < cap) {
        std::fill(via.begin(), via.end(), kNone);
        std::vector<char> seen(g.n(), 0);
        std::deque<Vertex> q{s};
        seen[s] = 1;
        while (!q.empty() && !seen[t]) {
            Vertex v = q.front();
            q.pop_front();
            for (Dart d : g.darts(v)) {
                Vertex w = g.head(d);
                if (seen[w]) continue;
                // residual along d: capacity 1 plus any flow on twin(d) can be cancelled
                if (flow[d] - flow[twin(d)] >= 1) continue;
                seen[w] = 1;
                via[w] = d;
                q.push_back(w);
            }
        }
        if (!seen[t]) break;
        for (Vertex v = t; v != s; v = g.origin(via[v])) {
            Dart d = via[v];
            if (flow[twin(d)] > 0)
                --flow[twin(d)];
            else
                ++flow[d];
        }
        ++value;
    }
    return value;
}

}  // namespace

std::vector<Edge> bridges_of(const MultiGraph& g) { return lowpoint_dfs(g).bridges; }

std::pair<Edge, Edge> find_two_edge_cut(const MultiGraph& g) {
    const int n = g.n();
    if (n == 0) return {kNone, kNone};
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<unsigned long long>(g.m()));
    std::vector<std::uint64_t> label(g.m(), 0), acc(n, 0);
    std::vector<Edge> parent_edge(n, kNone);
    std::vector<int> order;
    std::vector<char> seen(n, 0), tree(g.m(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (Dart d : g.darts(v)) {
            Vertex w = g.head(d);
            if (!seen[w]) {
                seen[w] = 1;
                parent_edge[w] = edge_of(d);
                tree[edge_of(d)] = 1;
                stack.push_back(w);
            }
        }
    }
    for (Edge e = 0; e < g.m(); ++e) {
        if (tree[e]) continue;
        label[e] = rng() | 1;
        auto [u, v] = g.ends(e);
        acc[u] ^= label[e];
        acc[v] ^= label[e];
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        if (parent_edge[v] == kNone) continue;
        label[parent_edge[v]] = acc[v];
        acc[g.other(parent_edge[v], v)] ^= acc[v];
    }
    std::vector<Edge> idx(g.m());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](Edge a, Edge b) { return label[a] != label[b] ? label[a] < label[b] : a < b; });
    for (size_t i = 0; i + 1 < idx.size();) {
        size_t j = i;
        while (j < idx.size() && label[idx[j]] == label[idx[i]]) ++j;
        for (size_t k = i + 1; k < j; ++k)
            if (!connected_without(g, idx[i], idx[k])) return {idx[i], idx[k]};
        i = j;
    }
    return {kNone, kNone};
}

int edge_connectivity(const MultiGraph& g) {
    int comps = 0;
    connected_components(g, &comps);
    if (comps != 1 || g.n() <= 1) return 0;
    if (!bridges_of(g).empty()) return 1;
    if (find_two_edge_cut(g).first != kNone) return 2;
    int cap = g.min_degree();
    if (cap <= 3) return cap;
    int best = cap;
    for (Vertex t = 1; t < g.n(); ++t) best = std::min(best, unit_flow(g, 0, t, best));
    return best;
}

bool edge_connectivity_at_least(const MultiGraph& g, int k) {
    if (k <= 0) return true;
    int comps = 0;
    connected_components(g, &comps);
    if (comps != 1 || g.n() <= 1) return false;
    if (k == 1) return true;
    if (!bridges_of(g).empty()) return false;
    if (k == 2) return true;
    if (g.min_degree() < k) return false;
    if (find_two_edge_cut(g).first != kNone) return false;
    if (k == 3) return true;
    return edge_connectivity(g) >= k;
}

ConnectivityReport analyze_connectivity(const MultiGraph& g) {
    ConnectivityReport r;
    r.component_of = connected_components(g, &r.component_count);
    Lowpoint lp = lowpoint_dfs(g);
    r.blocks = std::move(lp.blocks);
    r.bridges = std::move(lp.bridges);
    r.cut_vertices = std::move(lp.cut_vertices);
    r.edge_connectivity = edge_connectivity(g);
    return r;
}

WheelExtension wheel_extension(const MultiGraph& g, Vertex v, const std::vector<Dart>& order) {
    const int l = g.degree(v);
    if (l < 3) throw DegreeTooSmall("wheel extension needs degree >= 3, vertex " + std::to_string(v) + " has " + std::to_string(l));
    std::vector<Dart> ds = order.empty() ? g.darts(v) : order;
    if (static_cast<int>(ds.size()) != l) throw PreconditionViolated("wheel order must list every dart at v");
    WheelExtension w;
    w.graph = g;
    MultiGraph& h = w.graph;
    w.attach.resize(l);
    w.attach[0] = v;
    for (int i = 1; i < l; ++i) w.attach[i] = h.add_vertex(Tag::gadget);
    for (int i = 0; i < l; ++i) w.rim.push_back(h.add_vertex(Tag::gadget));
    for (int i = 0; i < l; ++i) w.hub.push_back(h.add_vertex(Tag::gadget));
    for (int i = 1; i < l; ++i) h.reattach(ds[i], w.attach[i]);
    for (int i = 0; i < l; ++i) {
        h.add_edge(w.rim[i], w.attach[i]);
        h.add_edge(w.attach[i], w.rim[(i + 1) % l]);
        h.add_edge(w.rim[i], w.hub[i]);
        h.add_edge(w.hub[i], w.hub[(i + 1) % l]);
    }
    return w;
}

MultiGraph k4_chain_gadget(int a) {
    if (a < 1) throw InvalidArity("K4 chain needs a >= 1, got " + std::to_string(a));
    MultiGraph g(4, Tag::gadget);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    Vertex prev = 0;
    for (int i = 0; i < a; ++i) {
        Vertex w = g.add_vertex(Tag::gadget);
        g.add_edge(prev, w);
        prev = w;
    }
    g.add_edge(prev, 1);
    return g;
}

ParallelEdgeGadget parallel_edge_gadget(const MultiGraph& g, Edge e) {
    ParallelEdgeGadget r;
    r.graph = g;
    MultiGraph& h = r.graph;
    auto [u, v] = g.ends(e);
    Vertex p = h.add_vertex(Tag::gadget), q = h.add_vertex(Tag::gadget);
    Vertex s = h.add_vertex(Tag::gadget), t = h.add_vertex(Tag::gadget);
    r.a = h.add_vertex(Tag::gadget);
    r.b = h.add_vertex(Tag::gadget);
    // K4 on p,q,s,t with p-q subdivided by a, b.
    h.add_edge(p, s);
    h.add_edge(p, t);
    h.add_edge(q, s);
    h.add_edge(q, t);
    h.add_edge(s, t);
    h.add_edge(p, r.a);
    h.add_edge(r.a, r.b);
    h.add_edge(r.b, q);
    h.reattach(2 * e + 1, r.a);
    r.new_edge = h.add_edge(r.b, v);
    r.added = {p, q, s, t, r.a, r.b};
    (void)u;
    return r;
}

}  // namespace cubaug
