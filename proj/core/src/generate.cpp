#include "cubaug/generate.hpp"

#include <algorithm>
#include <random>

#include "cubaug/error.hpp"

namespace cubaug {

namespace {

class Grower {
public:
    Grower(int start, std::mt19937_64& rng) : rng_(rng) {
        g_ = MultiGraph(start);
        rot_.resize(start);
        for (int i = 0; i < start; ++i) {
            Edge e = g_.add_edge(i, (i + 1) % start);
            rot_[i].push_back(2 * e);
            rot_[(i + 1) % start].push_back(2 * e + 1);
        }
    }

    int n() const { return g_.n(); }

    // Joins two degree-2 vertices of one face by a path with len inner vertices.
    bool ear(int len) {
        auto faces = walks();
        std::vector<std::vector<Dart>> open;
        for (auto& w : faces) {
            std::vector<Dart> corners;
            for (Dart d : w)
                if (g_.degree(g_.origin(d)) == 2) corners.push_back(d);
            if (corners.size() >= 2) open.push_back(std::move(corners));
        }
        if (open.empty()) return false;
        for (int attempt = 0; attempt < 8; ++attempt) {
            const auto& cs = open[pick(open.size())];
            std::size_t i = pick(cs.size()), j = pick(cs.size());
            Vertex a = g_.origin(cs[i]), b = g_.origin(cs[j]);
            if (i == j || (len == 0 && g_.find_edge(a, b) != kNone)) continue;
            Dart at_a = prev(cs[i]), at_b = prev(cs[j]);
            Vertex last = a;
            Dart after = at_a;
            for (int k = 0; k < len; ++k) {
                Vertex x = g_.add_vertex();
                rot_.emplace_back();
                Edge e = g_.add_edge(last, x);
                insert_after(last, after, 2 * e);
                rot_[x].push_back(2 * e + 1);
                last = x;
                after = 2 * e + 1;
            }
            Edge e = g_.add_edge(last, b);
            insert_after(last, after, 2 * e);
            insert_after(b, at_b, 2 * e + 1);
            return true;
        }
        return false;
    }

    void subdivide() {
        Edge e = static_cast<Edge>(pick(g_.m()));
        Vertex b = g_.head(2 * e);
        Vertex x = g_.add_vertex();
        rot_.emplace_back();
        g_.reattach(2 * e + 1, x);
        Edge f = g_.add_edge(x, b);
        std::replace(rot_[b].begin(), rot_[b].end(), 2 * e + 1, 2 * f + 1);
        rot_[x] = {2 * e + 1, 2 * f};
    }

    EmbeddedGraph done() { return {g_, connected_embedding(g_, rot_, 0)}; }

private:
    std::mt19937_64& rng_;
    MultiGraph g_;
    std::vector<std::vector<Dart>> rot_;

    std::size_t pick(std::size_t k) { return static_cast<std::size_t>(rng_() % k); }

    Dart prev(Dart d) const {
        const auto& r = rot_[g_.origin(d)];
        auto it = std::find(r.begin(), r.end(), d);
        return it == r.begin() ? r.back() : *(it - 1);
    }

    void insert_after(Vertex v, Dart after, Dart d) {
        auto& r = rot_[v];
        r.insert(std::find(r.begin(), r.end(), after) + 1, d);
    }

    std::vector<std::vector<Dart>> walks() const {
        std::vector<Dart> next(g_.dart_count());
        for (const auto& r : rot_)
            for (std::size_t i = 0; i < r.size(); ++i) next[twin(r[i])] = r[(i + 1) % r.size()];
        std::vector<char> seen(g_.dart_count(), 0);
        std::vector<std::vector<Dart>> out;
        for (Dart s = 0; s < g_.dart_count(); ++s) {
            if (seen[s]) continue;
            out.emplace_back();
            for (Dart d = s; !seen[d]; d = next[d]) {
                seen[d] = 1;
                out.back().push_back(d);
            }
        }
        return out;
    }
};

// Cubic plane graph grown from K4: subdivide two edges of one face and join the new vertices inside it.
class CubicGrower {
public:
    explicit CubicGrower(std::mt19937_64& rng) : rng_(rng) {
        g_ = MultiGraph(4);
        for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}}) g_.add_edge(a, b);
        // Vertex 0 in the middle of triangle 1-2-3.
        rot_ = {{0, 2, 4}, {1, 11, 6}, {3, 7, 8}, {5, 9, 10}};
    }

    int n() const { return g_.n(); }

    void step() {
        Dart d = static_cast<Dart>(rng_() % g_.dart_count());
        std::vector<Dart> walk{d};
        for (Dart x = next(d); x != d; x = next(x)) walk.push_back(x);
        Dart d2 = walk[1 + rng_() % (walk.size() - 1)];
        Dart ax = subdivide(d), ay = subdivide(d2);
        Vertex x = g_.origin(ax), y = g_.origin(ay);
        Edge e = g_.add_edge(x, y);
        insert_after(x, ax, 2 * e);
        insert_after(y, ay, 2 * e + 1);
    }

    EmbeddedGraph done() { return {g_, connected_embedding(g_, rot_, 0)}; }

private:
    std::mt19937_64& rng_;
    MultiGraph g_;
    std::vector<std::vector<Dart>> rot_;

    Dart next(Dart d) const {
        const auto& r = rot_[g_.head(d)];
        auto it = std::find(r.begin(), r.end(), twin(d));
        return ++it == r.end() ? r.front() : *it;
    }

    void insert_after(Vertex v, Dart after, Dart d) {
        auto& r = rot_[v];
        r.insert(std::find(r.begin(), r.end(), after) + 1, d);
    }

    // Splits d's edge by a new vertex; returns its dart back towards origin(d). The corner just
    // after that dart lies in the face left of d.
    Dart subdivide(Dart d) {
        Edge e = edge_of(d);
        Vertex b = g_.head(2 * e);
        Vertex x = g_.add_vertex();
        rot_.emplace_back();
        g_.reattach(2 * e + 1, x);
        Edge f = g_.add_edge(x, b);
        std::replace(rot_[b].begin(), rot_[b].end(), 2 * e + 1, 2 * f + 1);
        rot_[x] = {2 * e + 1, 2 * f};
        return d == 2 * e ? 2 * e + 1 : 2 * f;
    }
};

}  // namespace

EmbeddedGraph random_cubic_planar(int n, std::uint64_t seed) {
    if (n < 4 || n % 2) throw PreconditionViolated("cubic graphs need an even n >= 4");
    std::mt19937_64 rng(seed);
    CubicGrower gr(rng);
    while (gr.n() < n) gr.step();
    return gr.done();
}

EmbeddedGraph random_augmentable_subcubic(int n, std::uint64_t seed) {
    EmbeddedGraph h = random_cubic_planar(n, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Edge> order(h.graph.m());
    for (Edge e = 0; e < h.graph.m(); ++e) order[e] = e;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> used(h.graph.n(), 0);
    std::vector<Edge> drop;
    for (Edge e : order) {
        auto [a, b] = h.graph.ends(e);
        if (used[a] || used[b] || drop.size() * 8 >= static_cast<std::size_t>(h.graph.m())) continue;
        used[a] = used[b] = 1;
        drop.push_back(e);
    }
    while (true) {
        IdMap map;
        MultiGraph g = remove_edges(h.graph, drop, &map);
        auto rep = analyze_connectivity(g);
        if (drop.empty() || (rep.component_count == 1 && rep.cut_vertices.empty())) {
            auto rot = remap_rotation(h.embedding, map, g.n());
            return {g, connected_embedding(g, std::move(rot), 0)};
        }
        drop.resize(drop.size() / 2);
    }
}

EmbeddedGraph random_planar_subcubic(int n, bool biconnected, std::uint64_t seed) {
    if (n < 1) throw PreconditionViolated("need at least one vertex");
    std::mt19937_64 rng(seed);
    EmbeddedGraph out;
    if (n < 3) {
        out.graph = MultiGraph(n);
        if (n == 2) out.graph.add_edge(0, 1);
        out.embedding = embedding_with_toplevel(out.graph, n == 2 ? std::vector<std::vector<Dart>>{{0}, {1}}
                                                                  : std::vector<std::vector<Dart>>{{}});
        return out;
    }
    Grower gr(std::min(n, 3 + static_cast<int>(rng() % 4)), rng);
    while (gr.n() < n) {
        int len = std::min(n - gr.n(), 1 + static_cast<int>(rng() % 3));
        if (!gr.ear(len)) gr.subdivide();
    }
    const int chords = static_cast<int>(rng() % (n / 6 + 1));
    for (int i = 0; i < chords; ++i) gr.ear(0);
    out = gr.done();
    if (biconnected) return out;

    std::vector<Edge> drop;
    for (Edge e = 0; e < out.graph.m(); ++e)
        if (rng() % 6 == 0) drop.push_back(e);
    IdMap map;
    MultiGraph g = remove_edges(out.graph, drop, &map);
    auto rot = remap_rotation(out.embedding, map, g.n());
    out.embedding = embedding_with_toplevel(g, std::move(rot));
    out.graph = std::move(g);
    return out;
}

}  // namespace cubaug
