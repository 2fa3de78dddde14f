#include "cubaug/oracle.hpp"

#include <algorithm>

namespace cubaug::oracle {
namespace {

// Pendant counts reachable on one side that k white vertices send their edge into, capped at 3.
// One white can only take a single leaf; two or more can close up among themselves or carry leaves.
std::vector<int> side_counts(int k) {
    if (k == 0) return {0};
    if (k == 1) return {1};
    return {0, 1, 2, 3};
}

}  // namespace

std::vector<int> faces_at(const MultiGraph& g, const FaceStructure& fs, Vertex v) {
    std::vector<int> out;
    if (g.degree(v) == 0) return {fs.face_of_vertex[v]};
    for (Dart d : g.darts(v)) out.push_back(fs.face_of_dart[d]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MultiGraph add_stars(MultiGraph h, const std::vector<std::vector<Vertex>>& per_face, bool edge_for_two) {
    for (const auto& vs : per_face) {
        if (vs.empty()) continue;
        if (edge_for_two && vs.size() == 2) {
            h.add_edge(vs[0], vs[1]);
            continue;
        }
        Vertex c = h.add_vertex();
        for (Vertex v : vs) h.add_edge(c, v);
    }
    return h;
}

bool star_oracle_2con(const MultiGraph& g, const Embedding& e) {
    FaceStructure fs = faces_of(g, e);
    std::vector<Vertex> open;
    std::vector<std::vector<int>> options;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 2) {
            open.push_back(v);
            options.push_back(faces_at(g, fs, v));
        }
    std::vector<std::size_t> pick(open.size(), 0);
    while (true) {
        std::vector<std::vector<Vertex>> per_face(fs.faces.size());
        for (std::size_t i = 0; i < open.size(); ++i) per_face[options[i][pick[i]]].push_back(open[i]);
        bool lonely = std::any_of(per_face.begin(), per_face.end(), [](const auto& vs) { return vs.size() == 1; });
        if (!lonely && edge_connectivity(add_stars(g, per_face, true)) >= 2) return true;
        std::size_t i = 0;
        while (i < open.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == open.size()) return false;
    }
}

bool star_oracle_1con(const MultiGraph& g, const Embedding& e) {
    FaceStructure fs = faces_of(g, e);
    std::vector<std::pair<Vertex, int>> slots;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) < 3)
            for (int f : faces_at(g, fs, v)) slots.push_back({v, f});
    const unsigned total = 1u << slots.size();
    for (unsigned mask = 0; mask < total; ++mask) {
        std::vector<int> used(g.n(), 0);
        std::vector<std::vector<Vertex>> per_face(fs.faces.size());
        bool ok = true;
        for (std::size_t i = 0; i < slots.size() && ok; ++i)
            if ((mask >> i) & 1u) {
                auto [v, f] = slots[i];
                ok = ++used[v] <= 3 - g.degree(v);
                per_face[f].push_back(v);
            }
        if (!ok) continue;
        int count = 0;
        connected_components(add_stars(g, per_face, false), &count);
        if (count == 1) return true;
    }
    return false;
}

std::set<std::pair<int, int>> inner_augmentations(const ClosedUv& c) {
    const MultiGraph& g = c.graph;
    FaceStructure fs = faces_of(g, c.embedding);
    const int fa = fs.face_of_dart[2 * c.closing], fb = fs.face_of_dart[2 * c.closing + 1];
    std::vector<std::vector<int>> options;
    for (Vertex x = 0; x < g.n(); ++x)
        if (x != c.u() && x != c.v() && g.degree(x) == 2) options.push_back(faces_at(g, fs, x));
    std::set<std::pair<int, int>> out;
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
        std::vector<int> count(fs.faces.size(), 0);
        for (std::size_t i = 0; i < options.size(); ++i) ++count[options[i][pick[i]]];
        bool ok = true;
        for (int f = 0; f < static_cast<int>(count.size()); ++f)
            if (f != fa && f != fb && count[f] == 1) ok = false;
        if (ok)
            for (int a : side_counts(count[fa]))
                for (int b : side_counts(count[fb])) out.insert({a, b});
        std::size_t i = 0;
        while (i < options.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == options.size()) return out;
    }
}

LabelSet inner_label_set(const ClosedUv& c) {
    LabelSet s;
    s.kind = LabelKind::embedded;
    for (auto [a, b] : inner_augmentations(c))
        if (a <= 1 && b <= 1) s.insert(a, b);
    return s;
}

}  // namespace cubaug::oracle
