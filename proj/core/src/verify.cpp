#include "cubaug/verify.hpp"

#include <sstream>

#include "cubaug/error.hpp"

namespace cubaug {

std::string VerifyReport::to_string() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << c.name << ' ' << (c.passed ? "PASS" : "FAIL");
        if (!c.detail.empty()) out << ' ' << c.detail;
        out << '\n';
    }
    return out.str();
}

const VerifyCheck* VerifyReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerifyReport verify_augmentation(const MultiGraph& g, const std::optional<Embedding>& e,
                                 const AugmentationResult& result, int k) {
    VerifyReport rep;
    const MultiGraph& h = result.h;
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    Vertex bad = kNone;
    for (Vertex v = 0; v < h.n() && bad == kNone; ++v)
        if (h.degree(v) != 3) bad = v;
    add("cubic", bad == kNone,
        bad == kNone ? "" : "vertex " + std::to_string(bad) + " has degree " + std::to_string(h.degree(bad)));

    bool planar = false;
    std::string why;
    try {
        planar = validate_planarity(h, result.h_embedding);
        if (!planar) why = "Euler count fails";
    } catch (const Error& ex) {
        why = ex.what();
    }
    add("planar", planar, why);

    Inclusion inc;
    bool sub = false;
    try {
        if (result.edge_map.size() == static_cast<std::size_t>(g.m()) && g.m() > 0)
            inc = Inclusion{result.vertex_map, result.edge_map};
        else
            inc = complete_inclusion(g, h, result.vertex_map);
        std::vector<bool> vused(h.n(), false), eused(h.m(), false);
        if (inc.vertex.size() != static_cast<std::size_t>(g.n())) throw NotSubgraph("vertex map size");
        for (Vertex v : inc.vertex) {
            if (v < 0 || v >= h.n() || vused[v]) throw NotSubgraph("vertex map is not injective");
            vused[v] = true;
        }
        for (Edge x = 0; x < g.m(); ++x) {
            Edge y = inc.edge[x];
            if (y < 0 || y >= h.m() || eused[y]) throw NotSubgraph("edge map is not injective");
            eused[y] = true;
            auto [a, b] = g.ends(x);
            auto [p, q] = h.ends(y);
            Vertex ha = inc.vertex[a], hb = inc.vertex[b];
            if (!((p == ha && q == hb) || (p == hb && q == ha)))
                throw NotSubgraph("edge " + std::to_string(x) + " maps to an edge with other ends");
        }
        sub = true;
    } catch (const Error& ex) {
        why = ex.what();
    }
    add("subgraph", sub, sub ? "" : why);

    int theta = edge_connectivity(h);
    add("connectivity", h.n() > 0 && theta >= k, "theta=" + std::to_string(theta) + " k=" + std::to_string(k));

    if (e) {
        bool ext = false;
        why.clear();
        if (sub && planar) {
            try {
                ext = extends(g, *e, h, result.h_embedding, inc);
                if (!ext) why = "embedding differs";
            } catch (const Error& ex) {
                why = ex.what();
            }
        } else {
            why = "skipped";
        }
        add("extends", ext, why);
    }

    rep.ok = true;
    for (const auto& c : rep.checks) rep.ok = rep.ok && c.passed;
    return rep;
}

}  // namespace cubaug
