#include "cubaug/factor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "cubaug/error.hpp"

namespace cubaug {

int gap_length(const DegreeSet& b) {
    int best = 0;
    for (std::size_t i = 1; i < b.size(); ++i) best = std::max(best, b[i] - b[i - 1] - 1);
    return best;
}

bool no_two_consecutive_forbidden(const DegreeSet& b, int degree) {
    auto has = [&](int x) { return std::binary_search(b.begin(), b.end(), x); };
    for (int i = 0; i + 1 <= degree; ++i)
        if (!has(i) && !has(i + 1)) return false;
    return true;
}

BFactorInstance::BFactorInstance(MultiGraph graph, std::vector<DegreeSet> degree_sets)
    : graph_(std::move(graph)), sets_(std::move(degree_sets)) {
    if (static_cast<int>(sets_.size()) != graph_.n())
        throw PreconditionViolated("expected " + std::to_string(graph_.n()) + " degree sets, got " +
                                   std::to_string(sets_.size()));
    for (Vertex v = 0; v < graph_.n(); ++v) {
        auto& b = sets_[v];
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        if (b.empty()) throw EmptySet("vertex " + std::to_string(v) + " has an empty degree set");
        if (b.front() < 0 || b.back() > graph_.degree(v))
            throw PreconditionViolated("degree set of vertex " + std::to_string(v) + " leaves [0, " +
                                       std::to_string(graph_.degree(v)) + "]");
        if (gap_length(b) > 1)
            throw GapTooLarge("vertex " + std::to_string(v) + " has a gap of length " + std::to_string(gap_length(b)));
    }
}

std::string to_string(FactorPath p) {
    switch (p) {
        case FactorPath::matching: return "matching";
        case FactorPath::orientation: return "orientation";
        case FactorPath::general: return "general";
    }
    return "?";
}

bool is_valid_factor(const BFactorInstance& inst, const BFactorSolution& sol) {
    const MultiGraph& g = inst.graph();
    std::vector<int> deg(g.n(), 0);
    std::vector<bool> used(g.m(), false);
    for (Edge e : sol.chosen_edges) {
        if (e < 0 || e >= g.m() || used[e]) return false;
        used[e] = true;
        ++deg[g.ends(e).first];
        ++deg[g.ends(e).second];
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (!std::binary_search(inst.degree_set(v).begin(), inst.degree_set(v).end(), deg[v])) return false;
    return true;
}

std::optional<BFactorSolution> brute_force(const BFactorInstance& inst) {
    const MultiGraph& g = inst.graph();
    if (g.m() > 25) throw TooLarge("brute force handles at most 25 edges, got " + std::to_string(g.m()));
    std::vector<unsigned> allowed(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v)
        for (int b : inst.degree_set(v)) allowed[v] |= 1u << b;
    std::vector<int> cur(g.n(), 0), rem(g.n());
    for (Vertex v = 0; v < g.n(); ++v) rem[v] = g.degree(v);
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0 && !(allowed[v] & 1u)) return std::nullopt;
    auto feasible = [&](Vertex v) {
        unsigned window = ((2u << (cur[v] + rem[v])) - 1) & ~((1u << cur[v]) - 1);
        return (allowed[v] & window) != 0;
    };
    std::vector<char> pick(g.m(), 0);
    std::function<bool(int)> rec = [&](int i) {
        if (i == g.m()) return true;
        auto [u, v] = g.ends(i);
        --rem[u];
        --rem[v];
        for (int take = 1; take >= 0; --take) {
            cur[u] += take;
            cur[v] += take;
            pick[i] = static_cast<char>(take);
            if (feasible(u) && feasible(v) && rec(i + 1)) return true;
            cur[u] -= take;
            cur[v] -= take;
        }
        ++rem[u];
        ++rem[v];
        return false;
    };
    if (!rec(0)) return std::nullopt;
    BFactorSolution s;
    for (Edge e = 0; e < g.m(); ++e)
        if (pick[e]) s.chosen_edges.push_back(e);
    return s;
}

namespace {

// Chosen degree in {lo, lo + step, ..., hi}.
struct Progression {
    int lo = 0, hi = 0, step = 1;
};

std::optional<Progression> as_progression(const DegreeSet& b) {
    if (b.size() == 1) return Progression{b[0], b[0], 1};
    int step = b[1] - b[0];
    if (step != 1 && step != 2) return std::nullopt;
    for (std::size_t i = 2; i < b.size(); ++i)
        if (b[i] - b[i - 1] != step) return std::nullopt;
    return Progression{b.front(), b.back(), step};
}

std::vector<Progression> maximal_runs(const DegreeSet& b) {
    std::vector<Progression> runs;
    for (std::size_t i = 0; i < b.size();) {
        std::size_t j = i;
        while (j + 1 < b.size() && b[j + 1] == b[j] + 1) ++j;
        runs.push_back({b[i], b[j], 1});
        i = j + 1;
    }
    return runs;
}

using MGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

// Degree-constrained subgraph with progression constraints, decided by one perfect matching.
// Every edge end gets an outer vertex. At each vertex the gadget absorbs (matches internally)
// either the unchosen ends (convention U) or the chosen ones (convention C).
class MatchingReduction {
public:
    MatchingReduction(const MultiGraph& g, const std::vector<Progression>& prog, const std::vector<char>& active)
        : g_(g), prog_(prog), active_(active) {}

    std::optional<std::vector<char>> run() {
        const int n = g_.n();
        std::vector<bool> count_chosen(n, false);
        for (Vertex v = 0; v < n; ++v) {
            if (!active_[v]) continue;
            const auto& p = prog_[v];
            int d = g_.degree(v);
            if (p.lo > d) return std::nullopt;
            count_chosen[v] = cost(d, p.lo, std::min(p.hi, d), p.step) < cost(d, d - std::min(p.hi, d), d - p.lo, p.step);
        }
        outer_.assign(g_.dart_count(), -1);
        for (Dart x = 0; x < g_.dart_count(); ++x)
            if (active_[g_.origin(x)] && active_[g_.head(x)]) outer_[x] = new_vertex();
        // Edge encodings.
        link_.assign(g_.m(), -1);
        for (Edge e = 0; e < g_.m(); ++e) {
            if (outer_[2 * e] < 0) continue;
            int a = outer_[2 * e], b = outer_[2 * e + 1];
            bool ca = count_chosen[g_.origin(2 * e)], cb = count_chosen[g_.origin(2 * e + 1)];
            if (!ca && !cb) {
                edge(a, b);
            } else if (ca && cb) {
                int z1 = new_vertex(), z2 = new_vertex();
                edge(a, z1);
                edge(z1, z2);
                edge(z2, b);
                link_[e] = z1;
            } else {
                int z = new_vertex();
                edge(a, z);
                edge(z, b);
                link_[e] = z;
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (!active_[v]) continue;
            std::vector<int> outs;
            for (Dart x : g_.darts(v))
                if (outer_[x] >= 0) outs.push_back(outer_[x]);
            int d = static_cast<int>(outs.size());
            const auto& p = prog_[v];
            int hi = std::min(p.hi, d);
            if (p.lo > hi) return std::nullopt;
            if (count_chosen[v])
                gadget(outs, p.lo, hi, p.step);
            else
                gadget(outs, d - hi, d - p.lo, p.step);
        }
        if (vertex_count_ % 2 == 1) {
            int dummy = new_vertex();
            pool_.push_back(dummy);
        }
        absorber(pool_);

        MGraph mg(vertex_count_);
        for (auto [a, b] : edges_) boost::add_edge(a, b, mg);
        std::vector<boost::graph_traits<MGraph>::vertex_descriptor> mate(vertex_count_);
        boost::edmonds_maximum_cardinality_matching(mg, &mate[0]);
        const auto null = boost::graph_traits<MGraph>::null_vertex();
        for (int x = 0; x < vertex_count_; ++x)
            if (mate[x] == null) return std::nullopt;

        std::vector<char> chosen(g_.m(), 0);
        for (Edge e = 0; e < g_.m(); ++e) {
            if (outer_[2 * e] < 0) continue;
            int a = outer_[2 * e], b = outer_[2 * e + 1];
            bool ca = count_chosen[g_.origin(2 * e)], cb = count_chosen[g_.origin(2 * e + 1)];
            if (!ca && !cb)
                chosen[e] = static_cast<int>(mate[a]) == b;
            else if (ca && cb)
                chosen[e] = static_cast<int>(mate[link_[e]]) == link_[e] + 1;
            else
                chosen[e] = static_cast<int>(mate[link_[e]]) == (ca ? b : a);
        }
        return chosen;
    }

private:
    // Rough size of a gadget absorbing t in [a, b] ends out of d.
    static long cost(int d, int a, int b, int step) {
        long k = b - a;
        long c = static_cast<long>(a) * d;
        if (k == 0) return c;
        if (step == 2) {
            if (b == a + 2 * ((d - a) / 2)) return c + 6L * d;
            return c + (k / 2) * (2L * d + 1);
        }
        if (b == d) return c + 7L * d;
        return c + k * (d + 4L);
    }

    int new_vertex() { return vertex_count_++; }
    void edge(int a, int b) { edges_.emplace_back(a, b); }

    // Path p1..p2k; client i hangs on p(2i-1) and p(2i). Absorbs exactly the even subsets.
    void absorber(const std::vector<int>& clients) {
        int prev = -1;
        for (int c : clients) {
            int p = new_vertex(), q = new_vertex();
            if (prev >= 0) edge(prev, p);
            edge(p, q);
            edge(c, p);
            edge(c, q);
            prev = q;
        }
    }

    void gadget(const std::vector<int>& outs, int a, int b, int step) {
        const int d = static_cast<int>(outs.size());
        for (int i = 0; i < a; ++i) {
            int x = new_vertex();
            for (int o : outs) edge(x, o);
        }
        const int k = b - a;
        if (k == 0) return;
        if (step == 2) {
            if (b == a + 2 * ((d - a) / 2)) {
                absorber(outs);
            } else {
                for (int i = 0; i < k / 2; ++i) {
                    int x = new_vertex(), y = new_vertex();
                    edge(x, y);
                    for (int o : outs) {
                        edge(x, o);
                        edge(y, o);
                    }
                }
            }
            return;
        }
        if (b == d) {
            int q = new_vertex();
            for (int o : outs) edge(q, o);
            pool_.push_back(q);
            absorber(outs);
        } else {
            for (int i = 0; i < k; ++i) {
                int z = new_vertex();
                for (int o : outs) edge(z, o);
                pool_.push_back(z);
            }
        }
    }

    const MultiGraph& g_;
    const std::vector<Progression>& prog_;
    const std::vector<char>& active_;
    std::vector<int> outer_, link_, pool_;
    std::vector<std::pair<int, int>> edges_;
    int vertex_count_ = 0;
};

class Solver {
public:
    Solver(const BFactorInstance& inst, SolveStats& stats) : inst_(inst), g_(inst.graph()), stats_(stats) {
        comp_ = connected_components(g_, &comp_count_);
    }

    std::optional<std::vector<char>> layer1(const std::vector<Progression>& prog, const std::vector<char>& active) {
        ++stats_.matching_calls;
        return MatchingReduction(g_, prog, active).run();
    }

    bool all_progressions() const {
        for (Vertex v = 0; v < g_.n(); ++v)
            if (!as_progression(inst_.degree_set(v))) return false;
        return true;
    }

    static bool gap_form(const DegreeSet& b) {
        if (b.size() < 2 || b[0] != 0 || b[1] != 2) return false;
        for (std::size_t i = 2; i < b.size(); ++i)
            if (b[i] != b[i - 1] + 1) return false;
        return true;
    }

    bool is_sink(Vertex v) const {
        const auto& b = inst_.degree_set(v);
        return b.size() == 1 && b[0] == 1 && g_.degree(v) >= 1 && g_.degree(v) <= 2;
    }

    // Bipartite with one side B = {1}, degree <= 2; other side progressions or {0} u [2, d].
    bool orientation_form() const {
        for (Edge e = 0; e < g_.m(); ++e) {
            auto [u, v] = g_.ends(e);
            if (is_sink(u) == is_sink(v)) return false;
        }
        for (Vertex v = 0; v < g_.n(); ++v) {
            if (is_sink(v)) continue;
            const auto& b = inst_.degree_set(v);
            if (!as_progression(b) && !gap_form(b)) return false;
        }
        return true;
    }

    std::vector<Progression> base_progressions() const {
        std::vector<Progression> prog(g_.n());
        for (Vertex v = 0; v < g_.n(); ++v)
            if (auto p = as_progression(inst_.degree_set(v))) prog[v] = *p;
        return prog;
    }

    std::optional<std::vector<char>> matching_path() {
        return layer1(base_progressions(), std::vector<char>(g_.n(), 1));
    }

    std::optional<std::vector<char>> orientation_path() {
        std::vector<Progression> prog = base_progressions();
        std::vector<char> result(g_.m(), 0);
        for (int c = 0; c < comp_count_; ++c) {
            std::vector<char> active(g_.n(), 0);
            std::vector<Vertex> gaps;
            int sinks = 0;
            bool all_gap = true;
            for (Vertex v = 0; v < g_.n(); ++v) {
                if (comp_[v] != c) continue;
                active[v] = 1;
                if (is_sink(v)) {
                    ++sinks;
                } else if (gap_form(inst_.degree_set(v))) {
                    gaps.push_back(v);
                } else {
                    all_gap = false;
                }
            }
            std::stable_sort(gaps.begin(), gaps.end(), [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
            auto set_parities = [&](Vertex odd) {
                for (Vertex gv : gaps) {
                    int hi = inst_.degree_set(gv).back();
                    if (gv == odd)
                        prog[gv] = {3, hi % 2 == 1 ? hi : hi - 1, 2};
                    else
                        prog[gv] = {0, hi % 2 == 0 ? hi : hi - 1, 2};
                }
            };
            std::optional<std::vector<char>> found;
            bool try_even = !all_gap || sinks % 2 == 0;
            bool try_odd = !all_gap || sinks % 2 == 1;
            if (try_even) {
                set_parities(kNone);
                found = layer1(prog, active);
            }
            for (std::size_t i = 0; !found && try_odd && i < gaps.size(); ++i) {
                if (inst_.degree_set(gaps[i]).back() < 3) continue;
                set_parities(gaps[i]);
                found = layer1(prog, active);
            }
            if (!found) return std::nullopt;
            for (Edge e = 0; e < g_.m(); ++e)
                if (comp_[g_.ends(e).first] == c && (*found)[e]) result[e] = 1;
        }
        return result;
    }

    std::optional<std::vector<char>> general_path() {
        std::vector<char> result(g_.m(), 0);
        for (int c = 0; c < comp_count_; ++c) {
            std::vector<char> active(g_.n(), 0);
            std::vector<Vertex> branch;
            std::vector<Progression> prog(g_.n());
            std::vector<std::vector<Progression>> runs(g_.n());
            for (Vertex v = 0; v < g_.n(); ++v) {
                if (comp_[v] != c) continue;
                active[v] = 1;
                const auto& b = inst_.degree_set(v);
                if (auto p = as_progression(b)) {
                    prog[v] = *p;
                } else {
                    branch.push_back(v);
                    runs[v] = maximal_runs(b);
                }
            }
            std::optional<std::vector<char>> found;
            std::function<bool(std::size_t)> rec = [&](std::size_t i) {
                if (i < branch.size() && i > 0) {
                    // Relax the undecided vertices to their hulls.
                    std::vector<Progression> relaxed = prog;
                    for (std::size_t j = i; j < branch.size(); ++j) {
                        const auto& b = inst_.degree_set(branch[j]);
                        relaxed[branch[j]] = {b.front(), b.back(), 1};
                    }
                    if (!layer1(relaxed, active)) return false;
                }
                if (i == branch.size()) {
                    found = layer1(prog, active);
                    return found.has_value();
                }
                for (const auto& r : runs[branch[i]]) {
                    prog[branch[i]] = r;
                    if (rec(i + 1)) return true;
                }
                return false;
            };
            if (!rec(0)) return std::nullopt;
            for (Edge e = 0; e < g_.m(); ++e)
                if (comp_[g_.ends(e).first] == c && (*found)[e]) result[e] = 1;
        }
        return result;
    }

private:
    const BFactorInstance& inst_;
    const MultiGraph& g_;
    SolveStats& stats_;
    std::vector<int> comp_;
    int comp_count_ = 0;
};

}  // namespace

std::optional<BFactorSolution> solve(const BFactorInstance& inst, const SolveOptions& opt, SolveStats* stats) {
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    st = {};
    Solver s(inst, st);
    std::optional<std::vector<char>> chosen;
    if (opt.force_general) {
        st.path = FactorPath::general;
        chosen = s.general_path();
    } else if (s.all_progressions()) {
        st.path = FactorPath::matching;
        chosen = s.matching_path();
    } else if (s.orientation_form()) {
        st.path = FactorPath::orientation;
        chosen = s.orientation_path();
    } else {
        st.path = FactorPath::general;
        chosen = s.general_path();
    }
    if (!chosen) return std::nullopt;
    BFactorSolution sol;
    for (Edge e = 0; e < inst.graph().m(); ++e)
        if ((*chosen)[e]) sol.chosen_edges.push_back(e);
    if (!is_valid_factor(inst, sol)) throw InvalidSolution("factor solver produced an invalid edge set");
    return sol;
}

}  // namespace cubaug
