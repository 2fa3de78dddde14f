#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubaug/graph.hpp"

namespace cubaug {

using DegreeSet = std::vector<int>;  // sorted, distinct

// Longest run of missing values strictly between two members of b.
int gap_length(const DegreeSet& b);
// No i, i+1 in [0, degree] are both missing.
bool no_two_consecutive_forbidden(const DegreeSet& b, int degree);

class BFactorInstance {
public:
    BFactorInstance() = default;
    // Sorts and deduplicates the sets. Throws EmptySet, PreconditionViolated (value out of
    // [0, deg]) or GapTooLarge.
    BFactorInstance(MultiGraph graph, std::vector<DegreeSet> degree_sets);

    const MultiGraph& graph() const { return graph_; }
    const DegreeSet& degree_set(Vertex v) const { return sets_[v]; }
    const std::vector<DegreeSet>& degree_sets() const { return sets_; }

private:
    MultiGraph graph_;
    std::vector<DegreeSet> sets_;
};

struct BFactorSolution {
    std::vector<Edge> chosen_edges;  // ascending
};

enum class FactorPath { matching, orientation, general };
std::string to_string(FactorPath p);

struct SolveOptions {
    // Skip the polynomial layers and branch over every non-progression set.
    bool force_general = false;
};

struct SolveStats {
    FactorPath path = FactorPath::matching;
    long matching_calls = 0;
};

std::optional<BFactorSolution> solve(const BFactorInstance& inst, const SolveOptions& opt = {},
                                     SolveStats* stats = nullptr);

// Exhaustive search; |E| <= 25 or TooLarge.
std::optional<BFactorSolution> brute_force(const BFactorInstance& inst);

bool is_valid_factor(const BFactorInstance& inst, const BFactorSolution& sol);

}  // namespace cubaug
