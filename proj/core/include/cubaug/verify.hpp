#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubaug/embedding.hpp"
#include "cubaug/fixed_aug.hpp"
#include "cubaug/graph.hpp"

namespace cubaug {

struct VerifyCheck {
    std::string name;  // cubic, planar, subgraph, connectivity, extends
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    bool ok = false;
    std::vector<VerifyCheck> checks;
    // One "name PASS|FAIL detail" line per check.
    std::string to_string() const;
    const VerifyCheck* find(const std::string& name) const;
};

// Checks that result.h is a k-edge-connected planar 3-regular supergraph of g and, when e is
// given, that its embedding extends e. Uses graph and embedding primitives only.
VerifyReport verify_augmentation(const MultiGraph& g, const std::optional<Embedding>& e,
                                 const AugmentationResult& result, int k);

}  // namespace cubaug
