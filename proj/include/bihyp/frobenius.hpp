#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bihyp/arithmetic.hpp"
#include "bihyp/classify.hpp"
#include "bihyp/model.hpp"

namespace bihyp {

// Values of the epsilon characters at Frobenius, per (cluster, picture).
struct EpsilonTable {
    std::map<std::pair<int, int>, int> entries; // (cluster id, Pidx as int) -> +1/-1

    std::optional<int> get(int cluster, Pidx idx) const {
        auto it = entries.find({cluster, static_cast<int>(idx)});
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
    void set(int cluster, Pidx idx, int value) {
        entries[{cluster, static_cast<int>(idx)}] = value;
    }
};

// A picture automorphism (color- and depth-preserving, fixing the root)
// together with the epsilon data the graph rules consume.
struct FrobeniusAction {
    std::vector<int> cluster_perm; // node id -> node id
    EpsilonTable eps;
};

// Throws unless cluster_perm is a structure-preserving automorphism.
void validate_action(const Picture& pic, const FrobeniusAction& action);

struct GraphAutomorphism {
    std::vector<int> vertex_map;              // vertex index -> vertex index
    std::vector<std::pair<int, int>> edge_map; // edge index -> (edge index, sign)
};

// The (cluster, picture) pairs whose epsilon value the rules will consult
// for this graph.
std::vector<std::pair<int, Pidx>> demanded_eps(const DualGraph& g, const Classification& cls);

// Applies the Frobenius rules to the graph. Every vertex and edge is moved
// by exactly one rule; missing or inconsistent epsilon entries and rule
// conflicts raise domain_error.
GraphAutomorphism act(const DualGraph& g, const Classification& cls,
                      const FrobeniusAction& action);

// Arithmetic mode: permutation from the root Frobenius, epsilon entries from
// the context, restricted to exactly the pairs the rules demand.
FrobeniusAction action_from_context(const Picture& pic, const Classification& cls,
                                    const ArithContext& ctx, const DualGraph& g);

std::string automorphism_text(const DualGraph& g, const GraphAutomorphism& a);

} // namespace bihyp
