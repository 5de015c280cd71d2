#pragma once

#include <vector>

namespace lrsynth {

/// Adjacency list over nodes 0..n-1.
using Digraph = std::vector<std::vector<int>>;

/// Strongly connected components (Tarjan, iterative). Component ids are
/// assigned in reverse topological order: a component only has edges into
/// components with a smaller or equal id.
struct SccResult {
    std::vector<int> component;  // node -> component id
    int count = 0;
};

SccResult strongly_connected_components(const Digraph& graph);

/// Nodes reachable from the given sources (inclusive), as a membership mask.
std::vector<bool> reachable_from(const Digraph& graph, const std::vector<int>& sources);

}  // namespace lrsynth
