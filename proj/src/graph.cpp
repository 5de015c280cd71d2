#include "lrsynth/graph.hpp"

#include <algorithm>
#include <utility>

namespace lrsynth {

SccResult strongly_connected_components(const Digraph& graph) {
    const int n = static_cast<int>(graph.size());
    SccResult result;
    result.component.assign(n, -1);

    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;

    // (node, next edge position)
    std::vector<std::pair<int, size_t>> frames;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < graph[v].size()) {
                const int w = graph[v][pos++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    result.component[w] = result.count;
                } while (w != v);
                ++result.count;
            }
            const int finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                int parent = frames.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    return result;
}

std::vector<bool> reachable_from(const Digraph& graph, const std::vector<int>& sources) {
    std::vector<bool> seen(graph.size(), false);
    std::vector<int> todo;
    for (int s : sources) {
        if (!seen[s]) {
            seen[s] = true;
            todo.push_back(s);
        }
    }
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        for (int w : graph[v]) {
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace lrsynth
