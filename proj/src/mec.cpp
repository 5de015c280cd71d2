#include "lrsynth/mec.hpp"

#include "lrsynth/graph.hpp"
#include "lrsynth/product.hpp"

#include <algorithm>

namespace lrsynth {

std::vector<Mec> compute_mecs(const Mdp& mdp) {
    const int n = static_cast<int>(mdp.num_states());
    std::vector<bool> state_alive(n, true);
    std::vector<bool> action_alive(mdp.num_actions(), true);

    SccResult scc;
    for (bool changed = true; changed;) {
        changed = false;
        Digraph graph(n);
        for (size_t a = 0; a < mdp.num_actions(); ++a) {
            if (!action_alive[a]) continue;
            for (const auto& t : mdp.actions[a].successors) graph[mdp.actions[a].owner].push_back(t.target);
        }
        scc = strongly_connected_components(graph);

        for (size_t a = 0; a < mdp.num_actions(); ++a) {
            if (!action_alive[a]) continue;
            const int owner = mdp.actions[a].owner;
            bool stays = state_alive[owner];
            for (const auto& t : mdp.actions[a].successors)
                stays = stays && state_alive[t.target] && scc.component[t.target] == scc.component[owner];
            if (!stays) {
                action_alive[a] = false;
                changed = true;
            }
        }
        for (int s = 0; s < n; ++s) {
            if (!state_alive[s]) continue;
            bool any = std::any_of(mdp.enabled[s].begin(), mdp.enabled[s].end(), [&](int a) { return action_alive[a]; });
            if (!any) {
                state_alive[s] = false;
                changed = true;
            }
        }
    }

    std::vector<int> slot(scc.count, -1);
    std::vector<Mec> mecs;
    for (int s = 0; s < n; ++s) {
        if (!state_alive[s]) continue;
        int& m = slot[scc.component[s]];
        if (m == -1) {
            m = static_cast<int>(mecs.size());
            mecs.emplace_back();
        }
        mecs[m].states.push_back(s);
        for (int a : mdp.enabled[s])
            if (action_alive[a]) mecs[m].actions.push_back(a);
    }
    for (auto& mec : mecs) std::sort(mec.actions.begin(), mec.actions.end());
    return mecs;
}

std::vector<Mec> compute_mecs(const ProductMdp& product) {
    auto mecs = compute_mecs(product.mdp);
    for (auto& mec : mecs)
        mec.accepting = std::any_of(mec.states.begin(), mec.states.end(), [&](int s) { return product.accepting[s]; });
    return mecs;
}

std::vector<Mec> accepting_mecs(const ProductMdp& product, const std::vector<Mec>& mecs) {
    std::vector<Mec> out;
    for (const auto& mec : mecs) {
        if (std::any_of(mec.states.begin(), mec.states.end(), [&](int s) { return product.accepting[s]; })) {
            out.push_back(mec);
            out.back().accepting = true;
        }
    }
    return out;
}

std::vector<int> mec_of_state(const Mdp& mdp, const std::vector<Mec>& mecs) {
    std::vector<int> out(mdp.num_states(), -1);
    for (size_t m = 0; m < mecs.size(); ++m)
        for (int s : mecs[m].states) out[s] = static_cast<int>(m);
    return out;
}

std::vector<int> mec_of_action(const Mdp& mdp, const std::vector<Mec>& mecs) {
    std::vector<int> out(mdp.num_actions(), -1);
    for (size_t m = 0; m < mecs.size(); ++m)
        for (int a : mecs[m].actions) out[a] = static_cast<int>(m);
    return out;
}

Json mecs_to_json(const Mdp& mdp, const std::vector<Mec>& mecs) {
    Json out = Json::array();
    for (const auto& mec : mecs) {
        Json j;
        Json states = Json::array(), actions = Json::array();
        for (int s : mec.states) states.push_back(mdp.states[s]);
        for (int a : mec.actions) actions.push_back(mdp.actions[a].name);
        j["states"] = states;
        j["actions"] = actions;
        j["accepting"] = mec.accepting;
        out.push_back(j);
    }
    return out;
}

}  // namespace lrsynth
