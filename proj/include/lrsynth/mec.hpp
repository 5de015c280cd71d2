#pragma once

#include "lrsynth/json_io.hpp"
#include "lrsynth/mdp.hpp"

#include <vector>

namespace lrsynth {

struct ProductMdp;

/// A maximal end component: states and actions sorted by index.
struct Mec {
    std::vector<int> states;
    std::vector<int> actions;
    bool accepting = false;

    bool operator==(const Mec&) const = default;
};

/// MEC decomposition by repeated SCC refinement: drop actions that can
/// leave their SCC, drop states left without actions, repeat until stable.
/// MECs are ordered by their smallest state index.
std::vector<Mec> compute_mecs(const Mdp& mdp);

/// MECs of a product, with `accepting` set when a MEC contains an accepting state.
std::vector<Mec> compute_mecs(const ProductMdp& product);

/// The subset of MECs containing an accepting product state (AMEC).
std::vector<Mec> accepting_mecs(const ProductMdp& product, const std::vector<Mec>& mecs);

/// state -> index of its MEC, or -1.
std::vector<int> mec_of_state(const Mdp& mdp, const std::vector<Mec>& mecs);
/// action -> index of its MEC, or -1.
std::vector<int> mec_of_action(const Mdp& mdp, const std::vector<Mec>& mecs);

Json mecs_to_json(const Mdp& mdp, const std::vector<Mec>& mecs);

}  // namespace lrsynth
