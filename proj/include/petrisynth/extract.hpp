#pragma once

#include "petrisynth/reduction.hpp"
#include "petrisynth/strategy.hpp"

namespace petrisynth {

struct not_winning : net_error {
    using net_error::net_error;
};
struct invariant_broken : net_error {
    using net_error::net_error;
};

/// Builds the finite Petri-game strategy for a winning Player-0 strategy:
/// breadth-first over the strategy-restricted arena, fresh transition and
/// place copies per step, NES loops and revisited environment states folded
/// into loop-back arcs.
finite_strategy extract(const reduction& red, const reduction_arena& ra, const buchi::solution& sol);

/// Counterexample sketch for a state lost by Player 0: Player 1's winning
/// edge choices and the STOP flags of the reachable FN predecessors.
struct diagnosis {
    bool losing = false;
    uint32_t flags = 0;          // flags of the first witness found
    std::string witness;         // e.g. the offending bad marking
    std::vector<std::string> path; // transition names along one losing path
    std::string to_string(const reduction& red) const;
};

diagnosis explain(const reduction& red, const reduction_arena& ra, const buchi::solution& sol, int state);

} // namespace petrisynth
