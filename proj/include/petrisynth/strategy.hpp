#pragma once

#include <functional>

#include "petrisynth/game.hpp"

namespace petrisynth {

/// Branching process: an occurrence-net shaped Petri net together with the
/// labeling homomorphism into the original net, kept as node-name -> name.
struct branching_process {
    petri_net occ;
    std::map<std::string, std::string> labels;
    /// Declared place types (parallel to occ places); when present the
    /// validator checks each place's type against its label's type.
    std::vector<bool> is_system;

    std::string label_of_place(int32_t p) const { return labels.at(occ.place_name(p)); }
    std::string label_of_trans(int32_t t) const { return labels.at(occ.trans_name(t)); }
};

/// Finite-graph representation of a strategy: an occurrence-net-like labeled
/// net whose loop-back arcs close NES loops and environment loops. Unrolling
/// the graph yields a branching process; validation explores the (finite)
/// reachable cut space of the folded graph directly.
struct finite_strategy {
    struct place {
        std::string name;
        int32_t label = -1; // game place id
        bool initial = false;
    };
    struct transition {
        std::string name;
        int32_t label = -1; // game transition id
        std::vector<int> pre;            // place indices
        std::vector<int> post;           // place indices
        std::vector<bool> post_loopback; // parallel to post
    };
    std::vector<place> places;
    std::vector<transition> transitions;
    std::string game_name;

    std::vector<int> initial_cut() const;
};

struct violation {
    std::string condition;
    std::string witness;
};

struct report {
    std::vector<violation> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string cond, std::string wit) { violations.push_back({std::move(cond), std::move(wit)}); }
    std::string to_string() const;
};

enum class win_verdict { winning, not_winning };

struct trace_step {
    std::string transition; // empty for the initial entry
    marking reached;
    marking_class cls = marking_class::neutral;
};

/// Checks every occurrence-net and homomorphism condition from the branching
/// process definition; the report carries one entry per violated condition
/// with a witness node.
report validate_branching_process(const branching_process& bp, const petri_game& game);

/// Structural sanity of the folded graph: label well-formedness, set-valued
/// arcs, unique non-loopback predecessor per place, initial places.
report validate_strategy_structure(const finite_strategy& fs, const petri_game& game);

/// Only system places can prohibit transitions: for every reachable co-set C
/// with lambda[C] = pre(t), either an instance of t from exactly C exists or
/// some system place in C never allows t.
report check_justified_refusal(const finite_strategy& fs, const petri_game& game, size_t cap = 1000000);

/// At most one transition from the postset of any system place enabled in any
/// reachable marking.
report check_deterministic(const finite_strategy& fs, const petri_game& game, size_t cap = 1000000);

/// Every final reachable marking of the strategy maps to a final marking of
/// the game net.
report check_deadlock_avoiding(const finite_strategy& fs, const petri_game& game, size_t cap = 1000000);

/// Explores all reachable cuts of the finite graph (loops closed by the
/// visited set); winning iff deadlock-avoiding and no cut maps to a bad
/// marking. Complete for finite strategies.
win_verdict check_winning_bad_markings(const finite_strategy& fs, const petri_game& game, report& why,
                                       size_t cap = 1000000);

report run_all_validators(const finite_strategy& fs, const petri_game& game, size_t cap = 1000000);

/// Fires the named transitions in order on the game net, classifying each
/// marking against the winning condition.
std::vector<trace_step> simulate_play(const petri_game& game, const std::vector<std::string>& transitions);

/// Same on a finite strategy (by strategy transition name); classifications
/// use the labeled markings.
std::vector<trace_step> simulate_play(const finite_strategy& fs, const petri_game& game,
                                      const std::vector<std::string>& transitions);

/// Unrolls the folded graph into an acyclic branching process, firing at most
/// max_transitions transition instances (breadth-first).
branching_process unroll(const finite_strategy& fs, const petri_game& game, size_t max_transitions);

/// All reachable cuts of the folded graph, in deterministic BFS (or DFS)
/// order. Exposed for the traversal-agreement self check.
std::vector<std::vector<int>> reachable_cuts(const finite_strategy& fs, bool depth_first, size_t cap = 1000000);

marking cut_marking(const finite_strategy& fs, const std::vector<int>& cut);

} // namespace petrisynth
