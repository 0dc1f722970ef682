#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <stdexcept>

namespace petrisynth::buchi {

struct arena_invalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum player : uint8_t { player0 = 0, player1 = 1 };

/// Explicit two-player Buchi arena. Reverse edges are kept alongside the
/// forward adjacency because the attractor iterates predecessors.
struct arena {
    int initial = 0;
    std::vector<uint8_t> owner;     // per state
    std::vector<uint8_t> accepting; // per state
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    int num_states() const { return int(owner.size()); }

    void finalize(); // fills pred from succ, sorts adjacency
    void validate() const;
};

struct solution {
    std::vector<uint8_t> win0;  // per state: Player 0 wins here
    std::vector<int> strategy0; // per state: chosen successor for Player 0 states in win0, else -1
    std::vector<int> rank;      // attractor rank toward accepting states inside win0 (-1 outside)
};

/// Least set A containing target and closed under: player-owned state with a
/// successor in A, opponent state with all successors in A. rank = forced BFS
/// distance. `alive` (optional) restricts to a subgame.
std::pair<std::vector<uint8_t>, std::vector<int>> attractor(const arena& a, player pl,
                                                            const std::vector<uint8_t>& target,
                                                            const std::vector<uint8_t>* alive = nullptr);

/// Classical repeated-attractor fixpoint; strategy ties broken by lowest
/// state index so solved arenas are deterministic.
solution solve(const arena& a);

/// Independent certificate check: win0/win1 partition is strategy-closed and
/// the strategy-restricted subgraph has no accepting-free cycle in win0.
bool verify_certificate(const arena& a, const solution& s);

std::string to_text(const arena& a);
arena from_text(const std::string& text);
std::string to_dot(const arena& a, const std::vector<std::string>* labels = nullptr);

} // namespace petrisynth::buchi
