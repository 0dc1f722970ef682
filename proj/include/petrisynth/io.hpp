#pragma once

#include <cstdint>
#include <iosfwd>

#include "petrisynth/strategy.hpp"

namespace petrisynth {

struct parse_error : net_error {
    using net_error::net_error;
};

struct run_config {
    int bound_k = 16;
    size_t max_states = 5000000;  // arena state cap
    size_t max_bm = 10000;        // backward-move sequence length cap
    size_t marking_cap = 1000000; // reachability cap
    size_t rewind_cap = 200000;   // per-state backward-move exploration cap
    size_t cut_cap = 1000000;     // strategy cut exploration cap
    bool verbose_states = false;
    uint64_t seed = 1;
};

/// Parses the textual .game format:
///
///   places { system: p k  env: e }
///   init { e:1 }
///   transition t { pre: e  post: p, k:2  flow: e->p, new->k, new->k }
///   winning {
///     kind: bad-markings
///     pattern { exact p 1; range k 1 *; sum p+k 0 3; others-zero }
///   }
///
/// good-and-bad uses good { ... } / bad { ... } blocks, bad-places uses
/// places: ... instead of patterns.
petri_game parse_game(const std::string& text, const std::string& name = "game");
petri_game load_game(const std::string& path);

/// Canonical printer; parse(print(g)) == g and print is idempotent.
std::string print_game(const petri_game& game);

std::string game_to_dot(const petri_game& game);

std::string strategy_to_json(const finite_strategy& fs, const petri_game& game);
finite_strategy strategy_from_json(const std::string& text, const petri_game& game);
std::string strategy_to_dot(const finite_strategy& fs, const petri_game& game);

std::string format_trace(const petri_game& game, const std::vector<trace_step>& trace);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace petrisynth
