#pragma once

#include "petrisynth/game.hpp"
#include "petrisynth/io.hpp"

namespace petrisynth {

/// A Post correspondence problem instance: two equal-length lists of
/// non-empty words over the alphabet.
struct pcp_instance {
    std::vector<std::string> alphabet; // single letters
    std::vector<std::string> r_words;
    std::vector<std::string> v_words;

    void validate() const;
    const std::string& word(int player, int i) const { return player == 1 ? r_words.at(i) : v_words.at(i); }
};

/// Three-line text format: alphabet letters, r words, v words (whitespace
/// separated).
pcp_instance parse_pcp(const std::string& text);
std::string print_pcp(const pcp_instance& inst);

/// The good-and-bad-markings Petri game encoding the instance: two system
/// players with MOD-3 index/letter counters plus the seven-place environment
/// player; all nine good/bad marking families compiled into patterns.
petri_game gen_pcp_game(const pcp_instance& inst);

/// Deterministic names used by the generator, exposed so the play checker
/// and tests can address transitions directly.
namespace pcp_names {
std::string place_start(int k);
std::string place_choice(int k, int x, int a);
std::string place_term(int k, int x, int a);
std::string place_index(int k, int i, int x, int a);
std::string place_letter(int k, int i, int j, int x, int a);
std::string trans_start_index(int k, int i);
std::string trans_index(int k, int i, int x, int a);
std::string trans_end(int k, int x, int a);
std::string trans_letter(int k, int i, int j, int x, int a);
std::string trans_tau(int k, int i, int x, int a);
std::string env_choice_place();
std::string env_result_place(bool index, int who); // who: 1 first, 0 okay, 2 second
std::string env_trans(bool index, int who);
} // namespace pcp_names

enum class pcp_verdict { good_before_bad, bad_first, neither_reached };

/// Simulates the canonical turn-taking plays for the given index sequence
/// (environment decides first, both players output the sequence, player 1
/// leading each turn) under both equality checks, and reports whether a good
/// marking is reached before any bad one.
pcp_verdict check_pcp_play(const petri_game& game, const pcp_instance& inst,
                           const std::vector<int>& index_sequence);

/// The canonical firing sequence used by check_pcp_play for one environment
/// choice (index equality when check_index, letters otherwise).
std::vector<std::string> canonical_pcp_play(const pcp_instance& inst, const std::vector<int>& index_sequence,
                                            bool check_index);

/// Good+bad -> good-only translation: shadow environment places after every
/// transition, return transitions, one sink transition per expanded bad
/// marking, and a one-shot initialization transition.
petri_game good_bad_to_good(const petri_game& game, const run_config& cfg);

struct census_report {
    size_t places = 0;
    size_t system_places = 0;
    size_t env_places = 0;
    size_t transitions = 0;
    size_t arcs = 0;
    int64_t initial_tokens = 0;
    std::map<std::string, size_t> places_by_prefix;      // prefix up to the first '_'
    std::map<std::string, size_t> transitions_by_prefix;

    std::string to_string() const;
};

census_report census(const petri_game& game);

} // namespace petrisynth
