#pragma once

#include "petrisynth/buchi.hpp"
#include "petrisynth/game.hpp"
#include "petrisynth/io.hpp"

namespace petrisynth {

struct state_cap_exceeded : cap_exceeded {
    using cap_exceeded::cap_exceeded;
};
struct bm_cap_exceeded : cap_exceeded {
    using cap_exceeded::cap_exceeded;
};

enum class nes_status : uint8_t { negative = 0, positive = 1, ended = 2 };

/// One player of the Petri game as seen by the Buchi game: identifier,
/// position, NES status, decision (allowed transitions or missing), and the
/// last-mcut tag. Identifier 0 is the environment player.
struct decision_tuple {
    int16_t id = 0;
    int32_t place = -1;
    nes_status nes = nes_status::negative;
    bool top = false;               // decision still missing
    std::vector<int32_t> allowed;   // sorted; meaningful iff !top
    int16_t lmc = 0;

    auto operator<=>(const decision_tuple&) const = default;
    bool allows(int32_t t) const {
        return !top && std::binary_search(allowed.begin(), allowed.end(), t);
    }
};

/// Set of decision tuples, sorted by id; each identifier occurs at most once.
using decision_marking = std::vector<decision_tuple>;

struct backward_move {
    enum class kind_t : uint8_t { transition = 0, nes_boundary = 1 };
    kind_t kind = kind_t::transition;
    decision_marking pre;  // system tuples only
    decision_marking post; // system tuples only; participants are the ids here

    auto operator<=>(const backward_move&) const = default;
};

struct reduction_state {
    decision_marking dm;
    multiset m_t2;                              // system marking to repeat in the NES case
    std::vector<std::vector<backward_move>> bm; // index id-1, max_S sequences

    auto operator<=>(const reduction_state&) const = default;
};

enum state_flag : uint32_t {
    flag_term = 1u << 0,
    flag_dl = 1u << 1,
    flag_ndet = 1u << 2,
    flag_bad = 1u << 3,
    flag_dl_t2 = 1u << 4,
    flag_sync_t2 = 1u << 5,
    flag_van_t2 = 1u << 6,
    flag_ur = 1u << 7,
};
constexpr uint32_t losing_flags =
    flag_ndet | flag_bad | flag_dl_t2 | flag_sync_t2 | flag_van_t2 | flag_ur;

std::string flags_to_string(uint32_t flags);

enum class edge_kind : uint8_t { top, sys, mcut, nes_fire, nes_finish, nes_bad, stop_b, stop_n, sentinel_loop };

const char* edge_kind_name(edge_kind k);

/// Movement annotation of one arena edge, kept for strategy extraction and
/// the reduce-dump output.
struct edge_info {
    edge_kind kind = edge_kind::top;
    int32_t trans = -1;
    std::vector<std::pair<int16_t, int32_t>> consumed; // (id, source place)
    std::vector<std::pair<int16_t, int32_t>> produced; // (id, target place)
    std::vector<int16_t> flipped;                      // ids turned false->true here
};

struct transit_result {
    enum class kind_t { moved, created, removed } kind;
    int32_t place = -1; // target place for moved/created
};

/// Nodes reachable by rewinding recorded backward moves, each with the
/// remaining sequence lengths per player.
struct rewind_result {
    std::vector<decision_marking> dms;
    std::vector<std::vector<int>> depths; // parallel; entry per id (size max_S)
    bool capped = false;
};

/// Per-game reduction context: decidable-class data, the transit relation,
/// and all state machinery of the Buchi encoding.
class reduction {
public:
    reduction(const petri_game& game, const run_config& cfg);

    const petri_game& game() const { return *game_; }
    int max_s() const { return max_s_; }
    size_t bm_cap() const { return bm_cap_; }
    const std::vector<marking>& reachable() const { return reachable_; }
    bool reachable_marking(const marking& m) const;
    bool nes_viable_place(int32_t p) const { return nes_viable_.at(p); }

    reduction_state initial_state() const;
    bool corresponds_to_mcut(const decision_marking& dm) const;

    static multiset underlying(const decision_marking& dm);
    static multiset underlying_nonend(const decision_marking& dm);
    static multiset underlying_true(const decision_marking& dm);

    /// Tuples of dm at pre-places of t that allow t and are not ended.
    decision_marking restrict_pre(const decision_marking& dm, int32_t t) const;
    decision_marking restrict_pre_t2(const decision_marking& dm, int32_t t) const;
    bool enabled_allowed(const decision_marking& dm, int32_t t) const;
    bool enabled_allowed_t2(const decision_marking& dm, int32_t t) const;

    /// Resolves the token flow of player id through t (flow annotations when
    /// present, same-typed lexicographic pairing otherwise).
    transit_result transit(const decision_marking& dm, int16_t id, int32_t t) const;

    rewind_result enumerate_rewind(const decision_marking& dm0,
                                   const std::vector<std::vector<backward_move>>& bm) const;

    /// The via-backward-moves reachable decision markings (includes dm).
    std::vector<decision_marking> bm_reachable(const reduction_state& s) const;

    uint32_t classify_state(const reduction_state& s, std::string* witness = nullptr) const;

    struct successor {
        edge_info info;
        reduction_state state; // dm empty for sentinel targets
        bool to_fb = false;
        bool to_fn = false;
    };
    std::vector<successor> successors(const reduction_state& s) const;

    std::string format_dm(const decision_marking& dm) const;
    std::string format_state(const reduction_state& s, bool verbose) const;
    std::string encode(const reduction_state& s) const;

private:
    const petri_game* game_;
    run_config cfg_;
    int max_s_ = 0;
    size_t bm_cap_ = 0;
    std::vector<marking> reachable_;
    std::vector<size_t> reachable_hashes_; // sorted, for membership tests
    std::vector<bool> nes_viable_;
    std::vector<bool> system_only_; // per transition: no env place in pre

    struct transit_spec {
        // token slots: (from place, to place); -1 from = created, -1 to = removed
        std::vector<std::pair<int32_t, int32_t>> slots;
    };
    std::vector<transit_spec> transits_;

    void build_transits();
    std::vector<decision_marking> instances(const decision_marking& allowed_pre, int32_t t) const;

    struct firing {
        decision_marking instance; // consumed tuples (system + env)
        // produced system tuples without decisions yet (top placeholder),
        // plus created-slot bookkeeping
        std::vector<decision_tuple> moved;   // system movers with new place, lmc set
        std::vector<decision_tuple> created; // fresh ids, new place, lmc set
        std::vector<int32_t> env_posts;      // env places entered
    };
    std::vector<firing> firings(const decision_marking& dm, int32_t t, bool t2_mode) const;

    friend struct reduction_test_access;
};

/// The built Buchi arena plus the state table and edge annotations.
struct reduction_arena {
    buchi::arena arena;
    std::vector<reduction_state> states; // sentinel states have empty dm
    std::vector<uint32_t> flags;
    std::vector<std::string> witnesses;
    int fb = -1;
    int fn = -1;
    std::vector<std::vector<std::pair<int, int>>> edges; // per state: (edge info index, target)
    std::vector<edge_info> infos;

    bool is_sentinel(int v) const { return v == fb || v == fn; }
};

reduction_arena build_arena(const reduction& red, const run_config& cfg);

std::string arena_to_dot(const reduction& red, const reduction_arena& ra, bool verbose);
std::string arena_state_table_json(const reduction& red, const reduction_arena& ra);

} // namespace petrisynth
