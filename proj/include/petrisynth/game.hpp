#pragma once

#include <limits>
#include <optional>

#include "petrisynth/net.hpp"

namespace petrisynth {

struct class_error : net_error {
    using net_error::net_error;
};
struct not_one_env_player : class_error {
    using class_error::class_error;
};
struct system_bound_exceeded : class_error {
    using class_error::class_error;
};
struct wrong_condition_kind : net_error {
    using net_error::net_error;
};
struct ambiguous_class : net_error {
    using net_error::net_error;
};

constexpr int32_t unbounded = std::numeric_limits<int32_t>::max();

/// Finite surface for set-builder winning conditions.
/// A pattern matches a marking when all exact counts hold, all ranged counts
/// hold, every token-sum constraint holds, and (with others_zero) every place
/// not mentioned by the pattern is empty.
struct marking_pattern {
    std::vector<std::pair<int32_t, int32_t>> exact;            // place -> count
    std::vector<std::tuple<int32_t, int32_t, int32_t>> ranges; // place, lo, hi
    struct sum_constraint {
        std::vector<int32_t> places;
        int32_t lo = 0;
        int32_t hi = unbounded;
        auto operator<=>(const sum_constraint&) const = default;
    };
    std::vector<sum_constraint> sums;
    bool others_zero = false;

    auto operator<=>(const marking_pattern&) const = default;

    bool matches(const marking& m) const;
    std::vector<int32_t> mentioned_places() const;
};

enum class winning_kind { bad_places, bad_markings, good_markings, good_and_bad };

struct winning_condition {
    winning_kind kind = winning_kind::bad_markings;
    std::vector<int32_t> bad_places_;                // bad_places kind
    std::vector<marking_pattern> bad;
    std::vector<marking_pattern> good;
};

enum class marking_class { good, bad, neutral };

struct class_report {
    int bound_k = 0;
    int max_system_tokens = 0; // max_S
    size_t reachable_count = 0;
};

struct petri_game {
    petri_net net;
    std::vector<bool> is_system; // indexed by place id
    winning_condition winning;
    std::map<std::string, std::vector<flow_hint>> flow_hints; // transit annotations
    std::string name;

    bool system_place(int32_t p) const { return is_system.at(p); }
    bool env_place(int32_t p) const { return !is_system.at(p); }
    bool env_in_pre(int32_t t) const {
        for (auto& [p, _] : net.pre(t).entries())
            if (env_place(p)) return true;
        return false;
    }

    int32_t sum_env_tokens(const marking& m) const {
        int32_t s = 0;
        for (auto& [p, c] : m.entries())
            if (env_place(p)) s += c;
        return s;
    }
    int32_t sum_system_tokens(const marking& m) const {
        int32_t s = 0;
        for (auto& [p, c] : m.entries())
            if (system_place(p)) s += c;
        return s;
    }

    bool is_bad(const marking& m) const;
    bool is_good(const marking& m) const;
    marking_class classify_marking(const marking& m) const;

    /// Verifies the decidable-fragment shape over all reachable markings:
    /// per-place bound k, exactly one environment token everywhere, and for
    /// good_and_bad that no reachable marking is both good and bad. Returns
    /// the computed max_S.
    class_report check_decidable_class(int bound_k, size_t cap = 1000000) const;
};

/// Translates a bad-places condition into equivalent bad-marking patterns,
/// one per bad place (at least one token on it, everything else free).
petri_game badplaces_to_badmarkings(const petri_game& game);

} // namespace petrisynth
