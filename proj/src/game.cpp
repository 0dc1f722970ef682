#include "petrisynth/game.hpp"

#include <set>

namespace petrisynth {

bool marking_pattern::matches(const marking& m) const {
    for (auto& [p, c] : exact)
        if (m.count(p) != c) return false;
    for (auto& [p, lo, hi] : ranges) {
        int32_t c = m.count(p);
        if (c < lo || c > hi) return false;
    }
    for (auto& s : sums) {
        int64_t total = 0;
        for (auto p : s.places) total += m.count(p);
        if (total < s.lo || total > s.hi) return false;
    }
    if (others_zero) {
        auto mentioned = mentioned_places();
        for (auto& [p, c] : m.entries()) {
            if (c > 0 && !std::binary_search(mentioned.begin(), mentioned.end(), p)) return false;
        }
    }
    return true;
}

std::vector<int32_t> marking_pattern::mentioned_places() const {
    std::set<int32_t> s;
    for (auto& [p, _] : exact) s.insert(p);
    for (auto& [p, lo, hi] : ranges) {
        (void)lo;
        (void)hi;
        s.insert(p);
    }
    for (auto& sc : sums) s.insert(sc.places.begin(), sc.places.end());
    return {s.begin(), s.end()};
}

bool petri_game::is_bad(const marking& m) const {
    if (winning.kind == winning_kind::bad_places) {
        for (auto p : winning.bad_places_)
            if (m.contains(p)) return true;
        return false;
    }
    for (auto& pat : winning.bad)
        if (pat.matches(m)) return true;
    return false;
}

bool petri_game::is_good(const marking& m) const {
    for (auto& pat : winning.good)
        if (pat.matches(m)) return true;
    return false;
}

marking_class petri_game::classify_marking(const marking& m) const {
    bool b = is_bad(m);
    bool g = is_good(m);
    if (b && g)
        throw ambiguous_class("marking " + net.format_marking(m) + " is both good and bad");
    if (b) return marking_class::bad;
    if (g) return marking_class::good;
    return marking_class::neutral;
}

class_report petri_game::check_decidable_class(int bound_k, size_t cap) const {
    class_report rep;
    rep.bound_k = bound_k;
    auto reachable = net.reachable_markings(bound_k, cap);
    rep.reachable_count = reachable.size();
    if (sum_env_tokens(net.initial()) != 1)
        throw not_one_env_player("the initial marking must hold exactly one environment token");
    for (auto& m : reachable) {
        // transitions may consume the environment player for good (cf. a net
        // whose env place feeds a transition with no environment output), so
        // later markings are allowed to drop to zero
        if (sum_env_tokens(m) > 1)
            throw not_one_env_player("marking " + net.format_marking(m) + " holds more than one environment token");
        for (auto& [p, c] : m.entries())
            if (system_place(p) && c > bound_k)
                throw system_bound_exceeded("system place " + net.place_name(p) + " exceeds bound in " +
                                            net.format_marking(m));
        rep.max_system_tokens = std::max(rep.max_system_tokens, int(sum_system_tokens(m)));
        if (winning.kind == winning_kind::good_and_bad)
            classify_marking(m); // raises ambiguous_class on overlap
    }
    return rep;
}

petri_game badplaces_to_badmarkings(const petri_game& game) {
    if (game.winning.kind != winning_kind::bad_places)
        throw wrong_condition_kind("badplaces_to_badmarkings requires a bad-places condition");
    petri_game out = game;
    out.winning.kind = winning_kind::bad_markings;
    out.winning.bad.clear();
    for (auto p : game.winning.bad_places_) {
        marking_pattern pat;
        pat.ranges.push_back({p, 1, unbounded});
        out.winning.bad.push_back(std::move(pat));
    }
    out.winning.bad_places_.clear();
    return out;
}

} // namespace petrisynth
