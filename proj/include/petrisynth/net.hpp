#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "petrisynth/multiset.hpp"

namespace petrisynth {

struct net_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_enabled : net_error {
    using net_error::net_error;
};
struct bound_violated : net_error {
    std::string place;
    std::string marking;
    bound_violated(std::string p, std::string m)
        : net_error("bound violated at place " + p + " in marking " + m),
          place(std::move(p)), marking(std::move(m)) {}
};
struct cap_exceeded : net_error {
    using net_error::net_error;
};

using marking = multiset; // over place ids

/// Immutable Petri net. Place and transition ids are indices into the
/// lexicographically sorted name tables, so id order equals name order and
/// hashes over sorted entries are stable across runs.
class petri_net {
public:
    static constexpr int32_t npos = -1;

    int32_t place_id(const std::string& name) const {
        auto it = place_index_.find(name);
        return it == place_index_.end() ? npos : it->second;
    }
    int32_t trans_id(const std::string& name) const {
        auto it = trans_index_.find(name);
        return it == trans_index_.end() ? npos : it->second;
    }
    const std::string& place_name(int32_t p) const { return place_names_.at(p); }
    const std::string& trans_name(int32_t t) const { return trans_names_.at(t); }
    int32_t num_places() const { return int32_t(place_names_.size()); }
    int32_t num_transitions() const { return int32_t(trans_names_.size()); }

    const multiset& pre(int32_t t) const { return pre_t_.at(t); }
    const multiset& post(int32_t t) const { return post_t_.at(t); }
    /// Incoming transitions of a place (set, sorted).
    const std::vector<int32_t>& pre_of_place(int32_t p) const { return pre_p_.at(p); }
    /// Outgoing transitions of a place (set, sorted).
    const std::vector<int32_t>& post_of_place(int32_t p) const { return post_p_.at(p); }
    const marking& initial() const { return initial_; }

    bool enabled(const marking& m, int32_t t) const {
        check_trans(t);
        return m.includes(pre(t));
    }

    /// No transition enabled.
    bool is_final(const marking& m) const {
        for (int32_t t = 0; t < num_transitions(); ++t)
            if (enabled(m, t)) return false;
        return true;
    }

    marking fire(const marking& m, int32_t t) const {
        if (!enabled(m, t))
            throw not_enabled("transition " + trans_name(t) + " not enabled in " + format_marking(m));
        return m.minus(pre(t)).plus(post(t));
    }

    std::string format_marking(const marking& m) const;

    /// Breadth-first closure under fire from the initial marking, exploring
    /// transitions in sorted id order. Every discovered marking must keep at
    /// most bound_k tokens per place; more than cap markings raises.
    std::vector<marking> reachable_markings(int bound_k, size_t cap = 1000000) const;

    friend class net_builder;

private:
    std::vector<std::string> place_names_;
    std::vector<std::string> trans_names_;
    std::map<std::string, int32_t> place_index_;
    std::map<std::string, int32_t> trans_index_;
    std::vector<multiset> pre_t_, post_t_;
    std::vector<std::vector<int32_t>> pre_p_, post_p_;
    marking initial_;

    void check_trans(int32_t t) const {
        if (t < 0 || t >= num_transitions()) throw net_error("unknown transition id");
    }
};

/// Flow annotation for one token of a transition: where the token at `from`
/// goes. `from == ""` means a created token, `to == ""` a removed one.
struct flow_hint {
    std::string from;
    std::string to;
    auto operator<=>(const flow_hint&) const = default;
};

class net_builder {
public:
    void add_place(const std::string& name);
    void add_transition(const std::string& name, const std::vector<std::pair<std::string, int>>& pre,
                        const std::vector<std::pair<std::string, int>>& post,
                        std::vector<flow_hint> flow = {});
    void set_initial(const std::string& place, int count);
    bool has_place(const std::string& name) const { return places_.count(name) > 0; }
    bool has_transition(const std::string& name) const { return trans_.count(name) > 0; }

    /// Validates and freezes into an immutable net with lexicographic ids.
    petri_net build() const;

    /// Flow hints per transition name, passed through for the transit relation.
    const std::map<std::string, std::vector<flow_hint>>& flow_hints() const { return flows_; }

private:
    std::set<std::string> places_;
    struct tdef {
        std::vector<std::pair<std::string, int>> pre, post;
    };
    std::map<std::string, tdef> trans_;
    std::map<std::string, int> initial_;
    std::map<std::string, std::vector<flow_hint>> flows_;
};

} // namespace petrisynth
