#include "petrisynth/net.hpp"

#include <algorithm>

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace petrisynth {

std::string petri_net::format_marking(const marking& m) const {
    std::string out = "{";
    bool first = true;
    for (auto& [p, c] : m.entries()) {
        if (!first) out += ", ";
        first = false;
        out += place_name(p);
        if (c != 1) out += ":" + std::to_string(c);
    }
    return out + "}";
}

namespace {
struct marking_hash {
    size_t operator()(const marking& m) const { return m.hash(); }
};
} // namespace

std::vector<marking> petri_net::reachable_markings(int bound_k, size_t cap) const {
    if (cap < 1) throw net_error("reachability cap must be >= 1");
    std::vector<marking> out;
    std::unordered_set<marking, marking_hash> seen;
    std::deque<marking> frontier;

    auto check_bound = [&](const marking& m) {
        for (auto& [p, c] : m.entries())
            if (c > bound_k) throw bound_violated(place_name(p), format_marking(m));
    };

    check_bound(initial_);
    seen.insert(initial_);
    out.push_back(initial_);
    frontier.push_back(initial_);
    while (!frontier.empty()) {
        marking m = std::move(frontier.front());
        frontier.pop_front();
        for (int32_t t = 0; t < num_transitions(); ++t) {
            if (!enabled(m, t)) continue;
            marking next = m.minus(pre(t)).plus(post(t));
            if (seen.count(next)) continue;
            check_bound(next);
            if (out.size() >= cap)
                throw cap_exceeded("reachable marking cap of " + std::to_string(cap) + " exceeded");
            seen.insert(next);
            out.push_back(next);
            frontier.push_back(next);
        }
    }
    return out;
}

void net_builder::add_place(const std::string& name) {
    if (name.empty()) throw net_error("empty place name");
    if (trans_.count(name)) throw net_error("node name used for both place and transition: " + name);
    if (!places_.insert(name).second) throw net_error("duplicate place: " + name);
}

void net_builder::add_transition(const std::string& name,
                                 const std::vector<std::pair<std::string, int>>& pre,
                                 const std::vector<std::pair<std::string, int>>& post,
                                 std::vector<flow_hint> flow) {
    if (name.empty()) throw net_error("empty transition name");
    if (places_.count(name)) throw net_error("node name used for both place and transition: " + name);
    if (trans_.count(name)) throw net_error("duplicate transition: " + name);
    for (auto& [p, c] : pre) {
        if (!places_.count(p)) throw net_error("transition " + name + " references unknown place " + p);
        if (c <= 0) throw net_error("flow weights must be positive (transition " + name + ")");
    }
    for (auto& [p, c] : post) {
        if (!places_.count(p)) throw net_error("transition " + name + " references unknown place " + p);
        if (c <= 0) throw net_error("flow weights must be positive (transition " + name + ")");
    }
    trans_[name] = {pre, post};
    if (!flow.empty()) {
        std::sort(flow.begin(), flow.end()); // canonical hint order
        flows_[name] = std::move(flow);
    }
}

void net_builder::set_initial(const std::string& place, int count) {
    if (!places_.count(place)) throw net_error("initial marking references unknown place " + place);
    if (count < 0) throw net_error("negative initial count");
    initial_[place] = count;
}

petri_net net_builder::build() const {
    petri_net n;
    for (auto& p : places_) {
        n.place_index_[p] = int32_t(n.place_names_.size());
        n.place_names_.push_back(p);
    }
    for (auto& [t, _] : trans_) {
        n.trans_index_[t] = int32_t(n.trans_names_.size());
        n.trans_names_.push_back(t);
    }
    n.pre_t_.resize(n.trans_names_.size());
    n.post_t_.resize(n.trans_names_.size());
    n.pre_p_.resize(n.place_names_.size());
    n.post_p_.resize(n.place_names_.size());
    for (auto& [tname, def] : trans_) {
        int32_t t = n.trans_index_.at(tname);
        std::vector<multiset::entry> pre, post;
        for (auto& [p, c] : def.pre) pre.push_back({n.place_index_.at(p), c});
        for (auto& [p, c] : def.post) post.push_back({n.place_index_.at(p), c});
        n.pre_t_[t] = multiset(std::move(pre));
        n.post_t_[t] = multiset(std::move(post));
        for (auto& [p, _] : n.pre_t_[t].entries()) n.post_p_[p].push_back(t);
        for (auto& [p, _] : n.post_t_[t].entries()) n.pre_p_[p].push_back(t);
    }
    std::vector<multiset::entry> init;
    for (auto& [p, c] : initial_)
        if (c > 0) init.push_back({n.place_index_.at(p), c});
    n.initial_ = marking(std::move(init));

    for (auto& [tname, hints] : flows_) {
        // hints must cover the transition's pre and post token slots exactly
        int32_t t = n.trans_index_.at(tname);
        multiset from, to;
        int created = 0, removed = 0;
        for (auto& h : hints) {
            if (h.from.empty() && h.to.empty()) throw net_error("flow hint with neither endpoint in " + tname);
            if (!h.from.empty()) {
                int32_t p = n.place_id(h.from);
                if (p == petri_net::npos) throw net_error("flow hint names unknown place " + h.from);
                from.add(p);
            } else {
                ++created;
            }
            if (!h.to.empty()) {
                int32_t p = n.place_id(h.to);
                if (p == petri_net::npos) throw net_error("flow hint names unknown place " + h.to);
                to.add(p);
            } else {
                ++removed;
            }
        }
        (void)removed;
        (void)created;
        if (from != n.pre_t_[t])
            throw net_error("flow hints for " + tname + " do not cover the precondition");
        if (to != n.post_t_[t])
            throw net_error("flow hints for " + tname + " do not cover the postcondition");
    }
    return n;
}

} // namespace petrisynth
