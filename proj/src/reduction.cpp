#include "petrisynth/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace petrisynth {

namespace {

bool dm_has_tuple(const decision_marking& dm, const decision_tuple& d) {
    auto it = std::lower_bound(dm.begin(), dm.end(), d.id,
                               [](const decision_tuple& a, int16_t id) { return a.id < id; });
    return it != dm.end() && *it == d;
}

const decision_tuple* dm_find(const decision_marking& dm, int16_t id) {
    auto it = std::lower_bound(dm.begin(), dm.end(), id,
                               [](const decision_tuple& a, int16_t i) { return a.id < i; });
    if (it != dm.end() && it->id == id) return &*it;
    return nullptr;
}

void dm_insert(decision_marking& dm, decision_tuple d) {
    auto it = std::lower_bound(dm.begin(), dm.end(), d.id,
                               [](const decision_tuple& a, int16_t id) { return a.id < id; });
    dm.insert(it, std::move(d));
}

void dm_erase_id(decision_marking& dm, int16_t id) {
    auto it = std::lower_bound(dm.begin(), dm.end(), id,
                               [](const decision_tuple& a, int16_t i) { return a.id < i; });
    if (it != dm.end() && it->id == id) dm.erase(it);
}

std::vector<int16_t> move_participants(const backward_move& m) {
    std::vector<int16_t> ids;
    for (auto& d : m.post) ids.push_back(d.id);
    return ids;
}

void append_u32(std::string& s, uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}

void encode_tuple(std::string& s, const decision_tuple& d) {
    append_u32(s, uint32_t(uint16_t(d.id)));
    append_u32(s, uint32_t(d.place));
    s.push_back(char(d.nes));
    s.push_back(d.top ? 1 : 0);
    append_u32(s, uint32_t(d.allowed.size()));
    for (auto t : d.allowed) append_u32(s, uint32_t(t));
    append_u32(s, uint32_t(uint16_t(d.lmc)));
}

void encode_dm(std::string& s, const decision_marking& dm) {
    append_u32(s, uint32_t(dm.size()));
    for (auto& d : dm) encode_tuple(s, d);
}

void encode_move(std::string& s, const backward_move& m) {
    s.push_back(char(m.kind));
    encode_dm(s, m.pre);
    encode_dm(s, m.post);
}

} // namespace

std::string flags_to_string(uint32_t flags) {
    std::string out;
    auto add = [&](uint32_t f, const char* n) {
        if (flags & f) {
            if (!out.empty()) out += "|";
            out += n;
        }
    };
    add(flag_term, "TERM");
    add(flag_dl, "DL");
    add(flag_ndet, "NDET");
    add(flag_bad, "BAD");
    add(flag_dl_t2, "DL_T2");
    add(flag_sync_t2, "SYNC_T2");
    add(flag_van_t2, "VAN_T2");
    add(flag_ur, "UR");
    return out.empty() ? "-" : out;
}

const char* edge_kind_name(edge_kind k) {
    switch (k) {
    case edge_kind::top: return "TOP";
    case edge_kind::sys: return "SYS";
    case edge_kind::mcut: return "MCUT";
    case edge_kind::nes_fire: return "NES_fire";
    case edge_kind::nes_finish: return "NES_finish";
    case edge_kind::nes_bad: return "NES_bad";
    case edge_kind::stop_b: return "STOP_B";
    case edge_kind::stop_n: return "STOP_N";
    case edge_kind::sentinel_loop: return "LOOP";
    }
    return "?";
}

reduction::reduction(const petri_game& game, const run_config& cfg) : game_(&game), cfg_(cfg) {
    if (game.winning.kind != winning_kind::bad_markings && game.winning.kind != winning_kind::bad_places)
        throw wrong_condition_kind("the reduction handles bad-places/bad-markings games only");
    auto rep = game.check_decidable_class(cfg.bound_k, cfg.marking_cap);
    max_s_ = rep.max_system_tokens;
    if (max_s_ < 1) max_s_ = 1; // keep one id slot even for pure environment games
    reachable_ = game.net.reachable_markings(cfg.bound_k, cfg.marking_cap);
    reachable_hashes_.reserve(reachable_.size());
    for (auto& m : reachable_) reachable_hashes_.push_back(m.hash());
    std::sort(reachable_hashes_.begin(), reachable_hashes_.end());

    // default sequence cap from the size-bound loop argument (triangular
    // number of players times the reachable markings), floored so that tiny
    // games leave room for the decision-varied loops that precede a useless
    // repetition
    size_t triangular = size_t(max_s_) * size_t(max_s_ + 1) / 2;
    bm_cap_ = std::min<size_t>(std::max<size_t>(triangular * reachable_.size(), 64), cfg.max_bm);

    system_only_.assign(game.net.num_transitions(), false);
    for (int32_t t = 0; t < game.net.num_transitions(); ++t) system_only_[t] = !game.env_in_pre(t);

    // A false->true NES flip is only offered for places that can sit on a
    // cycle of system-only transitions: off-cycle players can never re-reach
    // the stored marking after moving, so every such NES attempt is losing.
    nes_viable_.assign(game.net.num_places(), false);
    {
        int n = game.net.num_places();
        std::vector<std::vector<int>> adj(n);
        for (int32_t t = 0; t < game.net.num_transitions(); ++t) {
            if (!system_only_[t]) continue;
            for (auto& [p, _] : game.net.pre(t).entries())
                for (auto& [q, _2] : game.net.post(t).entries())
                    if (game.system_place(p) && game.system_place(q)) adj[p].push_back(q);
        }
        // Tarjan SCC; a place is viable iff its SCC has >1 node or a self-loop
        std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
        std::vector<int> stack;
        std::vector<bool> on(n, false);
        int next_index = 0, next_comp = 0;
        std::function<void(int)> dfs = [&](int v) {
            index[v] = low[v] = next_index++;
            stack.push_back(v);
            on[v] = true;
            for (int w : adj[v]) {
                if (index[w] < 0) {
                    dfs(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] == index[v]) {
                int size = 0;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on[w] = false;
                    comp[w] = next_comp;
                    ++size;
                    if (w == v) break;
                }
                ++next_comp;
                (void)size;
            }
        };
        for (int v = 0; v < n; ++v)
            if (index[v] < 0) dfs(v);
        std::vector<int> comp_size(next_comp, 0);
        for (int v = 0; v < n; ++v) comp_size[comp[v]]++;
        for (int v = 0; v < n; ++v) {
            if (comp_size[comp[v]] > 1) nes_viable_[v] = true;
            for (int w : adj[v])
                if (w == v) nes_viable_[v] = true;
        }
    }
    build_transits();
}

bool reduction::reachable_marking(const marking& m) const {
    if (!std::binary_search(reachable_hashes_.begin(), reachable_hashes_.end(), m.hash())) return false;
    for (auto& r : reachable_)
        if (r == m) return true;
    return false;
}

void reduction::build_transits() {
    const auto& net = game_->net;
    transits_.resize(net.num_transitions());
    for (int32_t t = 0; t < net.num_transitions(); ++t) {
        auto& spec = transits_[t];
        auto hint = game_->flow_hints.find(net.trans_name(t));
        if (hint != game_->flow_hints.end() && !hint->second.empty()) {
            for (auto& h : hint->second) {
                int32_t from = h.from.empty() ? -1 : net.place_id(h.from);
                int32_t to = h.to.empty() ? -1 : net.place_id(h.to);
                if (from >= 0 && to >= 0 && game_->system_place(from) != game_->system_place(to))
                    throw net_error("flow hint for " + net.trans_name(t) +
                                    " does not preserve the player type: " + h.from + "->" + h.to);
                spec.slots.push_back({from, to});
            }
        } else {
            // default: pair same-typed pre and post token slots in
            // lexicographic order; excess post slots are created, excess
            // pre slots removed
            for (int sys = 0; sys <= 1; ++sys) {
                std::vector<int32_t> pre_slots, post_slots;
                for (auto& [p, c] : net.pre(t).entries())
                    if (game_->system_place(p) == bool(sys))
                        for (int i = 0; i < c; ++i) pre_slots.push_back(p);
                for (auto& [p, c] : net.post(t).entries())
                    if (game_->system_place(p) == bool(sys))
                        for (int i = 0; i < c; ++i) post_slots.push_back(p);
                size_t k = std::min(pre_slots.size(), post_slots.size());
                for (size_t i = 0; i < k; ++i) spec.slots.push_back({pre_slots[i], post_slots[i]});
                for (size_t i = k; i < pre_slots.size(); ++i) spec.slots.push_back({pre_slots[i], -1});
                for (size_t i = k; i < post_slots.size(); ++i) spec.slots.push_back({-1, post_slots[i]});
            }
        }
        // canonical in-place order: by (from, to), created slots last
        std::sort(spec.slots.begin(), spec.slots.end(), [](auto& a, auto& b) {
            auto ka = a.first < 0 ? std::numeric_limits<int32_t>::max() : a.first;
            auto kb = b.first < 0 ? std::numeric_limits<int32_t>::max() : b.first;
            if (ka != kb) return ka < kb;
            auto ta = a.second < 0 ? std::numeric_limits<int32_t>::max() : a.second;
            auto tb = b.second < 0 ? std::numeric_limits<int32_t>::max() : b.second;
            return ta < tb;
        });
    }
}

multiset reduction::underlying(const decision_marking& dm) {
    multiset m;
    for (auto& d : dm) m.add(d.place);
    return m;
}

multiset reduction::underlying_nonend(const decision_marking& dm) {
    multiset m;
    for (auto& d : dm)
        if (d.nes != nes_status::ended) m.add(d.place);
    return m;
}

multiset reduction::underlying_true(const decision_marking& dm) {
    multiset m;
    for (auto& d : dm)
        if (d.nes == nes_status::positive) m.add(d.place);
    return m;
}

decision_marking reduction::restrict_pre(const decision_marking& dm, int32_t t) const {
    const auto& pre = game_->net.pre(t);
    decision_marking out;
    for (auto& d : dm) {
        if (d.nes == nes_status::ended) continue;
        if (!d.allows(t)) continue;
        if (!pre.contains(d.place)) continue;
        out.push_back(d);
    }
    return out;
}

decision_marking reduction::restrict_pre_t2(const decision_marking& dm, int32_t t) const {
    decision_marking out;
    for (auto& d : restrict_pre(dm, t))
        if (d.nes == nes_status::positive) out.push_back(d);
    return out;
}

bool reduction::enabled_allowed(const decision_marking& dm, int32_t t) const {
    return underlying(restrict_pre(dm, t)).includes(game_->net.pre(t));
}

bool reduction::enabled_allowed_t2(const decision_marking& dm, int32_t t) const {
    return underlying(restrict_pre_t2(dm, t)).includes(game_->net.pre(t));
}

bool reduction::corresponds_to_mcut(const decision_marking& dm) const {
    for (auto& d : dm)
        if (d.top || d.nes == nes_status::positive) return false;
    for (int32_t t = 0; t < game_->net.num_transitions(); ++t)
        if (system_only_[t] && enabled_allowed(dm, t)) return false;
    return true;
}

reduction_state reduction::initial_state() const {
    reduction_state s;
    const auto& net = game_->net;
    int16_t next_id = 1;
    for (auto& [p, c] : net.initial().entries()) {
        if (!game_->system_place(p)) continue;
        for (int i = 0; i < c; ++i) {
            decision_tuple d;
            d.id = next_id++;
            d.place = p;
            d.nes = nes_status::negative;
            d.top = true;
            d.lmc = 1;
            dm_insert(s.dm, std::move(d));
        }
    }
    for (auto& [p, c] : net.initial().entries()) {
        if (game_->system_place(p)) continue;
        if (c != 1) throw not_one_env_player("initial marking must hold exactly one environment token");
        decision_tuple d;
        d.id = 0;
        d.place = p;
        d.nes = nes_status::negative;
        d.top = false;
        d.allowed.assign(net.post_of_place(p).begin(), net.post_of_place(p).end());
        d.lmc = 0;
        dm_insert(s.dm, std::move(d));
    }
    s.bm.assign(max_s_, {});
    return s;
}

transit_result reduction::transit(const decision_marking& dm, int16_t id, int32_t t) const {
    const decision_tuple* d = dm_find(dm, id);
    if (!d) throw net_error("transit: no tuple with id " + std::to_string(id));
    int32_t p = d->place;
    // tuples on p that participate, sorted by id; this token's index
    auto participants = restrict_pre(dm, t);
    int32_t need = game_->net.pre(t).count(p);
    int idx = 0;
    int found = -1;
    for (auto& e : participants) {
        if (e.place != p) continue;
        if (idx >= need) break;
        if (e.id == id) found = idx;
        ++idx;
    }
    if (found < 0) throw net_error("transit: player does not participate in " + game_->net.trans_name(t));
    std::vector<int32_t> dests; // moved destinations first, removals (-1) last
    for (auto& [from, to] : transits_[t].slots)
        if (from == p) dests.push_back(to);
    if (found >= int(dests.size())) throw net_error("transit: slot mismatch");
    if (dests[found] < 0) return {transit_result::kind_t::removed, -1};
    return {transit_result::kind_t::moved, dests[found]};
}

std::vector<decision_marking> reduction::instances(const decision_marking& allowed_pre, int32_t t) const {
    const auto& pre = game_->net.pre(t);
    std::vector<std::vector<decision_tuple>> groups;
    std::vector<int> need;
    for (auto& [p, c] : pre.entries()) {
        std::vector<decision_tuple> g;
        for (auto& d : allowed_pre)
            if (d.place == p) g.push_back(d);
        if (int(g.size()) < c) return {};
        groups.push_back(std::move(g));
        need.push_back(c);
    }
    std::vector<decision_marking> out;
    std::vector<decision_tuple> acc;
    std::function<void(size_t)> walk = [&](size_t gi) {
        if (gi == groups.size()) {
            decision_marking inst = acc;
            std::sort(inst.begin(), inst.end(),
                      [](const decision_tuple& a, const decision_tuple& b) { return a.id < b.id; });
            out.push_back(std::move(inst));
            return;
        }
        auto& g = groups[gi];
        int k = need[gi];
        std::vector<int> idx(k);
        std::function<void(int, int)> comb = [&](int start, int chosen) {
            if (chosen == k) {
                size_t base = acc.size();
                for (int i = 0; i < k; ++i) acc.push_back(g[idx[i]]);
                walk(gi + 1);
                acc.resize(base);
                return;
            }
            for (int s = start; s < int(g.size()); ++s) {
                idx[chosen] = s;
                comb(s + 1, chosen + 1);
            }
        };
        comb(0, 0);
    };
    walk(0);
    return out;
}

std::vector<reduction::firing> reduction::firings(const decision_marking& dm, int32_t t, bool t2_mode) const {
    decision_marking allowed = t2_mode ? restrict_pre_t2(dm, t) : restrict_pre(dm, t);
    std::vector<firing> out;
    for (auto& inst : instances(allowed, t)) {
        firing f;
        f.instance = inst;
        int16_t lmc = 0;
        for (auto& d : inst) lmc = std::max(lmc, d.lmc);
        // per-place destination lists (moved destinations sorted, removals last)
        std::map<int32_t, std::vector<int32_t>> dests;
        for (auto& [from, to] : transits_[t].slots) {
            if (from >= 0) dests[from].push_back(to);
        }
        std::map<int32_t, int> cursor;
        bool ok = true;
        for (auto& d : inst) {
            auto& list = dests[d.place];
            int& cur = cursor[d.place];
            if (cur >= int(list.size())) {
                ok = false;
                break;
            }
            int32_t to = list[cur++];
            if (to < 0) continue; // removed
            if (d.id == 0) {
                if (game_->system_place(to)) throw net_error("transit maps the environment player to a system place");
                f.env_posts.push_back(to);
            } else {
                decision_tuple nd;
                nd.id = d.id;
                nd.place = to;
                nd.nes = d.nes;
                nd.top = true; // decision chosen later
                nd.lmc = lmc;
                f.moved.push_back(std::move(nd));
            }
        }
        if (!ok) continue;
        // created slots
        std::vector<int32_t> created_sys;
        for (auto& [from, to] : transits_[t].slots) {
            if (from >= 0) continue;
            if (game_->system_place(to)) created_sys.push_back(to);
            else f.env_posts.push_back(to);
        }
        std::sort(created_sys.begin(), created_sys.end());
        std::sort(f.env_posts.begin(), f.env_posts.end());
        // fresh ids: lowest free
        std::vector<bool> used(max_s_ + 1, false);
        for (auto& d : dm)
            if (d.id > 0 && !dm_find(inst, d.id)) used[d.id] = true;
        for (auto& d : f.moved) used[d.id] = true;
        int16_t next = 1;
        for (auto p : created_sys) {
            while (next <= max_s_ && used[next]) ++next;
            if (next > max_s_) throw class_error("ran out of player identifiers; class check violated");
            used[next] = true;
            decision_tuple nd;
            nd.id = next;
            nd.place = p;
            nd.nes = t2_mode ? nes_status::positive : nes_status::negative;
            nd.top = true;
            nd.lmc = lmc;
            f.created.push_back(std::move(nd));
        }
        for (auto& d : f.moved)
            if (t2_mode) d.nes = nes_status::positive;
        out.push_back(std::move(f));
    }
    return out;
}

rewind_result reduction::enumerate_rewind(const decision_marking& dm0,
                                          const std::vector<std::vector<backward_move>>& bm) const {
    rewind_result res;
    std::map<std::vector<int>, int> seen;
    std::deque<int> frontier;
    std::vector<int> d0(max_s_, 0);
    for (int i = 0; i < max_s_; ++i) d0[i] = int(bm[i].size());
    seen[d0] = 0;
    res.dms.push_back(dm0);
    res.depths.push_back(d0);
    frontier.push_back(0);
    while (!frontier.empty()) {
        int node = frontier.front();
        frontier.pop_front();
        decision_marking dm = res.dms[node];
        std::vector<int> depth = res.depths[node];
        for (int i = 1; i <= max_s_; ++i) {
            if (depth[i - 1] == 0) continue;
            const backward_move& m = bm[i - 1][depth[i - 1] - 1];
            auto parts = move_participants(m);
            if (parts.empty()) continue;
            if (parts.front() != i) continue; // anchor at the smallest participant
            bool ok = true;
            for (auto j : parts) {
                if (j < 1 || j > max_s_ || depth[j - 1] == 0 || !(bm[j - 1][depth[j - 1] - 1] == m)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (auto& d : m.post)
                if (!dm_has_tuple(dm, d)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            // applying must keep identifiers unique
            for (auto& d : m.pre) {
                if (dm_find(m.post, d.id)) continue;
                if (dm_find(dm, d.id)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            decision_marking next = dm;
            for (auto& d : m.post) dm_erase_id(next, d.id);
            for (auto& d : m.pre) dm_insert(next, d);
            std::vector<int> ndepth = depth;
            for (auto j : parts) ndepth[j - 1]--;
            if (seen.count(ndepth)) continue;
            if (res.dms.size() >= cfg_.rewind_cap) {
                throw cap_exceeded("backward-move exploration cap exceeded");
            }
            seen[ndepth] = int(res.dms.size());
            res.dms.push_back(std::move(next));
            res.depths.push_back(ndepth);
            frontier.push_back(int(res.dms.size()) - 1);
        }
    }
    return res;
}

std::vector<decision_marking> reduction::bm_reachable(const reduction_state& s) const {
    auto rw = enumerate_rewind(s.dm, s.bm);
    std::vector<decision_marking> out;
    std::set<std::string> seen;
    for (auto& dm : rw.dms) {
        std::string enc;
        encode_dm(enc, dm);
        if (seen.insert(enc).second) out.push_back(dm);
    }
    return out;
}

uint32_t reduction::classify_state(const reduction_state& s, std::string* witness) const {
    const auto& net = game_->net;
    uint32_t flags = 0;
    std::string wit;

    // termination over the non-ended part of the marking: ended players are
    // committed to their certified infinite loop and leave the residual game
    multiset m_ne = underlying_nonend(s.dm);
    bool term = true;
    for (int32_t t = 0; t < net.num_transitions() && term; ++t)
        if (m_ne.includes(net.pre(t))) term = false;
    if (term) flags |= flag_term;

    bool dl = true;
    for (int32_t t = 0; t < net.num_transitions() && dl; ++t)
        if (enabled_allowed(s.dm, t)) dl = false;
    if (dl) flags |= flag_dl;

    bool has_true = false;
    for (auto& d : s.dm) has_true |= d.nes == nes_status::positive;
    if (has_true) {
        bool dlt2 = true;
        for (int32_t t = 0; t < net.num_transitions() && dlt2; ++t)
            if (enabled_allowed_t2(s.dm, t)) dlt2 = false;
        if (dlt2) flags |= flag_dl_t2;
    }
    if (!s.m_t2.empty() && !has_true) flags |= flag_van_t2;

    auto rw = enumerate_rewind(s.dm, s.bm);
    for (size_t n = 0; n < rw.dms.size(); ++n) {
        const decision_marking& dm = rw.dms[n];
        multiset m = underlying(dm);
        if (!(flags & flag_bad) && game_->is_bad(m)) {
            flags |= flag_bad;
            if (wit.empty()) wit = "bad marking " + net.format_marking(m);
        }
        for (auto& d : dm) {
            if (d.id == 0 || d.top || d.nes == nes_status::ended) continue;
            // two allowed transitions of one player enabled at once
            int32_t first = -1;
            for (auto t : d.allowed) {
                if (!enabled_allowed(dm, t)) continue;
                if (first >= 0) {
                    flags |= flag_ndet;
                    if (wit.empty())
                        wit = "nondeterministic decision at " + net.place_name(d.place) + " between " +
                              net.trans_name(first) + " and " + net.trans_name(t) + " in " +
                              net.format_marking(m);
                    break;
                }
                first = t;
            }
            // over-full single transition: two enabled instances share this token
            for (auto t : d.allowed) {
                if (!enabled_allowed(dm, t)) continue;
                auto rp = underlying(restrict_pre(dm, t));
                for (auto& [q, c] : game_->net.pre(t).entries()) {
                    if (rp.count(q) <= c) continue;
                    if (q != d.place || c >= 2) {
                        flags |= flag_ndet;
                        if (wit.empty())
                            wit = "overfull transition " + net.trans_name(t) + " from " +
                                  net.place_name(d.place) + " in " + net.format_marking(m);
                    }
                }
            }
            if (d.nes == nes_status::positive) {
                for (auto t : net.post_of_place(d.place)) {
                    if (enabled_allowed(dm, t) && !enabled_allowed_t2(dm, t)) {
                        flags |= flag_sync_t2;
                        if (wit.empty())
                            wit = "NES player at " + net.place_name(d.place) +
                                  " would synchronize via " + net.trans_name(t);
                    }
                }
            }
        }
    }

    // useless repetition: the same decision marking occurs at four rewind
    // depths forming two identical loops of backward-move segments
    {
        std::map<std::string, std::vector<const std::vector<int>*>> groups;
        for (size_t n = 0; n < rw.dms.size(); ++n) {
            std::string enc;
            encode_dm(enc, rw.dms[n]);
            groups[enc].push_back(&rw.depths[n]);
        }
        auto seg_equal = [&](const std::vector<int>& lo1, const std::vector<int>& hi1,
                             const std::vector<int>& lo2, const std::vector<int>& hi2) {
            for (int i = 0; i < max_s_; ++i) {
                if (hi1[i] - lo1[i] != hi2[i] - lo2[i]) return false;
                for (int k = 0; k < hi1[i] - lo1[i]; ++k)
                    if (!(s.bm[i][lo1[i] + k] == s.bm[i][lo2[i] + k])) return false;
            }
            return true;
        };
        auto leq = [&](const std::vector<int>& a, const std::vector<int>& b) {
            for (int i = 0; i < max_s_; ++i)
                if (a[i] > b[i]) return false;
            return true;
        };
        for (auto& [_, vecs] : groups) {
            if (flags & flag_ur) break;
            if (vecs.size() < 3) continue;
            // pairs (a,b), a<=b, nonzero delta
            std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>> pairs;
            for (auto* a : vecs)
                for (auto* b : vecs)
                    if (a != b && leq(*a, *b)) pairs.push_back({a, b});
            for (auto& p1 : pairs) {
                if (flags & flag_ur) break;
                if (*p1.first == *p1.second) continue;
                for (auto& p2 : pairs) {
                    if (!leq(*p1.second, *p2.first)) continue;
                    if (!seg_equal(*p1.first, *p1.second, *p2.first, *p2.second)) continue;
                    bool strict = false;
                    for (int i = 0; i < max_s_; ++i) strict |= (*p1.first)[i] < (*p1.second)[i];
                    if (!strict) continue;
                    flags |= flag_ur;
                    if (wit.empty()) wit = "useless repetition of a system-only loop";
                    break;
                }
            }
        }
    }

    if (witness) *witness = wit;
    return flags;
}

namespace {

// Enumerates all subsets of `options` (sorted ids); bitmask order.
std::vector<std::vector<int32_t>> all_subsets(const std::vector<int32_t>& options) {
    std::vector<std::vector<int32_t>> out;
    size_t n = options.size();
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
        std::vector<int32_t> s;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t(1) << i)) s.push_back(options[i]);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

std::vector<reduction::successor> reduction::successors(const reduction_state& s) const {
    const auto& net = game_->net;
    std::vector<successor> out;

    bool has_top = false, has_true = false, has_end = false;
    for (auto& d : s.dm) {
        has_top |= d.top;
        has_true |= d.nes == nes_status::positive;
        has_end |= d.nes == nes_status::ended;
    }

    auto push_bm = [&](std::vector<std::vector<backward_move>>& bm, const backward_move& m) {
        for (auto id : move_participants(m)) {
            auto& seq = bm.at(id - 1);
            seq.push_back(m);
            if (seq.size() > bm_cap_)
                throw bm_cap_exceeded("backward-move sequence for player " + std::to_string(id) +
                                      " exceeded cap " + std::to_string(bm_cap_));
        }
    };

    if (has_top) {
        if (has_true || !s.m_t2.empty())
            throw net_error("invariant broken: top decision in a NES-case state");
        // option lists per tuple
        struct opt {
            std::vector<std::vector<int32_t>> decisions;
            std::vector<nes_status> statuses;
        };
        std::vector<opt> opts;
        for (auto& d : s.dm) {
            opt o;
            if (d.top) {
                std::vector<int32_t> post(net.post_of_place(d.place).begin(),
                                          net.post_of_place(d.place).end());
                o.decisions = all_subsets(post);
            } else {
                o.decisions = {d.allowed};
            }
            o.statuses = {d.nes};
            if (d.id != 0 && d.nes == nes_status::negative && !has_end && nes_viable_[d.place])
                o.statuses.push_back(nes_status::positive);
            opts.push_back(std::move(o));
        }
        std::function<void(size_t, decision_marking&, std::vector<int16_t>&)> walk =
            [&](size_t i, decision_marking& acc, std::vector<int16_t>& flipped) {
                if (i == s.dm.size()) {
                    successor suc;
                    suc.info.kind = edge_kind::top;
                    suc.info.flipped = flipped;
                    suc.state.dm = acc;
                    suc.state.m_t2 = underlying_true(acc);
                    suc.state.bm = s.bm;
                    out.push_back(std::move(suc));
                    return;
                }
                for (auto& dec : opts[i].decisions) {
                    for (auto st : opts[i].statuses) {
                        decision_tuple d = s.dm[i];
                        d.top = false;
                        d.allowed = dec;
                        bool flip = st != s.dm[i].nes;
                        d.nes = st;
                        acc.push_back(d);
                        if (flip) flipped.push_back(d.id);
                        walk(i + 1, acc, flipped);
                        if (flip) flipped.pop_back();
                        acc.pop_back();
                    }
                }
            };
        decision_marking acc;
        std::vector<int16_t> flipped;
        walk(0, acc, flipped);
        return out;
    }

    std::string wit;
    uint32_t fl = classify_state(s, &wit);
    bool losing = (fl & losing_flags) != 0 || ((fl & flag_dl) && !(fl & flag_term));
    if (losing) {
        successor suc;
        suc.info.kind = edge_kind::stop_n;
        suc.to_fn = true;
        out.push_back(std::move(suc));
        return out;
    }
    if (fl & flag_term) {
        successor suc;
        suc.info.kind = edge_kind::stop_b;
        suc.to_fb = true;
        out.push_back(std::move(suc));
        return out;
    }

    if (has_true) {
        // markings reachable backward from the positive part of the state
        decision_marking dm_t2;
        for (auto& d : s.dm)
            if (d.nes == nes_status::positive) dm_t2.push_back(d);
        auto rw = enumerate_rewind(dm_t2, s.bm);
        std::vector<multiset> seen_true;
        for (auto& dm : rw.dms) seen_true.push_back(underlying_true(dm));
        auto repeated = [&](const multiset& m) {
            for (auto& r : seen_true)
                if (r == m) return true;
            return false;
        };
        bool all_moved = true;
        for (auto& [p, _] : s.m_t2.entries()) {
            bool moved = false;
            for (auto& r : seen_true)
                if (!r.contains(p)) moved = true;
            if (!moved) all_moved = false;
        }

        for (int32_t t = 0; t < net.num_transitions(); ++t) {
            if (!system_only_[t] || !enabled_allowed_t2(s.dm, t)) continue;
            for (auto& f : firings(s.dm, t, true)) {
                if (!f.env_posts.empty())
                    throw net_error("invariant broken: system-only transition with environment output");
                // enumerate postcondition decisions
                std::vector<decision_tuple> produced = f.moved;
                produced.insert(produced.end(), f.created.begin(), f.created.end());
                std::vector<std::vector<std::vector<int32_t>>> choices;
                for (auto& d : produced) {
                    std::vector<int32_t> post(net.post_of_place(d.place).begin(),
                                              net.post_of_place(d.place).end());
                    choices.push_back(all_subsets(post));
                }
                std::vector<size_t> pick(produced.size(), 0);
                std::function<void(size_t)> walk = [&](size_t i) {
                    if (i == produced.size()) {
                        decision_marking pc;
                        for (size_t k = 0; k < produced.size(); ++k) {
                            decision_tuple d = produced[k];
                            d.top = false;
                            d.allowed = choices[k][pick[k]];
                            dm_insert(pc, std::move(d));
                        }
                        decision_marking d2 = s.dm;
                        for (auto& d : f.instance) dm_erase_id(d2, d.id);
                        for (auto& d : pc) dm_insert(d2, d);
                        multiset m2 = underlying_true(d2);

                        successor suc;
                        suc.info.trans = t;
                        for (auto& d : f.instance) suc.info.consumed.push_back({d.id, d.place});
                        for (auto& d : pc) suc.info.produced.push_back({d.id, d.place});

                        if (!repeated(m2)) {
                            suc.info.kind = edge_kind::nes_fire;
                            suc.state.dm = d2;
                            suc.state.m_t2 = s.m_t2;
                            suc.state.bm = s.bm;
                            if (!pc.empty()) {
                                backward_move m;
                                m.kind = backward_move::kind_t::transition;
                                m.pre = f.instance;
                                m.post = pc;
                                push_bm(suc.state.bm, m);
                            }
                        } else if (m2 == s.m_t2 && all_moved) {
                            suc.info.kind = edge_kind::nes_finish;
                            decision_marking ended = d2;
                            decision_marking pc_end = pc;
                            for (auto& d : ended)
                                if (d.nes == nes_status::positive) d.nes = nes_status::ended;
                            for (auto& d : pc_end) d.nes = nes_status::ended;
                            decision_marking x_pre, x_post; // non-participant flips true->end
                            for (auto& d : s.dm) {
                                if (d.nes != nes_status::positive) continue;
                                if (dm_find(f.instance, d.id)) continue;
                                x_pre.push_back(d);
                                decision_tuple e = d;
                                e.nes = nes_status::ended;
                                x_post.push_back(e);
                            }
                            suc.state.dm = ended;
                            suc.state.m_t2 = multiset();
                            suc.state.bm = s.bm;
                            if (!pc_end.empty()) {
                                backward_move m1;
                                m1.kind = backward_move::kind_t::transition;
                                m1.pre = f.instance;
                                m1.post = pc_end;
                                push_bm(suc.state.bm, m1);
                            }
                            if (!x_post.empty()) {
                                backward_move m2v;
                                m2v.kind = backward_move::kind_t::nes_boundary;
                                m2v.pre = x_pre;
                                m2v.post = x_post;
                                push_bm(suc.state.bm, m2v);
                            }
                        } else {
                            suc.info.kind = edge_kind::nes_bad;
                            suc.to_fn = true;
                        }
                        out.push_back(std::move(suc));
                        return;
                    }
                    for (pick[i] = 0; pick[i] < choices[i].size(); ++pick[i]) walk(i + 1);
                };
                walk(0);
            }
        }
        return out;
    }

    if (corresponds_to_mcut(s.dm)) {
        if (!s.m_t2.empty()) throw net_error("invariant broken: nonempty NES marking at an mcut");
        for (int32_t t = 0; t < net.num_transitions(); ++t) {
            if (!enabled_allowed(s.dm, t)) continue;
            if (system_only_[t]) throw net_error("invariant broken: system transition enabled at an mcut");
            for (auto& f : firings(s.dm, t, false)) {
                decision_marking rest = s.dm;
                for (auto& d : f.instance) dm_erase_id(rest, d.id);
                // reduce_mcut: order-preserving renumbering of last-mcut tags
                std::vector<int16_t> lmcs;
                for (auto& d : rest)
                    if (d.id != 0) lmcs.push_back(d.lmc);
                std::sort(lmcs.begin(), lmcs.end());
                lmcs.erase(std::unique(lmcs.begin(), lmcs.end()), lmcs.end());
                auto renumber = [&](int16_t v) {
                    auto it = std::lower_bound(lmcs.begin(), lmcs.end(), v);
                    return int16_t(it - lmcs.begin() + 1);
                };
                for (auto& d : rest)
                    if (d.id != 0) d.lmc = renumber(d.lmc);
                int16_t k_new = int16_t(lmcs.size() + 1);
                if (k_new > max_s_ && !(f.moved.empty() && f.created.empty()))
                    throw net_error("invariant broken: last-mcut tag exceeds max_S");

                successor suc;
                suc.info.kind = edge_kind::mcut;
                suc.info.trans = t;
                for (auto& d : f.instance) suc.info.consumed.push_back({d.id, d.place});

                decision_marking d2 = rest;
                std::vector<int16_t> cleared;
                for (auto& d : f.instance)
                    if (d.id != 0) cleared.push_back(d.id);
                for (auto nd : f.moved) {
                    nd.lmc = k_new;
                    nd.top = true;
                    nd.allowed.clear();
                    suc.info.produced.push_back({nd.id, nd.place});
                    dm_insert(d2, std::move(nd));
                }
                for (auto nd : f.created) {
                    nd.lmc = k_new;
                    nd.top = true;
                    nd.allowed.clear();
                    cleared.push_back(nd.id);
                    suc.info.produced.push_back({nd.id, nd.place});
                    dm_insert(d2, std::move(nd));
                }
                for (auto q : f.env_posts) {
                    decision_tuple e;
                    e.id = 0;
                    e.place = q;
                    e.nes = nes_status::negative;
                    e.top = false;
                    e.allowed.assign(net.post_of_place(q).begin(), net.post_of_place(q).end());
                    e.lmc = 0;
                    suc.info.produced.push_back({0, q});
                    dm_insert(d2, std::move(e));
                }
                suc.state.dm = d2;
                suc.state.bm = s.bm;
                std::sort(cleared.begin(), cleared.end());
                for (auto id : cleared) suc.state.bm.at(id - 1).clear();
                // prune moves that can never be applied again: a cleared
                // participant will never have them at the end of its sequence
                for (auto& seq : suc.state.bm) {
                    std::erase_if(seq, [&](const backward_move& m) {
                        for (auto id : move_participants(m))
                            if (std::binary_search(cleared.begin(), cleared.end(), id)) return true;
                        return false;
                    });
                }
                // the last-mcut renumbering must reach into the retained
                // backward moves, or their tuples stop matching the state
                for (auto& seq : suc.state.bm)
                    for (auto& m : seq) {
                        for (auto& d : m.pre) d.lmc = renumber(d.lmc);
                        for (auto& d : m.post) d.lmc = renumber(d.lmc);
                    }
                out.push_back(std::move(suc));
            }
        }
        return out;
    }

    // SYS edges
    for (int32_t t = 0; t < net.num_transitions(); ++t) {
        if (!system_only_[t] || !enabled_allowed(s.dm, t)) continue;
        for (auto& f : firings(s.dm, t, false)) {
            if (!f.env_posts.empty())
                throw net_error("invariant broken: system-only transition with environment output");
            std::vector<decision_tuple> produced = f.moved;
            produced.insert(produced.end(), f.created.begin(), f.created.end());
            std::vector<std::vector<std::vector<int32_t>>> choices;
            for (auto& d : produced) {
                std::vector<int32_t> post(net.post_of_place(d.place).begin(),
                                          net.post_of_place(d.place).end());
                choices.push_back(all_subsets(post));
            }
            std::vector<size_t> pick(produced.size(), 0);
            std::function<void(size_t)> walk = [&](size_t i) {
                if (i < produced.size()) {
                    for (pick[i] = 0; pick[i] < choices[i].size(); ++pick[i]) walk(i + 1);
                    return;
                }
                decision_marking pc;
                for (size_t k = 0; k < produced.size(); ++k) {
                    decision_tuple d = produced[k];
                    d.top = false;
                    d.allowed = choices[k][pick[k]];
                    dm_insert(pc, std::move(d));
                }
                decision_marking base = s.dm;
                for (auto& d : f.instance) dm_erase_id(base, d.id);
                for (auto& d : pc) dm_insert(base, d);
                // NES flips over the whole successor marking
                std::vector<int16_t> candidates;
                if (!has_end) {
                    for (auto& d : base)
                        if (d.id != 0 && d.nes == nes_status::negative && nes_viable_[d.place])
                            candidates.push_back(d.id);
                }
                size_t nflip = candidates.size();
                for (size_t mask = 0; mask < (size_t(1) << nflip); ++mask) {
                    decision_marking d2 = base;
                    std::vector<int16_t> flipped;
                    for (size_t b = 0; b < nflip; ++b) {
                        if (!(mask & (size_t(1) << b))) continue;
                        flipped.push_back(candidates[b]);
                        for (auto& d : d2)
                            if (d.id == candidates[b]) d.nes = nes_status::positive;
                    }
                    decision_marking pc_final;
                    for (auto& d : pc) {
                        auto* cur = dm_find(d2, d.id);
                        pc_final.push_back(*cur);
                    }
                    successor suc;
                    suc.info.kind = edge_kind::sys;
                    suc.info.trans = t;
                    suc.info.flipped = flipped;
                    for (auto& d : f.instance) suc.info.consumed.push_back({d.id, d.place});
                    for (auto& d : pc_final) suc.info.produced.push_back({d.id, d.place});
                    suc.state.dm = d2;
                    suc.state.m_t2 = underlying_true(d2);
                    suc.state.bm = s.bm;
                    if (!pc_final.empty()) {
                        backward_move m1;
                        m1.kind = backward_move::kind_t::transition;
                        m1.pre = f.instance;
                        m1.post = pc_final;
                        push_bm(suc.state.bm, m1);
                    }
                    decision_marking x_pre, x_post; // flipped non-participants
                    for (auto id : flipped) {
                        if (dm_find(pc, id)) continue;
                        const decision_tuple* before = dm_find(s.dm, id);
                        const decision_tuple* after = dm_find(d2, id);
                        x_pre.push_back(*before);
                        x_post.push_back(*after);
                    }
                    if (!x_post.empty()) {
                        backward_move m2;
                        m2.kind = backward_move::kind_t::nes_boundary;
                        m2.pre = x_pre;
                        m2.post = x_post;
                        push_bm(suc.state.bm, m2);
                    }
                    out.push_back(std::move(suc));
                }
            };
            walk(0);
        }
    }
    return out;
}

std::string reduction::format_dm(const decision_marking& dm) const {
    const auto& net = game_->net;
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& d : dm) {
        if (!first) os << ", ";
        first = false;
        os << "(" << d.id << "," << net.place_name(d.place) << ",";
        os << (d.nes == nes_status::negative ? "F" : d.nes == nes_status::positive ? "T" : "E") << ",";
        if (d.top) {
            os << "TOP";
        } else {
            os << "{";
            for (size_t i = 0; i < d.allowed.size(); ++i)
                os << (i ? "," : "") << net.trans_name(d.allowed[i]);
            os << "}";
        }
        os << "," << d.lmc << ")";
    }
    os << "}";
    return os.str();
}

std::string reduction::format_state(const reduction_state& s, bool verbose) const {
    std::ostringstream os;
    os << format_dm(s.dm);
    if (!s.m_t2.empty()) os << " mt2=" << game_->net.format_marking(s.m_t2);
    bool any = false;
    for (auto& seq : s.bm) any |= !seq.empty();
    if (any) {
        if (!verbose) {
            os << " bm=[";
            for (size_t i = 0; i < s.bm.size(); ++i) os << (i ? "," : "") << s.bm[i].size();
            os << "]";
        } else {
            for (size_t i = 0; i < s.bm.size(); ++i) {
                if (s.bm[i].empty()) continue;
                os << "\nbm" << (i + 1) << ":";
                for (auto& m : s.bm[i])
                    os << " (" << format_dm(m.pre) << "->" << format_dm(m.post) << ")";
            }
        }
    }
    return os.str();
}

std::string reduction::encode(const reduction_state& s) const {
    std::string enc;
    encode_dm(enc, s.dm);
    append_u32(enc, uint32_t(s.m_t2.entries().size()));
    for (auto& [p, c] : s.m_t2.entries()) {
        append_u32(enc, uint32_t(p));
        append_u32(enc, uint32_t(c));
    }
    append_u32(enc, uint32_t(s.bm.size()));
    for (auto& seq : s.bm) {
        append_u32(enc, uint32_t(seq.size()));
        for (auto& m : seq) encode_move(enc, m);
    }
    return enc;
}

reduction_arena build_arena(const reduction& red, const run_config& cfg) {
    reduction_arena ra;
    std::unordered_map<std::string, int> index;
    std::deque<int> worklist;

    auto intern = [&](reduction_state st) -> int {
        auto enc = red.encode(st);
        auto it = index.find(enc);
        if (it != index.end()) return it->second;
        if (ra.states.size() >= cfg.max_states)
            throw state_cap_exceeded("arena state cap " + std::to_string(cfg.max_states) +
                                     " exceeded (frontier " + std::to_string(worklist.size()) + ")");
        int id = int(ra.states.size());
        index.emplace(std::move(enc), id);
        ra.states.push_back(std::move(st));
        ra.flags.push_back(0);
        ra.witnesses.push_back("");
        ra.edges.push_back({});
        worklist.push_back(id);
        return id;
    };
    auto sentinel = [&](bool fb) -> int {
        int& slot = fb ? ra.fb : ra.fn;
        if (slot >= 0) return slot;
        int id = int(ra.states.size());
        ra.states.push_back({});
        ra.flags.push_back(0);
        ra.witnesses.push_back("");
        ra.edges.push_back({});
        slot = id;
        edge_info loop;
        loop.kind = edge_kind::sentinel_loop;
        ra.infos.push_back(loop);
        ra.edges[id].push_back({int(ra.infos.size()) - 1, id});
        return id;
    };

    intern(red.initial_state());
    while (!worklist.empty()) {
        int v = worklist.front();
        worklist.pop_front();
        reduction_state st = ra.states[v]; // copy: vector may reallocate
        bool has_top = false;
        for (auto& d : st.dm) has_top |= d.top;
        if (!has_top) {
            std::string wit;
            ra.flags[v] = red.classify_state(st, &wit);
            ra.witnesses[v] = wit;
        }
        auto sucs = red.successors(st);
        // deterministic edge order: by encoded target state, then info bytes
        std::vector<std::tuple<std::string, size_t>> order;
        for (size_t i = 0; i < sucs.size(); ++i) {
            std::string key;
            if (sucs[i].to_fb) key = "\x01";
            else if (sucs[i].to_fn) key = "\x02";
            else key = "\x03" + red.encode(sucs[i].state);
            key += char(sucs[i].info.kind);
            key += std::to_string(sucs[i].info.trans);
            for (auto& [id, p] : sucs[i].info.consumed) key += std::to_string(id) + ":" + std::to_string(p);
            for (auto& [id, p] : sucs[i].info.produced) key += std::to_string(id) + "/" + std::to_string(p);
            for (auto id : sucs[i].info.flipped) key += "^" + std::to_string(id);
            order.push_back({std::move(key), i});
        }
        std::sort(order.begin(), order.end());
        std::string prev_key;
        for (auto& [key, i] : order) {
            if (key == prev_key) continue; // exact duplicate edge
            prev_key = key;
            auto& suc = sucs[i];
            int target;
            if (suc.to_fb) target = sentinel(true);
            else if (suc.to_fn) target = sentinel(false);
            else target = intern(suc.state);
            ra.infos.push_back(suc.info);
            ra.edges[v].push_back({int(ra.infos.size()) - 1, target});
        }
    }

    int n = int(ra.states.size());
    ra.arena.owner.assign(n, buchi::player0);
    ra.arena.accepting.assign(n, 0);
    ra.arena.succ.assign(n, {});
    ra.arena.initial = 0;
    for (int v = 0; v < n; ++v) {
        bool sent = ra.is_sentinel(v);
        bool mcut = !sent && red.corresponds_to_mcut(ra.states[v].dm);
        if (sent || mcut) ra.arena.owner[v] = buchi::player1;
        if (v == ra.fb || mcut) ra.arena.accepting[v] = 1;
        for (auto& [info, target] : ra.edges[v]) {
            (void)info;
            ra.arena.succ[v].push_back(target);
        }
    }
    ra.arena.finalize();
    ra.arena.validate();
    return ra;
}

std::string arena_to_dot(const reduction& red, const reduction_arena& ra, bool verbose) {
    std::ostringstream os;
    os << "digraph buchi {\n  rankdir=TB;\n";
    for (int v = 0; v < int(ra.states.size()); ++v) {
        std::string label;
        if (v == ra.fb) label = "FB";
        else if (v == ra.fn) label = "FN";
        else label = "v" + std::to_string(v) + "\\n" + red.format_state(ra.states[v], verbose);
        std::string esc;
        for (char c : label) {
            if (c == '"') esc += '\\';
            esc += c;
        }
        os << "  s" << v << " [shape=box, label=\"" << esc << "\"";
        if (ra.arena.owner[v] == buchi::player0) os << ", style=filled, fillcolor=gray80";
        if (ra.arena.accepting[v]) os << ", peripheries=2";
        os << "];\n";
    }
    os << "  init [shape=point];\n  init -> s0;\n";
    for (int v = 0; v < int(ra.states.size()); ++v) {
        for (auto& [info, w] : ra.edges[v]) {
            auto& ei = ra.infos[info];
            os << "  s" << v << " -> s" << w << " [label=\"" << edge_kind_name(ei.kind);
            if (ei.trans >= 0) os << " " << red.game().net.trans_name(ei.trans);
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string arena_state_table_json(const reduction& red, const reduction_arena& ra) {
    nlohmann::ordered_json j;
    j["schema"] = "petrisynth-arena-v1";
    j["game"] = red.game().name;
    j["initial"] = 0;
    j["fb"] = ra.fb;
    j["fn"] = ra.fn;
    auto arr = nlohmann::ordered_json::array();
    for (int v = 0; v < int(ra.states.size()); ++v) {
        nlohmann::ordered_json js;
        js["id"] = v;
        js["owner"] = int(ra.arena.owner[v]);
        js["accepting"] = bool(ra.arena.accepting[v]);
        if (v == ra.fb) js["label"] = "FB";
        else if (v == ra.fn) js["label"] = "FN";
        else js["label"] = red.format_state(ra.states[v], true);
        js["flags"] = flags_to_string(ra.flags[v]);
        if (!ra.witnesses[v].empty()) js["witness"] = ra.witnesses[v];
        auto edges = nlohmann::ordered_json::array();
        for (auto& [info, w] : ra.edges[v]) {
            nlohmann::ordered_json je;
            je["kind"] = edge_kind_name(ra.infos[info].kind);
            if (ra.infos[info].trans >= 0) je["transition"] = red.game().net.trans_name(ra.infos[info].trans);
            je["target"] = w;
            edges.push_back(je);
        }
        js["edges"] = edges;
        arr.push_back(js);
    }
    j["states"] = arr;
    return j.dump(2) + "\n";
}

} // namespace petrisynth
