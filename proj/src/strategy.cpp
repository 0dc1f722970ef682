#include "petrisynth/strategy.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace petrisynth {

std::string report::to_string() const {
    std::ostringstream os;
    if (violations.empty()) return "ok\n";
    for (auto& v : violations) os << v.condition << ": " << v.witness << "\n";
    return os.str();
}

std::vector<int> finite_strategy::initial_cut() const {
    std::vector<int> cut;
    for (int i = 0; i < int(places.size()); ++i)
        if (places[i].initial) cut.push_back(i);
    return cut;
}

marking cut_marking(const finite_strategy& fs, const std::vector<int>& cut) {
    marking m;
    for (int p : cut) m.add(fs.places[p].label);
    return m;
}

namespace {

struct cut_hash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) h = (h ^ size_t(x)) * 1099511628211ull;
        return h;
    }
};

bool fs_enabled(const finite_strategy::transition& t, const std::vector<int>& cut) {
    for (int p : t.pre)
        if (!std::binary_search(cut.begin(), cut.end(), p)) return false;
    return true;
}

// Fires t on a sorted cut; returns empty optional on a token collision
// (which would mean the folded graph is not safe).
std::optional<std::vector<int>> fs_fire(const finite_strategy::transition& t, const std::vector<int>& cut) {
    std::vector<int> next;
    next.reserve(cut.size());
    for (int p : cut)
        if (std::find(t.pre.begin(), t.pre.end(), p) == t.pre.end()) next.push_back(p);
    for (int p : t.post) {
        if (std::binary_search(next.begin(), next.end(), p)) return std::nullopt;
        next.insert(std::lower_bound(next.begin(), next.end(), p), p);
    }
    return next;
}

struct explorer {
    const finite_strategy& fs;
    std::vector<std::vector<int>> cuts;
    std::optional<std::string> collision;

    explicit explorer(const finite_strategy& f, bool depth_first, size_t cap) : fs(f) {
        std::unordered_set<std::vector<int>, cut_hash> seen;
        std::deque<std::vector<int>> frontier;
        auto init = fs.initial_cut();
        std::sort(init.begin(), init.end());
        seen.insert(init);
        frontier.push_back(init);
        while (!frontier.empty()) {
            std::vector<int> cut;
            if (depth_first) {
                cut = std::move(frontier.back());
                frontier.pop_back();
            } else {
                cut = std::move(frontier.front());
                frontier.pop_front();
            }
            cuts.push_back(cut);
            if (cuts.size() > cap) throw cap_exceeded("strategy cut exploration cap exceeded");
            for (auto& t : fs.transitions) {
                if (!fs_enabled(t, cut)) continue;
                auto next = fs_fire(t, cut);
                if (!next) {
                    if (!collision) collision = t.name;
                    continue;
                }
                if (seen.insert(*next).second) frontier.push_back(std::move(*next));
            }
        }
    }
};

} // namespace

std::vector<std::vector<int>> reachable_cuts(const finite_strategy& fs, bool depth_first, size_t cap) {
    return explorer(fs, depth_first, cap).cuts;
}

report validate_strategy_structure(const finite_strategy& fs, const petri_game& game) {
    report rep;
    for (auto& p : fs.places) {
        if (p.label < 0 || p.label >= game.net.num_places())
            rep.add("label well-formed", "place " + p.name + " has no game place label");
    }
    for (auto& t : fs.transitions) {
        if (t.label < 0 || t.label >= game.net.num_transitions()) {
            rep.add("label well-formed", "transition " + t.name + " has no game transition label");
            continue;
        }
        // set-valued pre/post
        std::set<int> pre_set(t.pre.begin(), t.pre.end());
        std::set<int> post_set(t.post.begin(), t.post.end());
        if (pre_set.size() != t.pre.size() || post_set.size() != t.post.size())
            rep.add("set-valued pre/post", "transition " + t.name);
        // homomorphism on pre/post images (multiset equality against the game)
        marking pre_img, post_img;
        for (int p : t.pre) pre_img.add(fs.places[p].label);
        for (int p : t.post) post_img.add(fs.places[p].label);
        if (pre_img != game.net.pre(t.label))
            rep.add("homomorphism preserves precondition", "transition " + t.name);
        if (post_img != game.net.post(t.label))
            rep.add("homomorphism preserves postcondition", "transition " + t.name);
    }
    // each place: initial iff no incoming non-loopback arc; at most one
    // non-loopback producer
    std::vector<int> producers(fs.places.size(), 0);
    for (auto& t : fs.transitions)
        for (size_t i = 0; i < t.post.size(); ++i)
            if (!t.post_loopback[i]) producers[t.post[i]]++;
    for (int i = 0; i < int(fs.places.size()); ++i) {
        if (fs.places[i].initial && producers[i] != 0)
            rep.add("initial places have empty preset", fs.places[i].name);
        if (!fs.places[i].initial && producers[i] != 1)
            rep.add("single predecessor", fs.places[i].name);
    }
    // initial cut maps to the game's initial marking
    marking init_img;
    for (int p : fs.initial_cut()) init_img.add(fs.places[p].label);
    if (init_img != game.net.initial())
        rep.add("homomorphism maps initial cut to initial marking", game.net.format_marking(init_img));
    // safety of the folded graph
    explorer ex(fs, false, 1000000);
    if (ex.collision) rep.add("folded graph is safe", "collision firing " + *ex.collision);
    return rep;
}

report check_justified_refusal(const finite_strategy& fs, const petri_game& game, size_t cap) {
    report rep;
    explorer ex(fs, false, cap);
    // post image per fs place (labels of outgoing transitions)
    std::vector<std::set<int32_t>> post_labels(fs.places.size());
    std::vector<std::vector<int>> post_trans(fs.places.size());
    for (int ti = 0; ti < int(fs.transitions.size()); ++ti)
        for (int p : fs.transitions[ti].pre) {
            post_labels[p].insert(fs.transitions[ti].label);
            post_trans[p].push_back(ti);
        }
    std::set<std::pair<std::vector<int>, int32_t>> reported;
    for (auto& cut : ex.cuts) {
        for (int32_t gt = 0; gt < game.net.num_transitions(); ++gt) {
            // enumerate co-sets C subseteq cut with lambda[C] = pre(gt)
            const auto& pre = game.net.pre(gt);
            std::vector<std::vector<int>> pools; // per pre place: candidate cut places
            std::vector<int> need;
            bool feasible = true;
            for (auto& [gp, c] : pre.entries()) {
                std::vector<int> pool;
                for (int p : cut)
                    if (fs.places[p].label == gp) pool.push_back(p);
                if (int(pool.size()) < c) {
                    feasible = false;
                    break;
                }
                pools.push_back(std::move(pool));
                need.push_back(c);
            }
            if (!feasible || pre.empty()) continue;
            // all combinations choosing need[i] out of pools[i]
            std::vector<std::vector<int>> chosen(pools.size());
            std::function<void(size_t, std::vector<int>&)> walk = [&](size_t i, std::vector<int>& acc) {
                if (i == pools.size()) {
                    std::vector<int> C = acc;
                    std::sort(C.begin(), C.end());
                    // is there a strategy transition with exactly this precondition?
                    for (int ti : post_trans[C[0]]) {
                        auto& t = fs.transitions[ti];
                        if (t.label != gt) continue;
                        std::vector<int> tp = t.pre;
                        std::sort(tp.begin(), tp.end());
                        if (tp == C) return;
                    }
                    // or a system place that never allows gt
                    for (int p : C)
                        if (game.system_place(fs.places[p].label) && !post_labels[p].count(gt)) return;
                    if (reported.insert({C, gt}).second) {
                        std::string wit = "co-set {";
                        for (size_t j = 0; j < C.size(); ++j)
                            wit += (j ? ", " : "") + fs.places[C[j]].name;
                        wit += "} vs transition " + game.net.trans_name(gt);
                        rep.add("justified refusal", wit);
                    }
                    return;
                }
                std::vector<int> idx(need[i]);
                std::function<void(int, int)> comb = [&](int start, int k) {
                    if (k == need[i]) {
                        size_t base = acc.size();
                        for (int j = 0; j < need[i]; ++j) acc.push_back(pools[i][idx[j]]);
                        walk(i + 1, acc);
                        acc.resize(base);
                        return;
                    }
                    for (int s = start; s < int(pools[i].size()); ++s) {
                        idx[k] = s;
                        comb(s + 1, k + 1);
                    }
                };
                comb(0, 0);
            };
            std::vector<int> acc;
            walk(0, acc);
        }
    }
    return rep;
}

report check_deterministic(const finite_strategy& fs, const petri_game& game, size_t cap) {
    report rep;
    explorer ex(fs, false, cap);
    std::vector<std::vector<int>> post_trans(fs.places.size());
    for (int ti = 0; ti < int(fs.transitions.size()); ++ti)
        for (int p : fs.transitions[ti].pre) post_trans[p].push_back(ti);
    for (auto& cut : ex.cuts) {
        for (int p : cut) {
            if (!game.system_place(fs.places[p].label)) continue;
            int enabled = 0;
            std::string names;
            for (int ti : post_trans[p]) {
                if (fs_enabled(fs.transitions[ti], cut)) {
                    ++enabled;
                    names += (names.empty() ? "" : ", ") + fs.transitions[ti].name;
                }
            }
            if (enabled > 1) {
                marking m = cut_marking(fs, cut);
                rep.add("deterministic", "place " + fs.places[p].name + " enables {" + names + "} in " +
                                             game.net.format_marking(m));
            }
        }
    }
    return rep;
}

report check_deadlock_avoiding(const finite_strategy& fs, const petri_game& game, size_t cap) {
    report rep;
    explorer ex(fs, false, cap);
    for (auto& cut : ex.cuts) {
        bool any = false;
        for (auto& t : fs.transitions)
            if (fs_enabled(t, cut)) {
                any = true;
                break;
            }
        if (any) continue;
        marking m = cut_marking(fs, cut);
        if (!game.net.is_final(m))
            rep.add("deadlock-avoiding", "final strategy marking " + game.net.format_marking(m) +
                                             " is not final in the game");
    }
    return rep;
}

win_verdict check_winning_bad_markings(const finite_strategy& fs, const petri_game& game, report& why,
                                       size_t cap) {
    if (game.winning.kind != winning_kind::bad_markings && game.winning.kind != winning_kind::bad_places)
        throw wrong_condition_kind("check_winning_bad_markings needs a bad-markings condition");
    why = check_deadlock_avoiding(fs, game, cap);
    explorer ex(fs, false, cap);
    for (auto& cut : ex.cuts) {
        marking m = cut_marking(fs, cut);
        if (game.is_bad(m)) why.add("no bad marking", game.net.format_marking(m));
    }
    return why.ok() ? win_verdict::winning : win_verdict::not_winning;
}

report run_all_validators(const finite_strategy& fs, const petri_game& game, size_t cap) {
    report rep = validate_strategy_structure(fs, game);
    auto merge = [&](const report& r) {
        for (auto& v : r.violations) rep.violations.push_back(v);
    };
    merge(check_justified_refusal(fs, game, cap));
    merge(check_deterministic(fs, game, cap));
    merge(check_deadlock_avoiding(fs, game, cap));
    return rep;
}

std::vector<trace_step> simulate_play(const petri_game& game, const std::vector<std::string>& transitions) {
    std::vector<trace_step> trace;
    marking m = game.net.initial();
    trace.push_back({"", m, game.classify_marking(m)});
    for (size_t i = 0; i < transitions.size(); ++i) {
        int32_t t = game.net.trans_id(transitions[i]);
        if (t == petri_net::npos)
            throw net_error("unknown transition at step " + std::to_string(i) + ": " + transitions[i]);
        if (!game.net.enabled(m, t))
            throw not_enabled("step " + std::to_string(i) + ": " + transitions[i] + " not enabled in " +
                              game.net.format_marking(m));
        m = game.net.fire(m, t);
        trace.push_back({transitions[i], m, game.classify_marking(m)});
    }
    return trace;
}

std::vector<trace_step> simulate_play(const finite_strategy& fs, const petri_game& game,
                                      const std::vector<std::string>& transitions) {
    std::vector<trace_step> trace;
    std::vector<int> cut = fs.initial_cut();
    std::sort(cut.begin(), cut.end());
    marking m0 = cut_marking(fs, cut);
    trace.push_back({"", m0, game.classify_marking(m0)});
    for (size_t i = 0; i < transitions.size(); ++i) {
        auto it = std::find_if(fs.transitions.begin(), fs.transitions.end(),
                               [&](const finite_strategy::transition& t) { return t.name == transitions[i]; });
        if (it == fs.transitions.end())
            throw net_error("unknown strategy transition at step " + std::to_string(i) + ": " + transitions[i]);
        if (!fs_enabled(*it, cut))
            throw not_enabled("step " + std::to_string(i) + ": " + transitions[i] + " not enabled");
        auto next = fs_fire(*it, cut);
        if (!next) throw net_error("token collision firing " + transitions[i]);
        cut = *next;
        marking m = cut_marking(fs, cut);
        trace.push_back({transitions[i], m, game.classify_marking(m)});
    }
    return trace;
}

branching_process unroll(const finite_strategy& fs, const petri_game& game, size_t max_transitions) {
    // Occurrence-net unfolding of the folded graph. Instances carry causal
    // pasts so concurrency and conflict can be decided exactly.
    struct pinst {
        int fs_place;
        int producer; // transition instance or -1
        std::string name;
    };
    struct tinst {
        int fs_trans;
        std::vector<int> pre; // place instances
        std::vector<int> post;
        std::set<int> past; // transition instances, including itself
        std::string name;
    };
    std::vector<pinst> P;
    std::vector<tinst> T;
    std::vector<std::vector<int>> consumers; // per place instance

    auto place_past = [&](int pi) -> std::set<int> {
        if (P[pi].producer < 0) return {};
        return T[P[pi].producer].past;
    };
    auto in_conflict = [&](const std::set<int>& past1, const std::set<int>& past2) {
        for (size_t q = 0; q < P.size(); ++q) {
            int hits1 = -1, hits2 = -1;
            for (int c : consumers[q]) {
                if (past1.count(c)) hits1 = c;
                if (past2.count(c)) hits2 = c;
            }
            if (hits1 >= 0 && hits2 >= 0 && hits1 != hits2) return true;
        }
        return false;
    };
    auto concurrent = [&](int a, int b) {
        if (a == b) return false;
        auto pa = place_past(a), pb = place_past(b);
        // a < b iff some consumer of a lies in b's past, and vice versa
        for (int c : consumers[a])
            if (pb.count(c)) return false;
        for (int c : consumers[b])
            if (pa.count(c)) return false;
        return !in_conflict(pa, pb);
    };

    std::map<std::string, int> copies;
    auto fresh_place = [&](int fsp, int producer) {
        std::string base = fs.places[fsp].name;
        int k = copies[base]++;
        P.push_back({fsp, producer, base + "~" + std::to_string(k)});
        consumers.push_back({});
        return int(P.size()) - 1;
    };

    for (int i = 0; i < int(fs.places.size()); ++i)
        if (fs.places[i].initial) fresh_place(i, -1);

    bool grew = true;
    while (grew && T.size() < max_transitions) {
        grew = false;
        for (int ft = 0; ft < int(fs.transitions.size()) && T.size() < max_transitions; ++ft) {
            auto& t = fs.transitions[ft];
            // enumerate tuples of pairwise concurrent instances matching pre
            std::vector<std::vector<int>> pools(t.pre.size());
            for (size_t i = 0; i < t.pre.size(); ++i)
                for (int pi = 0; pi < int(P.size()); ++pi)
                    if (P[pi].fs_place == t.pre[i]) pools[i].push_back(pi);
            std::vector<int> pick(t.pre.size());
            std::function<void(size_t)> walk = [&](size_t i) {
                if (T.size() >= max_transitions) return;
                if (i == t.pre.size()) {
                    std::vector<int> pre = pick;
                    std::sort(pre.begin(), pre.end());
                    for (auto& ti : T) {
                        if (ti.fs_trans == ft) {
                            auto existing = ti.pre;
                            std::sort(existing.begin(), existing.end());
                            if (existing == pre) return; // already extended here
                        }
                    }
                    std::set<int> past;
                    for (int pi : pre) {
                        auto pp = place_past(pi);
                        past.insert(pp.begin(), pp.end());
                    }
                    int self = int(T.size());
                    past.insert(self);
                    std::string nm = t.name + "~" + std::to_string(self);
                    T.push_back({ft, pre, {}, past, nm});
                    for (int pi : pre) consumers[pi].push_back(self);
                    for (int fp : t.post) T.back().post.push_back(fresh_place(fp, self));
                    grew = true;
                    return;
                }
                for (int cand : pools[i]) {
                    bool ok = true;
                    for (size_t j = 0; j < i && ok; ++j)
                        if (!concurrent(pick[j], cand)) ok = false;
                    if (!ok) continue;
                    pick[i] = cand;
                    walk(i + 1);
                }
            };
            walk(0);
        }
    }

    branching_process bp;
    net_builder b;
    for (auto& p : P) b.add_place(p.name);
    for (auto& p : P)
        if (p.producer < 0) b.set_initial(p.name, 1);
    for (auto& t : T) {
        std::vector<std::pair<std::string, int>> pre, post;
        for (int pi : t.pre) pre.push_back({P[pi].name, 1});
        for (int pi : t.post) post.push_back({P[pi].name, 1});
        b.add_transition(t.name, pre, post);
    }
    bp.occ = b.build();
    for (auto& p : P) bp.labels[p.name] = game.net.place_name(fs.places[p.fs_place].label);
    for (auto& t : T) bp.labels[t.name] = game.net.trans_name(fs.transitions[t.fs_trans].label);
    bp.is_system.resize(bp.occ.num_places());
    for (int32_t p = 0; p < bp.occ.num_places(); ++p)
        bp.is_system[p] = game.system_place(game.net.place_id(bp.labels.at(bp.occ.place_name(p))));
    return bp;
}

report validate_branching_process(const branching_process& bp, const petri_game& game) {
    report rep;
    const petri_net& occ = bp.occ;
    const petri_net& orig = game.net;

    // labels exist and preserve node types
    std::vector<int32_t> lp(occ.num_places(), -1), lt(occ.num_transitions(), -1);
    for (int32_t p = 0; p < occ.num_places(); ++p) {
        auto it = bp.labels.find(occ.place_name(p));
        if (it == bp.labels.end()) {
            rep.add("labeling total", occ.place_name(p));
            continue;
        }
        lp[p] = orig.place_id(it->second);
        if (lp[p] == petri_net::npos) rep.add("type preservation", occ.place_name(p) + " -> " + it->second);
    }
    for (int32_t t = 0; t < occ.num_transitions(); ++t) {
        auto it = bp.labels.find(occ.trans_name(t));
        if (it == bp.labels.end()) {
            rep.add("labeling total", occ.trans_name(t));
            continue;
        }
        lt[t] = orig.trans_id(it->second);
        if (lt[t] == petri_net::npos) rep.add("type preservation", occ.trans_name(t) + " -> " + it->second);
    }

    // set-valued pre/post
    for (int32_t t = 0; t < occ.num_transitions(); ++t) {
        for (auto& [p, c] : occ.pre(t).entries())
            if (c > 1) rep.add("set-valued precondition", occ.trans_name(t));
        for (auto& [p, c] : occ.post(t).entries())
            if (c > 1) rep.add("set-valued postcondition", occ.trans_name(t));
    }
    // initial places = empty preset; others exactly one
    for (int32_t p = 0; p < occ.num_places(); ++p) {
        size_t in = occ.pre_of_place(p).size();
        bool initial = occ.initial().contains(p);
        if (initial && in != 0) rep.add("initial places have empty preset", occ.place_name(p));
        if (!initial && in != 1) rep.add("single predecessor", occ.place_name(p));
        if (occ.initial().count(p) > 1) rep.add("initial marking is a set", occ.place_name(p));
    }
    // well-founded inverse flow: no cycles
    {
        // nodes: places then transitions
        int n = occ.num_places() + occ.num_transitions();
        std::vector<int> state(n, 0);
        std::function<bool(int)> dfs = [&](int v) -> bool {
            state[v] = 1;
            std::vector<int> succ;
            if (v < occ.num_places()) {
                for (int32_t t : occ.post_of_place(v)) succ.push_back(occ.num_places() + t);
            } else {
                int32_t t = v - occ.num_places();
                for (auto& [p, _] : occ.post(t).entries()) succ.push_back(p);
            }
            for (int w : succ) {
                if (state[w] == 1) return false;
                if (state[w] == 0 && !dfs(w)) return false;
            }
            state[v] = 2;
            return true;
        };
        bool acyclic = true;
        for (int v = 0; v < n && acyclic; ++v)
            if (state[v] == 0) acyclic = dfs(v);
        if (!acyclic) rep.add("well-founded inverse flow", "cycle in occurrence net");
    }
    // no self-conflict: two consumers of one place never both in a node's past
    {
        // compute pasts (transition sets) per transition
        std::vector<std::set<int32_t>> past(occ.num_transitions());
        bool changed = true;
        while (changed) {
            changed = false;
            for (int32_t t = 0; t < occ.num_transitions(); ++t) {
                auto before = past[t].size();
                past[t].insert(t);
                for (auto& [p, _] : occ.pre(t).entries())
                    for (int32_t prod : occ.pre_of_place(p)) {
                        past[t].insert(past[prod].begin(), past[prod].end());
                        past[t].insert(prod);
                    }
                if (past[t].size() != before) changed = true;
            }
        }
        for (int32_t t = 0; t < occ.num_transitions(); ++t) {
            bool conflict = false;
            for (int32_t p = 0; p < occ.num_places() && !conflict; ++p) {
                int seen = -1;
                for (int32_t c : occ.post_of_place(p)) {
                    if (!past[t].count(c)) continue;
                    if (seen >= 0 && seen != c) conflict = true;
                    seen = c;
                }
            }
            if (conflict) rep.add("no self-conflict", occ.trans_name(t));
        }
    }
    // homomorphism structure preservation
    for (int32_t t = 0; t < occ.num_transitions(); ++t) {
        if (lt[t] < 0) continue;
        marking pre_img, post_img;
        bool bad_label = false;
        for (auto& [p, c] : occ.pre(t).entries()) {
            if (lp[p] < 0) bad_label = true;
            else pre_img.add(lp[p], c);
        }
        for (auto& [p, c] : occ.post(t).entries()) {
            if (lp[p] < 0) bad_label = true;
            else post_img.add(lp[p], c);
        }
        if (bad_label) continue;
        if (pre_img != orig.pre(lt[t]) || post_img != orig.post(lt[t]))
            rep.add("homomorphism preserves pre/post", occ.trans_name(t));
    }
    // declared place types must match the types of their labels
    if (!bp.is_system.empty()) {
        for (int32_t p = 0; p < occ.num_places(); ++p) {
            if (lp[p] < 0) continue;
            if (bp.is_system[p] != game.system_place(lp[p]))
                rep.add("type preservation", occ.place_name(p) + " vs " + orig.place_name(lp[p]));
        }
    }
    // lambda[In'] = In
    {
        marking img;
        for (auto& [p, c] : occ.initial().entries())
            if (lp[p] >= 0) img.add(lp[p], c);
        if (img != orig.initial()) rep.add("initial marking preserved", occ.format_marking(occ.initial()));
    }
    // injective on transitions with the same precondition
    for (int32_t t1 = 0; t1 < occ.num_transitions(); ++t1)
        for (int32_t t2 = t1 + 1; t2 < occ.num_transitions(); ++t2)
            if (lt[t1] >= 0 && lt[t1] == lt[t2] && occ.pre(t1) == occ.pre(t2))
                rep.add("injective on equal preconditions", occ.trans_name(t1) + " / " + occ.trans_name(t2));
    return rep;
}

} // namespace petrisynth
