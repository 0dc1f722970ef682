#include "petrisynth/extract.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <sstream>

namespace petrisynth {

namespace {

// Union-find over strategy places: folding aliases a freshly built place to
// the first occurrence it loops back to.
struct place_store {
    struct rec {
        int32_t label;
        std::string name;
        bool initial;
        int parent; // union-find; self when representative
        int creator; // transition index that produced it, -1 initial
    };
    std::vector<rec> recs;
    std::map<int32_t, int> serial; // per game place: next copy number

    int fresh(const petri_game& game, int32_t label, bool initial, int creator) {
        int k = serial[label]++;
        std::string name = game.net.place_name(label) + "#" + std::to_string(k);
        recs.push_back({label, name, initial, int(recs.size()), creator});
        return int(recs.size()) - 1;
    }
    int resolve(int p) {
        while (recs[p].parent != p) {
            recs[p].parent = recs[recs[p].parent].parent;
            p = recs[p].parent;
        }
        return p;
    }
    void alias(int from, int to) {
        from = resolve(from);
        to = resolve(to);
        if (from == to) return;
        recs[from].parent = to;
    }
};

struct trans_rec {
    int32_t label;
    std::string name;
    std::vector<int> pre;  // unresolved place handles
    std::vector<int> post;
};

// One BFS node of the strategy-tree traversal.
struct node {
    int arena_state;
    std::map<int16_t, int> cut;       // player id -> place handle
    std::map<int16_t, int> nes_start; // id -> place handle at the NES start (active NES only)
    // arena states seen on the path from the root, with the cut at first visit
    std::shared_ptr<const node> parent;
};

const node* find_ancestor(const node* n, int arena_state) {
    for (const node* a = n; a; a = a->parent.get())
        if (a->arena_state == arena_state) return a;
    return nullptr;
}

} // namespace

finite_strategy extract(const reduction& red, const reduction_arena& ra, const buchi::solution& sol) {
    const petri_game& game = red.game();
    if (!sol.win0.at(0)) throw not_winning("Player 0 does not win from the initial state");

    place_store store;
    std::vector<trans_rec> trans;
    size_t trans_serial = 0;

    auto check_cut = [&](const node& nd) {
        marking img;
        for (auto& [id, h] : nd.cut) {
            (void)id;
            img.add(store.recs[store.resolve(h)].label);
        }
        if (ra.is_sentinel(nd.arena_state)) return;
        marking want = reduction::underlying(ra.states[nd.arena_state].dm);
        if (img != want)
            throw invariant_broken("cut/decision-marking divergence at arena state " +
                                   std::to_string(nd.arena_state) + ": cut " + game.net.format_marking(img) +
                                   " vs " + game.net.format_marking(want));
    };

    // root
    auto root = std::make_shared<node>();
    root->arena_state = 0;
    {
        const auto& dm = ra.states[0].dm;
        for (auto& d : dm) root->cut[d.id] = store.fresh(game, d.place, true, -1);
    }
    check_cut(*root);

    std::deque<std::shared_ptr<node>> queue{root};
    size_t expanded = 0;

    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        if (++expanded > 2000000)
            throw invariant_broken("strategy extraction exceeded its expansion cap");

        int v = cur->arena_state;
        std::vector<std::pair<int, int>> chosen; // (info idx, target)
        if (ra.arena.owner[v] == buchi::player0) {
            int want = sol.strategy0.at(v);
            if (want < 0) throw invariant_broken("missing strategy successor inside win0");
            for (auto& e : ra.edges[v])
                if (e.second == want) {
                    chosen.push_back(e);
                    break;
                }
            if (chosen.empty()) throw invariant_broken("strategy successor without matching edge");
        } else {
            chosen = ra.edges[v];
        }

        for (auto& [info_idx, target] : chosen) {
            const edge_info& ei = ra.infos[info_idx];
            switch (ei.kind) {
            case edge_kind::stop_b:
                continue; // terminated branch
            case edge_kind::stop_n:
            case edge_kind::nes_bad:
                throw invariant_broken("losing edge reachable inside the winning region");
            case edge_kind::sentinel_loop:
                continue;
            case edge_kind::top: {
                auto child = std::make_shared<node>(*cur);
                child->parent = cur;
                child->arena_state = target;
                for (auto id : ei.flipped) child->nes_start[id] = child->cut.at(id);
                check_cut(*child);
                queue.push_back(child);
                continue;
            }
            default: break;
            }

            // transition-firing edges (sys / mcut / nes_fire / nes_finish)
            auto child = std::make_shared<node>(*cur);
            child->parent = cur;
            child->arena_state = target;

            trans_rec tr;
            tr.label = ei.trans;
            tr.name = game.net.trans_name(ei.trans) + "#" + std::to_string(trans_serial++);
            for (auto& [id, place] : ei.consumed) {
                (void)place;
                tr.pre.push_back(child->cut.at(id));
                child->cut.erase(id);
            }
            int tr_index = int(trans.size());

            const node* fold_target = nullptr; // ancestor whose cut we fold into
            std::map<int16_t, int> target_places;

            if (ei.kind == edge_kind::nes_finish) {
                // fold into the cut recorded at the NES start; match the
                // produced and the remaining NES players to start places with
                // equal labels (ids may have permuted through the loop)
                std::map<int16_t, int> starts = cur->nes_start;
                auto take_matching = [&](int16_t prefer, int32_t label) -> int {
                    if (auto it = starts.find(prefer); it != starts.end()) {
                        int h = store.resolve(it->second);
                        if (store.recs[h].label == label) {
                            starts.erase(it);
                            return h;
                        }
                    }
                    for (auto it = starts.begin(); it != starts.end(); ++it) {
                        int h = store.resolve(it->second);
                        if (store.recs[h].label == label) {
                            starts.erase(it);
                            return h;
                        }
                    }
                    throw invariant_broken("NES fold: no start place matches the repeated marking");
                };
                for (auto& [id, place] : ei.produced) target_places[id] = take_matching(id, place);
                // the remaining NES players (ended in the successor) alias
                // their current place back to a matching start place
                for (auto& d : ra.states[target].dm) {
                    if (d.nes != nes_status::ended) continue;
                    int16_t id = d.id;
                    if (target_places.count(id)) continue;
                    auto cit = child->cut.find(id);
                    if (cit == child->cut.end())
                        throw invariant_broken("NES fold: ended player without a cut place");
                    int fromh = store.resolve(cit->second);
                    int toh = take_matching(id, store.recs[fromh].label);
                    if (fromh != toh) store.alias(fromh, toh);
                    child->cut[id] = toh;
                }
                child->nes_start.clear();
            } else if (const node* anc = (ei.kind == edge_kind::mcut || ei.kind == edge_kind::sys)
                                             ? find_ancestor(cur.get(), target)
                                             : nullptr) {
                // environment loop: the play re-reaches an arena state already
                // on this branch; fold into its first-occurrence cut
                fold_target = anc;
                for (auto& [id, place] : ei.produced) {
                    (void)place;
                    target_places[id] = store.resolve(anc->cut.at(id));
                }
                for (auto& [id, h] : anc->cut) {
                    if (target_places.count(id)) continue;
                    auto cit = child->cut.find(id);
                    if (cit == child->cut.end())
                        throw invariant_broken("environment fold: player sets differ");
                    int fromh = store.resolve(cit->second);
                    int toh = store.resolve(h);
                    if (fromh != toh) {
                        if (store.recs[fromh].creator < 0)
                            throw invariant_broken("environment fold would alias an initial place");
                        store.alias(fromh, toh);
                    }
                    child->cut[id] = toh;
                }
            }

            for (auto& [id, place] : ei.produced) {
                int h;
                if (auto it = target_places.find(id); it != target_places.end()) {
                    h = it->second; // loop-back arc
                } else {
                    h = store.fresh(game, place, false, tr_index);
                }
                tr.post.push_back(h);
                child->cut[id] = h;
            }
            trans.push_back(std::move(tr));

            if (ei.kind == edge_kind::sys)
                for (auto id : ei.flipped) child->nes_start[id] = child->cut.at(id);
            if (ei.kind == edge_kind::nes_finish) {
                // continue from the situation before the NES case
                check_cut(*child);
                queue.push_back(child);
                continue;
            }
            if (fold_target) continue; // future already built at the first visit
            check_cut(*child);
            queue.push_back(child);
        }
    }

    // materialize, dropping aliased handles
    finite_strategy fs;
    fs.game_name = game.name;
    std::map<int, int> place_index;
    auto emit_place = [&](int h) {
        h = store.resolve(h);
        auto it = place_index.find(h);
        if (it != place_index.end()) return it->second;
        finite_strategy::place p;
        p.name = store.recs[h].name;
        p.label = store.recs[h].label;
        p.initial = store.recs[h].initial;
        place_index[h] = int(fs.places.size());
        fs.places.push_back(p);
        return int(fs.places.size()) - 1;
    };
    for (size_t ti = 0; ti < trans.size(); ++ti) {
        finite_strategy::transition t;
        t.label = trans[ti].label;
        t.name = trans[ti].name;
        for (int h : trans[ti].pre) t.pre.push_back(emit_place(h));
        for (int h : trans[ti].post) {
            int rh = store.resolve(h);
            t.post.push_back(emit_place(h));
            // a post arc is a loop-back when its resolved target was not
            // created by this very transition
            t.post_loopback.push_back(store.recs[rh].creator != int(ti));
        }
        fs.transitions.push_back(std::move(t));
    }
    // initial places always exist even when never consumed
    for (int h = 0; h < int(store.recs.size()); ++h)
        if (store.recs[h].initial && store.resolve(h) == h) emit_place(h);
    return fs;
}

std::string diagnosis::to_string(const reduction& red) const {
    (void)red;
    std::ostringstream os;
    if (!losing) return "winning (no diagnosis)\n";
    os << "losing: " << flags_to_string(flags);
    if (!witness.empty()) os << " (" << witness << ")";
    os << "\n  via:";
    for (auto& t : path) os << " " << t;
    os << "\n";
    return os.str();
}

diagnosis explain(const reduction& red, const reduction_arena& ra, const buchi::solution& sol, int state) {
    diagnosis d;
    if (sol.win0.at(state)) return d;
    d.losing = true;
    // BFS within win1 following all Player-0 edges and Player 1's winning
    // choices (successors staying in win1); among the flagged states found,
    // report the most telling one (a bad marking beats a nondeterminism
    // witness beats a plain deadlock)
    std::deque<int> frontier{state};
    std::map<int, std::pair<int, int>> parent; // state -> (prev state, info idx)
    parent[state] = {-1, -1};
    int best = -1, best_rank = -1;
    auto rank_of = [&](uint32_t fl) {
        if (fl & flag_bad) return 6;
        if (fl & flag_ndet) return 5;
        if (fl & flag_ur) return 4;
        if (fl & flag_sync_t2) return 3;
        if (fl & (flag_dl_t2 | flag_van_t2)) return 2;
        if ((fl & flag_dl) && !(fl & flag_term)) return 1;
        return -1;
    };
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        if (!ra.is_sentinel(v)) {
            int r = rank_of(ra.flags[v]);
            if (r > best_rank) {
                best_rank = r;
                best = v;
            }
        }
        for (auto& [info_idx, w] : ra.edges[v]) {
            if (sol.win0[w]) continue; // Player 1 keeps the play in win1
            if (parent.count(w)) continue;
            parent[w] = {v, info_idx};
            frontier.push_back(w);
        }
    }
    if (best >= 0) {
        d.flags = ra.flags[best];
        d.witness = ra.witnesses[best];
        std::vector<std::string> rev;
        for (int w = best; parent[w].first >= 0; w = parent[w].first) {
            auto& ei = ra.infos[parent[w].second];
            if (ei.trans >= 0) rev.push_back(red.game().net.trans_name(ei.trans));
        }
        d.path.assign(rev.rbegin(), rev.rend());
    } else {
        d.witness = "no flagged witness found (losing by infinite avoidance)";
    }
    return d;
}

} // namespace petrisynth
