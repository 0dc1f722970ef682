#include "petrisynth/pcp.hpp"

#include <algorithm>
#include <sstream>

namespace petrisynth {

void pcp_instance::validate() const {
    if (r_words.empty() || r_words.size() != v_words.size())
        throw net_error("PCP instance needs equally many (>=1) r and v words");
    auto known = [&](char c) {
        for (auto& l : alphabet)
            if (l.size() == 1 && l[0] == c) return true;
        return false;
    };
    for (auto& l : alphabet)
        if (l.size() != 1) throw net_error("PCP alphabet letters must be single characters");
    for (auto* list : {&r_words, &v_words})
        for (auto& w : *list) {
            if (w.empty()) throw net_error("PCP words must be non-empty");
            for (char c : w)
                if (!known(c)) throw net_error("PCP word uses letter outside the alphabet: " + w);
        }
}

pcp_instance parse_pcp(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line[line.find_first_not_of(" \t")] == '#') continue;
        lines.push_back(line);
    }
    if (lines.size() != 3) throw parse_error("PCP file needs three lines: alphabet, r words, v words");
    pcp_instance inst;
    auto split = [](const std::string& l) {
        std::vector<std::string> out;
        std::istringstream ls(l);
        std::string w;
        while (ls >> w) out.push_back(w);
        return out;
    };
    inst.alphabet = split(lines[0]);
    inst.r_words = split(lines[1]);
    inst.v_words = split(lines[2]);
    inst.validate();
    return inst;
}

std::string print_pcp(const pcp_instance& inst) {
    std::ostringstream os;
    for (size_t i = 0; i < inst.alphabet.size(); ++i) os << (i ? " " : "") << inst.alphabet[i];
    os << "\n";
    for (size_t i = 0; i < inst.r_words.size(); ++i) os << (i ? " " : "") << inst.r_words[i];
    os << "\n";
    for (size_t i = 0; i < inst.v_words.size(); ++i) os << (i ? " " : "") << inst.v_words[i];
    os << "\n";
    return os.str();
}

namespace pcp_names {
std::string place_start(int k) { return "p" + std::to_string(k) + "_start"; }
std::string place_choice(int k, int x, int a) {
    return "p" + std::to_string(k) + "_choice_x" + std::to_string(x) + "a" + std::to_string(a);
}
std::string place_term(int k, int x, int a) {
    return "p" + std::to_string(k) + "_term_x" + std::to_string(x) + "a" + std::to_string(a);
}
std::string place_index(int k, int i, int x, int a) {
    return "p" + std::to_string(k) + "_i" + std::to_string(i) + "_x" + std::to_string(x) + "a" +
           std::to_string(a);
}
std::string place_letter(int k, int i, int j, int x, int a) {
    return "p" + std::to_string(k) + "_w" + std::to_string(i) + "." + std::to_string(j) + "_x" +
           std::to_string(x) + "a" + std::to_string(a);
}
std::string trans_start_index(int k, int i) {
    return "t" + std::to_string(k) + "_i" + std::to_string(i) + "_start";
}
std::string trans_index(int k, int i, int x, int a) {
    return "t" + std::to_string(k) + "_i" + std::to_string(i) + "_x" + std::to_string(x) + "a" +
           std::to_string(a);
}
std::string trans_end(int k, int x, int a) {
    return "t" + std::to_string(k) + "_end_x" + std::to_string(x) + "a" + std::to_string(a);
}
std::string trans_letter(int k, int i, int j, int x, int a) {
    return "t" + std::to_string(k) + "_w" + std::to_string(i) + "." + std::to_string(j) + "_x" +
           std::to_string(x) + "a" + std::to_string(a);
}
std::string trans_tau(int k, int i, int x, int a) {
    return "t" + std::to_string(k) + "_tau" + std::to_string(i) + "_x" + std::to_string(x) + "a" +
           std::to_string(a);
}
std::string env_choice_place() { return "e_ch"; }
std::string env_result_place(bool index, int who) {
    std::string base = index ? "e_index_" : "e_letter_";
    return base + (who == 1 ? "first" : who == 2 ? "second" : "okay");
}
std::string env_trans(bool index, int who) {
    std::string base = index ? "te_i" : "te_l";
    return base + (who == 1 ? "1" : who == 2 ? "2" : "ok");
}
} // namespace pcp_names

petri_game gen_pcp_game(const pcp_instance& inst) {
    using namespace pcp_names;
    inst.validate();
    int n = int(inst.r_words.size()) - 1;

    net_builder b;
    std::vector<std::string> system_names, env_names;
    auto sys_place = [&](const std::string& nm) {
        b.add_place(nm);
        system_names.push_back(nm);
    };
    auto env_place = [&](const std::string& nm) {
        b.add_place(nm);
        env_names.push_back(nm);
    };

    for (int k = 1; k <= 2; ++k) {
        sys_place(place_start(k));
        for (int x = 0; x < 3; ++x)
            for (int a = 0; a < 3; ++a) {
                sys_place(place_choice(k, x, a));
                sys_place(place_term(k, x, a));
                for (int i = 0; i <= n; ++i) {
                    sys_place(place_index(k, i, x, a));
                    for (int j = 0; j < int(inst.word(k, i).size()); ++j)
                        sys_place(place_letter(k, i, j, x, a));
                }
            }
    }
    env_place(env_choice_place());
    for (bool index : {true, false})
        for (int who : {0, 1, 2}) env_place(env_result_place(index, who));

    auto arc = [&](const std::string& t, const std::string& from, const std::string& to) {
        b.add_transition(t, {{from, 1}}, {{to, 1}});
    };

    for (int k = 1; k <= 2; ++k) {
        // outgoing transitions of the initial place: output the first index
        for (int i = 0; i <= n; ++i) arc(trans_start_index(k, i), place_start(k), place_index(k, i, 1, 0));
        for (int x = 0; x < 3; ++x)
            for (int a = 0; a < 3; ++a) {
                // choice place: next index (index counter +1) or termination
                for (int i = 0; i <= n; ++i)
                    arc(trans_index(k, i, x, a), place_choice(k, x, a), place_index(k, i, (x + 1) % 3, a));
                arc(trans_end(k, x, a), place_choice(k, x, a), place_term(k, x, a));
                for (int i = 0; i <= n; ++i) {
                    const std::string& w = inst.word(k, i);
                    // letter-by-letter output (letter counter +1 each step)
                    arc(trans_letter(k, i, 0, x, a), place_index(k, i, x, a),
                        place_letter(k, i, 0, x, (a + 1) % 3));
                    for (int j = 1; j < int(w.size()); ++j)
                        arc(trans_letter(k, i, j, x, a), place_letter(k, i, j - 1, x, a),
                            place_letter(k, i, j, x, (a + 1) % 3));
                    // tau back to the choice place, counters unchanged
                    arc(trans_tau(k, i, x, a), place_letter(k, i, int(w.size()) - 1, x, a),
                        place_choice(k, x, a));
                }
            }
        b.set_initial(place_start(k), 1);
    }
    for (bool index : {true, false})
        for (int who : {0, 1, 2}) arc(env_trans(index, who), env_choice_place(), env_result_place(index, who));
    b.set_initial(env_choice_place(), 1);

    petri_game g;
    g.name = "pcp";
    g.net = b.build();
    g.is_system.assign(g.net.num_places(), false);
    for (auto& nm : system_names) g.is_system[g.net.place_id(nm)] = true;
    g.winning.kind = winning_kind::good_and_bad;

    auto pid = [&](const std::string& nm) { return g.net.place_id(nm); };
    auto env_sum = [&](std::vector<std::string> names) {
        marking_pattern::sum_constraint sc;
        for (auto& nm : names) sc.places.push_back(pid(nm));
        std::sort(sc.places.begin(), sc.places.end());
        sc.lo = sc.hi = 1;
        return sc;
    };
    auto env_pair = [&](bool index_fixed, bool index, int who_fixed, int who) {
        // one component fixed, the other a wildcard (e_ch excluded)
        std::vector<std::string> names;
        for (bool ix : {true, false})
            for (int w : {0, 1, 2}) {
                if (index_fixed && ix != index) continue;
                if (who_fixed && w != who) continue;
                names.push_back(pcp_names::env_result_place(ix, w));
            }
        return env_sum(names);
    };

    // player-place families for wildcards
    auto player_places = [&](int k, bool include_term, int fix_x, int fix_a) {
        // fix_x/fix_a: -1 = free
        std::vector<int32_t> out;
        if ((fix_x <= 0) && (fix_a <= 0)) out.push_back(pid(place_start(k)));
        for (int x = 0; x < 3; ++x) {
            if (fix_x >= 0 && x != fix_x) continue;
            for (int a = 0; a < 3; ++a) {
                if (fix_a >= 0 && a != fix_a) continue;
                out.push_back(pid(place_choice(k, x, a)));
                if (include_term) out.push_back(pid(place_term(k, x, a)));
                for (int i = 0; i <= n; ++i) {
                    out.push_back(pid(place_index(k, i, x, a)));
                    for (int j = 0; j < int(inst.word(k, i).size()); ++j)
                        out.push_back(pid(place_letter(k, i, j, x, a)));
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto player_sum = [&](std::vector<int32_t> places) {
        marking_pattern::sum_constraint sc;
        sc.places = std::move(places);
        sc.lo = sc.hi = 1;
        return sc;
    };

    const std::vector<std::pair<int, int>> linear_pairs = {{0, 1}, {2, 0}, {1, 2}};

    auto add_pattern = [&](bool good, marking_pattern pat) {
        pat.others_zero = true;
        std::sort(pat.exact.begin(), pat.exact.end());
        std::sort(pat.ranges.begin(), pat.ranges.end());
        std::sort(pat.sums.begin(), pat.sums.end());
        (good ? g.winning.good : g.winning.bad).push_back(std::move(pat));
    };

    // good: both players terminated with equal counters under an okay check
    for (int x = 0; x < 3; ++x)
        for (int a = 0; a < 3; ++a) {
            marking_pattern pat;
            pat.exact.push_back({pid(place_term(1, x, a)), 1});
            pat.exact.push_back({pid(place_term(2, x, a)), 1});
            pat.sums.push_back(env_pair(false, false, true, 0));
            add_pattern(true, pat);
        }
    // good: firing sequences that break the turn-taking order under the
    // respective equality check
    for (auto& [y, z] : linear_pairs) {
        for (int i = 0; i <= n; ++i)
            for (int bl = 0; bl < 3; ++bl) {
                {
                    marking_pattern pat; // player 1 just output an index
                    pat.exact.push_back({pid(place_index(1, i, y, bl)), 1});
                    pat.sums.push_back(player_sum(player_places(2, false, z, -1)));
                    pat.sums.push_back(env_pair(true, true, false, 0));
                    add_pattern(true, pat);
                }
                {
                    marking_pattern pat; // player 2 just output an index
                    pat.exact.push_back({pid(place_index(2, i, z, bl)), 1});
                    pat.sums.push_back(player_sum(player_places(1, false, y, -1)));
                    pat.sums.push_back(env_pair(true, true, false, 0));
                    add_pattern(true, pat);
                }
            }
    }
    for (auto& [bb, cc] : linear_pairs) {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j < int(inst.r_words[i].size()); ++j)
                for (int y = 0; y < 3; ++y) {
                    marking_pattern pat;
                    pat.exact.push_back({pid(place_letter(1, i, j, y, bb)), 1});
                    pat.sums.push_back(player_sum(player_places(2, false, -1, cc)));
                    pat.sums.push_back(env_pair(true, false, false, 0));
                    add_pattern(true, pat);
                }
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j < int(inst.v_words[i].size()); ++j)
                for (int z = 0; z < 3; ++z) {
                    marking_pattern pat;
                    pat.exact.push_back({pid(place_letter(2, i, j, z, cc)), 1});
                    pat.sums.push_back(player_sum(player_places(1, false, -1, bb)));
                    pat.sums.push_back(env_pair(true, false, false, 0));
                    add_pattern(true, pat);
                }
    }
    // good: the environment suspected a player of not terminating but it
    // did terminate
    for (int y = 0; y < 3; ++y)
        for (int bl = 0; bl < 3; ++bl) {
            {
                marking_pattern pat;
                pat.exact.push_back({pid(place_term(1, y, bl)), 1});
                pat.sums.push_back(player_sum(player_places(2, true, -1, -1)));
                pat.sums.push_back(env_pair(false, false, true, 1));
                add_pattern(true, pat);
            }
            {
                marking_pattern pat;
                pat.exact.push_back({pid(place_term(2, y, bl)), 1});
                pat.sums.push_back(player_sum(player_places(1, true, -1, -1)));
                pat.sums.push_back(env_pair(false, false, true, 2));
                add_pattern(true, pat);
            }
        }
    // good: a player output its first index before the environment made
    // its decision
    for (int i = 0; i <= n; ++i) {
        {
            marking_pattern pat;
            pat.exact.push_back({pid(place_index(1, i, 1, 0)), 1});
            pat.sums.push_back(player_sum(player_places(2, true, -1, -1)));
            pat.exact.push_back({pid(env_choice_place()), 1});
            add_pattern(true, pat);
        }
        {
            marking_pattern pat;
            pat.exact.push_back({pid(place_index(2, i, 1, 0)), 1});
            pat.sums.push_back(player_sum(player_places(1, true, -1, -1)));
            pat.exact.push_back({pid(env_choice_place()), 1});
            add_pattern(true, pat);
        }
    }
    // bad: different indices at equal index-counter positions
    for (int i1 = 0; i1 <= n; ++i1)
        for (int i2 = 0; i2 <= n; ++i2) {
            if (i1 == i2) continue;
            for (int x = 0; x < 3; ++x)
                for (int b1 = 0; b1 < 3; ++b1)
                    for (int c2 = 0; c2 < 3; ++c2) {
                        marking_pattern pat;
                        pat.exact.push_back({pid(place_index(1, i1, x, b1)), 1});
                        pat.exact.push_back({pid(place_index(2, i2, x, c2)), 1});
                        pat.sums.push_back(env_pair(true, true, false, 0));
                        add_pattern(false, pat);
                    }
        }
    // bad: different letters at equal letter-counter positions
    for (int i1 = 0; i1 <= n; ++i1)
        for (int j1 = 0; j1 < int(inst.r_words[i1].size()); ++j1)
            for (int i2 = 0; i2 <= n; ++i2)
                for (int j2 = 0; j2 < int(inst.v_words[i2].size()); ++j2) {
                    if (inst.r_words[i1][j1] == inst.v_words[i2][j2]) continue;
                    for (int a = 0; a < 3; ++a)
                        for (int y = 0; y < 3; ++y)
                            for (int z = 0; z < 3; ++z) {
                                marking_pattern pat;
                                pat.exact.push_back({pid(place_letter(1, i1, j1, y, a)), 1});
                                pat.exact.push_back({pid(place_letter(2, i2, j2, z, a)), 1});
                                pat.sums.push_back(env_pair(true, false, false, 0));
                                add_pattern(false, pat);
                            }
                }
    // bad: one player terminated, the other advances more than one legal
    // step under the matching check
    // The env wildcard in the termination bad families excludes the choice
    // already covered by the matching good family (a terminated suspect is
    // good), keeping good and bad markings disjoint.
    auto term_env_1 = [&](bool index) { // player 1 terminated
        return env_sum({env_result_place(index, 0), env_result_place(index, 2)});
    };
    auto term_env_2 = [&](bool index) { // player 2 terminated
        return env_sum({env_result_place(index, 0), env_result_place(index, 1)});
    };
    for (auto& [y, z] : linear_pairs)
        for (int i = 0; i <= n; ++i)
            for (int b1 = 0; b1 < 3; ++b1)
                for (int c2 = 0; c2 < 3; ++c2) {
                    {
                        marking_pattern pat;
                        pat.exact.push_back({pid(place_term(1, y, b1)), 1});
                        pat.exact.push_back({pid(place_index(2, i, z, c2)), 1});
                        pat.sums.push_back(term_env_1(true));
                        add_pattern(false, pat);
                    }
                    {
                        marking_pattern pat;
                        pat.exact.push_back({pid(place_index(1, i, y, b1)), 1});
                        pat.exact.push_back({pid(place_term(2, z, c2)), 1});
                        pat.sums.push_back(term_env_2(true));
                        add_pattern(false, pat);
                    }
                }
    for (auto& [bb, cc] : linear_pairs) {
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j < int(inst.v_words[i].size()); ++j)
                for (int y = 0; y < 3; ++y)
                    for (int z = 0; z < 3; ++z) {
                        marking_pattern pat;
                        pat.exact.push_back({pid(place_term(1, y, bb)), 1});
                        pat.exact.push_back({pid(place_letter(2, i, j, z, cc)), 1});
                        pat.sums.push_back(term_env_1(false));
                        add_pattern(false, pat);
                    }
            for (int j = 0; j < int(inst.r_words[i].size()); ++j)
                for (int y = 0; y < 3; ++y)
                    for (int z = 0; z < 3; ++z) {
                        marking_pattern pat;
                        pat.exact.push_back({pid(place_letter(1, i, j, y, bb)), 1});
                        pat.exact.push_back({pid(place_term(2, z, cc)), 1});
                        pat.sums.push_back(term_env_2(false));
                        add_pattern(false, pat);
                    }
        }
    }
    return g;
}

std::vector<std::string> canonical_pcp_play(const pcp_instance& inst, const std::vector<int>& index_sequence,
                                            bool check_index) {
    using namespace pcp_names;
    if (index_sequence.empty()) throw net_error("PCP play needs a non-empty index sequence");
    std::vector<std::string> seq;
    seq.push_back(env_trans(check_index, 0));
    int x1 = 0, a1 = 0, x2 = 0, a2 = 0;
    bool first = true;
    for (int i : index_sequence) {
        if (i < 0 || i >= int(inst.r_words.size())) throw net_error("index out of range in PCP play");
        if (first) {
            seq.push_back(trans_start_index(1, i));
            seq.push_back(trans_start_index(2, i));
            x1 = x2 = 1;
        } else {
            seq.push_back(trans_index(1, i, x1, a1));
            x1 = (x1 + 1) % 3;
            seq.push_back(trans_index(2, i, x2, a2));
            x2 = (x2 + 1) % 3;
        }
        first = false;
        const std::string& r = inst.r_words[i];
        const std::string& v = inst.v_words[i];
        for (int j = 0; j < int(std::max(r.size(), v.size())); ++j) {
            if (j < int(r.size())) {
                seq.push_back(trans_letter(1, i, j, x1, a1));
                a1 = (a1 + 1) % 3;
            }
            if (j < int(v.size())) {
                seq.push_back(trans_letter(2, i, j, x2, a2));
                a2 = (a2 + 1) % 3;
            }
        }
        seq.push_back(trans_tau(1, i, x1, a1));
        seq.push_back(trans_tau(2, i, x2, a2));
    }
    seq.push_back(trans_end(1, x1, a1));
    seq.push_back(trans_end(2, x2, a2));
    return seq;
}

pcp_verdict check_pcp_play(const petri_game& game, const pcp_instance& inst,
                           const std::vector<int>& index_sequence) {
    auto one = [&](bool check_index) {
        auto trace = simulate_play(game, canonical_pcp_play(inst, index_sequence, check_index));
        for (auto& step : trace) {
            if (step.cls == marking_class::good) return pcp_verdict::good_before_bad;
            if (step.cls == marking_class::bad) return pcp_verdict::bad_first;
        }
        return pcp_verdict::neither_reached;
    };
    auto a = one(true);
    auto b = one(false);
    if (a == pcp_verdict::bad_first || b == pcp_verdict::bad_first) return pcp_verdict::bad_first;
    if (a == pcp_verdict::good_before_bad && b == pcp_verdict::good_before_bad)
        return pcp_verdict::good_before_bad;
    return pcp_verdict::neither_reached;
}

petri_game good_bad_to_good(const petri_game& game, const run_config& cfg) {
    if (game.winning.kind != winning_kind::good_and_bad)
        throw wrong_condition_kind("good_bad_to_good needs a good-and-bad condition");
    const petri_net& net = game.net;

    // explicit bad markings (patterns expanded over reachable markings)
    std::vector<marking> bad_list;
    for (auto& m : net.reachable_markings(cfg.bound_k, cfg.marking_cap))
        if (game.is_bad(m)) bad_list.push_back(m);
    std::sort(bad_list.begin(), bad_list.end());

    net_builder b;
    std::vector<std::string> system_names;
    auto pi = [&](const std::string& p) { return "pi_" + p; };
    auto pi0 = [&](const std::string& p) { return "pi0_" + p; };

    for (int32_t p = 0; p < net.num_places(); ++p) {
        b.add_place(net.place_name(p));
        if (game.system_place(p)) system_names.push_back(net.place_name(p));
        b.add_place(pi(net.place_name(p)));
    }
    b.add_place("pi_sink");
    for (auto& [p, c] : net.initial().entries()) {
        (void)c;
        b.add_place(pi0(net.place_name(p)));
        if (game.system_place(p)) system_names.push_back(pi0(net.place_name(p)));
    }

    for (int32_t t = 0; t < net.num_transitions(); ++t) {
        std::vector<std::pair<std::string, int>> pre, post, pre_tau, post_tau;
        for (auto& [p, c] : net.pre(t).entries()) pre.push_back({net.place_name(p), c});
        for (auto& [p, c] : net.post(t).entries()) {
            post.push_back({pi(net.place_name(p)), c});
            pre_tau.push_back({pi(net.place_name(p)), c});
            post_tau.push_back({net.place_name(p), c});
        }
        b.add_transition(net.trans_name(t), pre, post);
        // return transition for the shadow places of t's postcondition; a
        // transition with empty postcondition keeps a vacuous sink self-loop
        // so there is exactly one return transition per original one
        if (!post_tau.empty()) b.add_transition("tau_" + net.trans_name(t), pre_tau, post_tau);
        else b.add_transition("tau_" + net.trans_name(t), {{"pi_sink", 1}}, {{"pi_sink", 1}});
    }
    for (size_t k = 0; k < bad_list.size(); ++k) {
        std::vector<std::pair<std::string, int>> pre;
        for (auto& [p, c] : bad_list[k].entries()) pre.push_back({pi(net.place_name(p)), c});
        b.add_transition("tau_M" + std::to_string(k), pre, {{"pi_sink", 1}});
    }
    {
        std::vector<std::pair<std::string, int>> pre, post;
        for (auto& [p, c] : net.initial().entries()) {
            pre.push_back({pi0(net.place_name(p)), c});
            post.push_back({net.place_name(p), c});
            b.set_initial(pi0(net.place_name(p)), c);
        }
        b.add_transition("tau_init", pre, post);
    }

    petri_game out;
    out.name = game.name + "_good_only";
    out.net = b.build();
    out.is_system.assign(out.net.num_places(), false);
    for (auto& nm : system_names) out.is_system[out.net.place_id(nm)] = true;
    out.winning.kind = winning_kind::good_markings;
    // good markings carry over; place ids are re-resolved by name
    for (auto& pat : game.winning.good) {
        marking_pattern np = pat;
        for (auto& [p, c] : np.exact) p = out.net.place_id(net.place_name(p));
        for (auto& [p, lo, hi] : np.ranges) p = out.net.place_id(net.place_name(p));
        for (auto& sc : np.sums) {
            for (auto& p : sc.places) p = out.net.place_id(net.place_name(p));
            std::sort(sc.places.begin(), sc.places.end());
        }
        std::sort(np.exact.begin(), np.exact.end());
        std::sort(np.ranges.begin(), np.ranges.end());
        out.winning.good.push_back(std::move(np));
    }
    return out;
}

census_report census(const petri_game& game) {
    census_report r;
    const petri_net& net = game.net;
    r.places = net.num_places();
    r.transitions = net.num_transitions();
    r.initial_tokens = net.initial().total();
    for (int32_t p = 0; p < net.num_places(); ++p) {
        if (game.system_place(p)) ++r.system_places;
        else ++r.env_places;
        auto name = net.place_name(p);
        r.places_by_prefix[name.substr(0, name.find('_'))]++;
    }
    for (int32_t t = 0; t < net.num_transitions(); ++t) {
        r.arcs += size_t(net.pre(t).total() + net.post(t).total());
        auto name = net.trans_name(t);
        r.transitions_by_prefix[name.substr(0, name.find('_'))]++;
    }
    return r;
}

std::string census_report::to_string() const {
    std::ostringstream os;
    os << "places " << places << " (system " << system_places << ", env " << env_places << ")\n";
    os << "transitions " << transitions << "\n";
    os << "arcs " << arcs << "\n";
    os << "initial tokens " << initial_tokens << "\n";
    os << "places by prefix:";
    for (auto& [p, c] : places_by_prefix) os << " " << p << "=" << c;
    os << "\ntransitions by prefix:";
    for (auto& [p, c] : transitions_by_prefix) os << " " << p << "=" << c;
    os << "\n";
    return os.str();
}

} // namespace petrisynth
