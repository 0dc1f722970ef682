#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <set>

#include "petrisynth/extract.hpp"
#include "petrisynth/io.hpp"
#include "test_util.hpp"

using namespace petrisynth;

namespace {

// the reduction keeps a pointer to its game, so both live behind stable
// heap addresses
struct solved {
    std::unique_ptr<petri_game> game_ptr;
    std::unique_ptr<reduction> red_ptr;
    reduction_arena ra;
    buchi::solution sol;
    petri_game& game() { return *game_ptr; }
    reduction& red() { return *red_ptr; }
};

solved solve_game(const std::string& name, int bound) {
    run_config cfg;
    cfg.bound_k = bound;
    solved s;
    s.game_ptr = std::make_unique<petri_game>(testutil::load(name));
    s.red_ptr = std::make_unique<reduction>(*s.game_ptr, cfg);
    s.ra = build_arena(*s.red_ptr, cfg);
    s.sol = buchi::solve(s.ra.arena);
    REQUIRE(buchi::verify_certificate(s.ra.arena, s.sol));
    return s;
}

// allowed labels of the strategy places reached right after a given
// transition label, grouped per game place label
std::multiset<std::set<std::string>> decisions_after(const finite_strategy& fs, const petri_game& g,
                                                     const std::string& tlabel, const std::string& plabel) {
    std::multiset<std::set<std::string>> out;
    for (auto& t : fs.transitions) {
        if (g.net.trans_name(t.label) != tlabel) continue;
        for (int p : t.post) {
            if (g.net.place_name(fs.places[p].label) != plabel) continue;
            std::set<std::string> allowed;
            for (auto& t2 : fs.transitions)
                for (int q : t2.pre)
                    if (q == p) allowed.insert(g.net.trans_name(t2.label));
            out.insert(allowed);
        }
    }
    return out;
}

} // namespace

TEST_CASE("fig1 extraction matches the prose strategy") {
    auto s = solve_game("fig1.game", 8);
    REQUIRE(s.sol.win0[0]);
    auto fs = extract(s.red(), s.ra, s.sol);
    // all four validators pass; winning
    auto rep = run_all_validators(fs, s.game());
    INFO(rep.to_string());
    CHECK(rep.ok());
    report why;
    CHECK(check_winning_bad_markings(fs, s.game(), why) == win_verdict::winning);
    // sunny: one unit at both plants; cloudy: one high one low; rainy: both high
    using dec = std::multiset<std::set<std::string>>;
    CHECK(decisions_after(fs, s.game(), "sunny", "p") == dec{{"p_l"}, {"p_l"}});
    CHECK(decisions_after(fs, s.game(), "cloudy", "p") == dec{{"p_h"}, {"p_l"}});
    CHECK(decisions_after(fs, s.game(), "rainy", "p") == dec{{"p_h"}, {"p_h"}});
}

TEST_CASE("fig1 extraction is deterministic") {
    auto s1 = solve_game("fig1.game", 8);
    auto s2 = solve_game("fig1.game", 8);
    auto fs1 = extract(s1.red(), s1.ra, s1.sol);
    auto fs2 = extract(s2.red(), s2.ra, s2.sol);
    CHECK(strategy_to_json(fs1, s1.game()) == strategy_to_json(fs2, s2.game()));
}

TEST_CASE("fig3b extraction folds the NES loop with loop-back arcs") {
    auto s = solve_game("fig3b.game", 2);
    REQUIRE(s.sol.win0[0]);
    auto fs = extract(s.red(), s.ra, s.sol);
    auto rep = run_all_validators(fs, s.game());
    INFO(rep.to_string());
    CHECK(rep.ok());
    report why;
    CHECK(check_winning_bad_markings(fs, s.game(), why) == win_verdict::winning);
    // the loop t5/t6/t7 is present and closed by loop-back arcs
    std::set<std::string> loop_labels;
    size_t loopback_arcs = 0;
    for (auto& t : fs.transitions)
        for (size_t i = 0; i < t.post.size(); ++i)
            if (t.post_loopback[i]) {
                ++loopback_arcs;
                loop_labels.insert(s.game().net.trans_name(t.label));
            }
    CHECK(loopback_arcs >= 2);
    // the arcs closing the cycle belong to the loop transitions
    std::set<std::string> loop_set{"t5", "t6", "t7"};
    for (auto& l : loop_labels) CHECK(loop_set.count(l) == 1);
    // covering check: every loop transition occurs in the strategy
    std::set<std::string> labels;
    for (auto& t : fs.transitions) labels.insert(s.game().net.trans_name(t.label));
    CHECK(labels.count("t5"));
    CHECK(labels.count("t6"));
    CHECK(labels.count("t7"));
    // unrolling the folded strategy still yields a valid branching process
    auto bp = unroll(fs, s.game(), 40);
    CHECK(validate_branching_process(bp, s.game()).ok());
}

TEST_CASE("losing games raise not_winning on extraction") {
    auto s = solve_game("fig5a.game", 4);
    REQUIRE(!s.sol.win0[0]);
    CHECK_THROWS_AS((void)extract(s.red(), s.ra, s.sol), not_winning);
}

TEST_CASE("explain on fig5a names an offending bad marking") {
    auto s = solve_game("fig5a.game", 4);
    auto d = explain(s.red(), s.ra, s.sol, 0);
    CHECK(d.losing);
    CHECK((d.flags & flag_bad) != 0);
    marking bad1, bad2;
    for (auto n : {"s1", "s5", "e2", "s9"}) bad1.add(s.game().net.place_id(n));
    for (auto n : {"s2", "s4", "e2", "s10"}) bad2.add(s.game().net.place_id(n));
    bool names = d.witness.find(s.game().net.format_marking(bad1)) != std::string::npos ||
                 d.witness.find(s.game().net.format_marking(bad2)) != std::string::npos;
    CHECK(names);
    CHECK(!d.path.empty());
}

TEST_CASE("explain on fig5b names the nondeterminism at s2") {
    auto s = solve_game("fig5b.game", 2);
    auto d = explain(s.red(), s.ra, s.sol, 0);
    CHECK(d.losing);
    CHECK((d.flags & flag_ndet) != 0);
    CHECK(d.witness.find("s2") != std::string::npos);
}

TEST_CASE("explain on a winning state is empty") {
    auto s = solve_game("fig1.game", 8);
    auto d = explain(s.red(), s.ra, s.sol, 0);
    CHECK(!d.losing);
    CHECK(d.path.empty());
}

TEST_CASE("validate-after-unroll holds for solver output on fig1") {
    auto s = solve_game("fig1.game", 8);
    auto fs = extract(s.red(), s.ra, s.sol);
    auto bp = unroll(fs, s.game(), 200);
    auto rep = validate_branching_process(bp, s.game());
    INFO(rep.to_string());
    CHECK(rep.ok());
}

TEST_CASE("cut correspondence: strategy markings are reachable game markings") {
    for (auto name : {"fig1.game", "fig3b.game"}) {
        auto s = solve_game(name, 8);
        if (!s.sol.win0[0]) continue;
        auto fs = extract(s.red(), s.ra, s.sol);
        for (auto& cut : reachable_cuts(fs, false))
            CHECK(s.red().reachable_marking(cut_marking(fs, cut)));
    }
}

TEST_CASE("a corrupted strategy fails validation") {
    auto s = solve_game("fig1.game", 8);
    auto fs = extract(s.red(), s.ra, s.sol);
    // corruption: add an extra allowed transition from a k-labeled place
    // (k has empty postcondition, so attach a p_l copy to a p place that
    // already has one: nondeterminism)
    int ppl = -1;
    for (int i = 0; i < int(fs.places.size()); ++i)
        if (s.game().net.place_name(fs.places[i].label) == "p") ppl = i;
    REQUIRE(ppl >= 0);
    finite_strategy bad = fs;
    finite_strategy::transition extra;
    extra.name = "p_h#extra";
    extra.label = s.game().net.trans_id("p_h");
    extra.pre = {ppl};
    bad.places.push_back({"k#extra1", s.game().net.place_id("k"), false});
    bad.places.push_back({"k#extra2", s.game().net.place_id("k"), false});
    extra.post = {int(bad.places.size()) - 2, int(bad.places.size()) - 1};
    extra.post_loopback = {false, false};
    bad.transitions.push_back(extra);
    auto rep = run_all_validators(bad, s.game());
    CHECK(!rep.ok());
}

TEST_CASE("environment loops fold into loop-back arcs") {
    // the environment cycles e1 -> e2 -> e1 forever; the lone system player
    // never moves; every mcut revisit must fold, not unroll
    auto text = "places { system: s env: e1 e2 }\ninit { e1:1 s:1 }\n"
                "transition t1 { pre: e1 post: e2 }\n"
                "transition t2 { pre: e2 post: e1 }\n"
                "winning { kind: bad-markings }\n";
    run_config cfg;
    cfg.bound_k = 1;
    auto game = std::make_unique<petri_game>(parse_game(text, "envloop"));
    reduction red(*game, cfg);
    auto ra = build_arena(red, cfg);
    auto sol = buchi::solve(ra.arena);
    REQUIRE(sol.win0[0]); // accepting mcuts are visited forever
    auto fs = extract(red, ra, sol);
    auto rep = run_all_validators(fs, *game);
    INFO(rep.to_string());
    CHECK(rep.ok());
    report why;
    CHECK(check_winning_bad_markings(fs, *game, why) == win_verdict::winning);
    size_t loopbacks = 0;
    for (auto& t : fs.transitions)
        for (size_t i = 0; i < t.post.size(); ++i) loopbacks += t.post_loopback[i];
    CHECK(loopbacks >= 1);
    CHECK(fs.transitions.size() <= 4); // folded, not unrolled
}

TEST_CASE("environment loops carrying a system player also fold") {
    auto text = "places { system: s1 s2 env: e1 e2 }\ninit { e1:1 s1:1 }\n"
                "transition t1 { pre: e1, s1 post: e2, s2 }\n"
                "transition t2 { pre: e2, s2 post: e1, s1 }\n"
                "winning { kind: bad-markings }\n";
    run_config cfg;
    cfg.bound_k = 1;
    auto game = std::make_unique<petri_game>(parse_game(text, "envloop2"));
    reduction red(*game, cfg);
    auto ra = build_arena(red, cfg);
    auto sol = buchi::solve(ra.arena);
    REQUIRE(sol.win0[0]);
    auto fs = extract(red, ra, sol);
    auto rep = run_all_validators(fs, *game);
    INFO(rep.to_string());
    CHECK(rep.ok());
    report why;
    CHECK(check_winning_bad_markings(fs, *game, why) == win_verdict::winning);
    // the unrolled prefix of the folded graph is still a branching process
    auto bp = unroll(fs, *game, 30);
    CHECK(validate_branching_process(bp, *game).ok());
}

TEST_CASE("bad-places games solve to the same verdict as their translation") {
    // bad place s7 is reachable in fig3b when t1 is allowed
    auto base = testutil::load("fig3b.game");
    run_config cfg;
    cfg.bound_k = 2;
    auto as_places = std::make_unique<petri_game>(base);
    as_places->winning.kind = winning_kind::bad_places;
    as_places->winning.bad.clear();
    as_places->winning.bad_places_ = {base.net.place_id("s7")};
    auto translated = std::make_unique<petri_game>(badplaces_to_badmarkings(*as_places));

    reduction red_t(*translated, cfg);
    auto ra_t = build_arena(red_t, cfg);
    auto sol_t = buchi::solve(ra_t.arena);

    // direct solve of the bad-places game goes through the same translation
    // inside the reduction (bad-places is subsumed by one-pattern markings),
    // so compare against an equivalent hand-written pattern game
    auto manual = std::make_unique<petri_game>(base);
    manual->winning.bad.clear();
    marking_pattern pat;
    pat.ranges.push_back({base.net.place_id("s7"), 1, unbounded});
    manual->winning.bad.push_back(pat);
    reduction red_m(*manual, cfg);
    auto ra_m = build_arena(red_m, cfg);
    auto sol_m = buchi::solve(ra_m.arena);

    CHECK(sol_t.win0[0] == sol_m.win0[0]);
    CHECK(ra_t.states.size() == ra_m.states.size());
}

TEST_CASE("closed loop on random decidable games: extracted strategies validate") {
    // random games: an environment chain (possibly cyclic) whose transitions
    // may carry one system player, plus random system-only transitions; the
    // validators are the oracle for whatever the solver and extractor produce
    testutil::rng r(20260811);
    int solved = 0, winning = 0, skipped = 0;
    for (int iter = 0; iter < 120; ++iter) {
        net_builder b;
        int n_env = 2 + r.below(2);
        int n_sys = 2 + r.below(3);
        std::vector<std::string> envs, syss;
        for (int i = 0; i < n_env; ++i) envs.push_back("e" + std::to_string(i));
        for (int i = 0; i < n_sys; ++i) syss.push_back("s" + std::to_string(i));
        for (auto& p : envs) b.add_place(p);
        for (auto& p : syss) b.add_place(p);
        b.set_initial(envs[0], 1);
        b.set_initial(syss[0], 1);
        if (r.below(2)) b.set_initial(syss[1], 1);
        int tn = 0;
        // environment chain
        for (int i = 0; i < n_env; ++i) {
            int dst = (i + 1 + r.below(n_env - 1)) % n_env;
            std::vector<std::pair<std::string, int>> pre{{envs[i], 1}}, post{{envs[dst], 1}};
            if (r.below(2)) { // carry a system player
                pre.push_back({syss[r.below(n_sys)], 1});
                post.push_back({syss[r.below(n_sys)], 1});
            }
            b.add_transition("t" + std::to_string(tn++), pre, post);
        }
        // system-only transitions
        int extra = 1 + r.below(3);
        for (int i = 0; i < extra; ++i) {
            std::string from = syss[r.below(n_sys)];
            std::string to = syss[r.below(n_sys)];
            b.add_transition("u" + std::to_string(tn++), {{from, 1}}, {{to, 1}});
        }
        petri_game g;
        g.name = "fuzz" + std::to_string(iter);
        g.net = b.build();
        g.is_system.assign(g.net.num_places(), false);
        for (auto& p : syss) g.is_system[g.net.place_id(p)] = true;
        g.winning.kind = winning_kind::bad_markings;
        // a random bad pattern over one or two system places
        if (r.below(3)) {
            marking_pattern pat;
            pat.ranges.push_back({g.net.place_id(syss[r.below(n_sys)]), 1, unbounded});
            if (r.below(2)) pat.ranges.push_back({g.net.place_id(syss[r.below(n_sys)]), 1, unbounded});
            std::sort(pat.ranges.begin(), pat.ranges.end());
            pat.ranges.erase(std::unique(pat.ranges.begin(), pat.ranges.end()), pat.ranges.end());
            g.winning.bad.push_back(pat);
        }
        run_config cfg;
        cfg.bound_k = 4;
        cfg.max_states = 300000;
        auto game = std::make_unique<petri_game>(std::move(g));
        try {
            reduction red(*game, cfg);
            auto ra = build_arena(red, cfg);
            auto sol = buchi::solve(ra.arena);
            REQUIRE(buchi::verify_certificate(ra.arena, sol));
            ++solved;
            if (!sol.win0[0]) continue;
            ++winning;
            auto fs = extract(red, ra, sol);
            auto rep = run_all_validators(fs, *game);
            INFO("game " << iter << ":\n" << print_game(*game) << rep.to_string());
            CHECK(rep.ok());
            report why;
            CHECK(check_winning_bad_markings(fs, *game, why) == win_verdict::winning);
        } catch (const class_error&) {
            ++skipped; // not in the decidable class (e.g. two env tokens meet)
        } catch (const cap_exceeded&) {
            ++skipped; // pathological loop structure, honestly reported
        }
    }
    CHECK(solved >= 100);
    CHECK(winning >= 50);
    INFO("solved " << solved << " winning " << winning << " skipped " << skipped);
}
