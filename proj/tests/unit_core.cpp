#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "petrisynth/net.hpp"
#include "test_util.hpp"

using namespace petrisynth;

TEST_CASE("multiset laws") {
    testutil::rng r(42);
    for (int iter = 0; iter < 500; ++iter) {
        multiset a, b;
        for (int i = 0; i < 6; ++i) {
            if (r.below(2)) a.add(r.below(5), r.below(3) + 1);
            if (r.below(2)) b.add(r.below(5), r.below(3) + 1);
        }
        CHECK(a.plus(b).minus(b) == a);
        CHECK(a.set_union(b).includes(a.set_intersection(b)));
        CHECK(a.plus(b).includes(a));
        CHECK(a.set_intersection(b) == b.set_intersection(a));
        CHECK(a.set_union(b) == b.set_union(a));
        // saturation: difference never goes negative
        auto d = a.minus(b);
        for (auto& [id, c] : d.entries()) CHECK(c > 0);
        // inclusion is a partial order wrt plus
        CHECK(a.plus(b).includes(b));
    }
}

TEST_CASE("multiset canonical form") {
    multiset m;
    m.add(3, 2);
    m.add(1, 1);
    m.add(3, -2);
    CHECK(m.count(3) == 0);
    CHECK(m.support_size() == 1);
    CHECK(m.entries().front().first == 1);
    multiset built({{5, 1}, {2, 2}, {5, 3}});
    CHECK(built.count(5) == 4);
    CHECK(built.count(2) == 2);
}

TEST_CASE("pre and post sets on fig1") {
    auto g = testutil::load("fig1.game");
    const auto& net = g.net;
    // pre(sunny) = {forecast:1}
    int32_t sunny = net.trans_id("sunny");
    REQUIRE(sunny != petri_net::npos);
    CHECK(net.pre(sunny).count(net.place_id("forecast")) == 1);
    CHECK(net.pre(sunny).total() == 1);
    // pre(p_h) = {p:1}
    int32_t p_h = net.trans_id("p_h");
    CHECK(net.pre(p_h).count(net.place_id("p")) == 1);
    // place presets/postsets
    auto& into_s = net.pre_of_place(net.place_id("s"));
    CHECK(into_s == std::vector<int32_t>{sunny});
    // arc weight 2 into p
    CHECK(net.post(sunny).count(net.place_id("p")) == 2);
}

TEST_CASE("enabled and fire on fig1") {
    auto g = testutil::load("fig1.game");
    const auto& net = g.net;
    marking in = net.initial();
    int32_t sunny = net.trans_id("sunny");
    int32_t p_h = net.trans_id("p_h");
    int32_t p_l = net.trans_id("p_l");
    CHECK(net.enabled(in, sunny));
    CHECK(!net.enabled(in, p_h));
    marking after = net.fire(in, sunny);
    CHECK(after.count(net.place_id("s")) == 1);
    CHECK(after.count(net.place_id("p")) == 2);
    CHECK(after.count(net.place_id("forecast")) == 0);
    marking after2 = net.fire(after, p_l);
    CHECK(after2.count(net.place_id("p")) == 1);
    CHECK(after2.count(net.place_id("k")) == 1);
    CHECK_THROWS_AS((void)net.fire(in, p_h), not_enabled);
}

TEST_CASE("weighted enabledness shortfall") {
    net_builder b;
    b.add_place("a");
    b.add_place("c");
    b.add_transition("t", {{"a", 2}}, {{"c", 1}});
    b.set_initial("a", 1);
    auto net = b.build();
    CHECK(!net.enabled(net.initial(), net.trans_id("t")));
}

TEST_CASE("self-loop transition keeps the marking") {
    net_builder b;
    b.add_place("a");
    b.add_transition("t", {{"a", 1}}, {{"a", 1}});
    b.set_initial("a", 1);
    auto net = b.build();
    CHECK(net.fire(net.initial(), net.trans_id("t")) == net.initial());
}

namespace {
// independent oracle: depth-first closure exploring transitions in reverse
// order, for the order-independence property
std::set<marking> dfs_reachable(const petri_net& net) {
    std::set<marking> seen{net.initial()};
    std::vector<marking> stack{net.initial()};
    while (!stack.empty()) {
        marking m = stack.back();
        stack.pop_back();
        for (int32_t t = net.num_transitions() - 1; t >= 0; --t) {
            if (!net.enabled(m, t)) continue;
            marking next = net.fire(m, t);
            if (seen.insert(next).second) stack.push_back(next);
        }
    }
    return seen;
}
} // namespace

TEST_CASE("fig3a reachable markings: frozen oracle set") {
    auto g = testutil::load("fig3a.game");
    const auto& net = g.net;
    auto reach = net.reachable_markings(1);
    auto mk = [&](std::vector<std::string> names) {
        marking m;
        for (auto& n : names) m.add(net.place_id(n));
        return m;
    };
    // hand-enumerated closure of the fig3a net (eight markings)
    std::set<marking> expected{
        mk({"e1", "s1", "q1"}), mk({"e1", "s1", "q2"}), mk({"e2", "s2", "q1"}), mk({"e2", "s2", "q2"}),
        mk({"e2", "s3", "q1"}), mk({"e2", "s3", "q2"}), mk({"e3", "s2", "q3"}), mk({"e3", "s3", "q3"}),
    };
    std::set<marking> got(reach.begin(), reach.end());
    CHECK(got == expected);
    CHECK(got == dfs_reachable(net));
}

TEST_CASE("reachability properties on fig1") {
    auto g = testutil::load("fig1.game");
    const auto& net = g.net;
    auto reach = net.reachable_markings(4);
    std::set<marking> set(reach.begin(), reach.end());
    CHECK(set == dfs_reachable(net));
    // closure under fire
    for (auto& m : reach)
        for (int32_t t = 0; t < net.num_transitions(); ++t)
            if (net.enabled(m, t)) CHECK(set.count(net.fire(m, t)) == 1);
    // token preservation for |pre| == |post| transitions
    for (int32_t t = 0; t < net.num_transitions(); ++t) {
        if (net.pre(t).total() != net.post(t).total()) continue;
        for (auto& m : reach)
            if (net.enabled(m, t)) CHECK(net.fire(m, t).total() == m.total());
    }
}

TEST_CASE("no-transition net reaches only the initial marking") {
    net_builder b;
    b.add_place("a");
    b.set_initial("a", 1);
    auto net = b.build();
    auto reach = net.reachable_markings(1);
    CHECK(reach.size() == 1);
    CHECK(reach[0] == net.initial());
}

TEST_CASE("bound violations and caps") {
    net_builder b;
    b.add_place("a");
    b.add_place("c");
    b.add_transition("t", {{"a", 1}}, {{"c", 2}});
    b.set_initial("a", 1);
    auto net = b.build();
    CHECK_THROWS_AS((void)net.reachable_markings(1), bound_violated);
    CHECK_NOTHROW((void)net.reachable_markings(2));

    net_builder b2;
    b2.add_place("a");
    b2.add_place("c");
    b2.add_transition("grow", {{"a", 1}}, {{"a", 1}, {"c", 1}});
    b2.set_initial("a", 1);
    auto net2 = b2.build();
    CHECK_THROWS_AS((void)net2.reachable_markings(1000, 5), cap_exceeded);
}

TEST_CASE("empty preconditions and postconditions") {
    net_builder b;
    b.add_place("a");
    b.add_transition("spawn", {}, {{"a", 1}});
    b.add_transition("drain", {{"a", 1}}, {});
    auto net = b.build();
    CHECK(net.pre(net.trans_id("spawn")).empty());
    CHECK(net.enabled(marking(), net.trans_id("spawn")));
    marking one = net.fire(marking(), net.trans_id("spawn"));
    CHECK(one.count(net.place_id("a")) == 1);
    CHECK(net.fire(one, net.trans_id("drain")).empty());
}
