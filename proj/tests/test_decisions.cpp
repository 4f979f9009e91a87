#include <doctest.h>

#include "gva/closure.hpp"
#include "gva/decisions.hpp"

#include "support/build.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gva;
using namespace gva::testing;

namespace {

std::vector<Configuration> trace_configurations(const Gva& a, const Trace& trace) {
    std::vector<Configuration> out;
    if (trace.empty()) return out;
    out.push_back(Configuration{Substitution{}, a.transitions.at(trace.front().transition_index).from});
    for (const auto& wit : trace) out.push_back(wit.result);
    return out;
}

bool pairwise_distinct(const std::vector<Configuration>& configs) {
    std::set<Configuration> seen(configs.begin(), configs.end());
    return seen.size() == configs.size();
}

} // namespace

TEST_CASE("bold sigma size") {
    Gva a;
    a.name = "k2m1";
    a.vars = {V("x"), V("y")};
    a.constants = {L("c")};
    a.states = {"s0"};
    a.initial = {"s0"};
    CHECK(bold_sigma(a).size() == 3);
}

TEST_CASE("nonemptiness of the running example") {
    auto witness = nonemptiness(example_a1());
    REQUIRE(witness);
    CHECK(witness->first.size() == 1);  // any single letter reaches p1
    CHECK(accepts_trace(example_a1(), witness->first, witness->second));
    CHECK(membership(example_a1(), witness->first));
}

TEST_CASE("nonemptiness of an unsatisfiable guard") {
    Gva dead;
    dead.name = "dead";
    dead.vars = {V("x")};
    dead.states = {"s0", "s1"};
    dead.initial = {"s0"};
    dead.accepting = {"s1"};
    dead.transitions.push_back({"s0", V("x"), Guard{{GuardAtom::neq(V("x"), V("x"))}}, "s1"});
    CHECK_FALSE(nonemptiness(dead));
}

TEST_CASE("nonemptiness needs an epsilon-accepting check") {
    Gva a = example_a2();  // epsilon is accepted at q0
    auto witness = nonemptiness(a);
    REQUIRE(witness);
    CHECK(witness->first.empty());
    CHECK(witness->second.empty());
}

TEST_CASE("nonemptiness agrees with brute force and yields minimal distinct-config runs") {
    Rng rng(1701);
    for (int iter = 0; iter < 120; ++iter) {
        Gva a = random_gva(rng);
        std::set<Letter> pool = bold_sigma(a);
        auto verdict = nonemptiness(a);
        auto shortest = bfs_shortest_accepted(a, pool);
        CAPTURE(iter);
        CHECK(verdict.has_value() == shortest.has_value());
        if (verdict) {
            CHECK(verdict->first.size() == *shortest);  // shortest witness
            CHECK(accepts_trace(a, verdict->first, verdict->second));
            CHECK(membership(a, verdict->first));
            CHECK(pairwise_distinct(trace_configurations(a, verdict->second)));
            for (const auto& l : verdict->first) CHECK(pool.count(l));
        }
    }
}

TEST_CASE("self containment of an FA embedded as a GVA") {
    Fa f;
    f.name = "f";
    f.letters = {L("a"), L("b")};
    f.states = {"s0", "s1"};
    f.initial = {"s0"};
    f.accepting = {"s1"};
    f.transitions = {{"s0", L("a"), "s1"}, {"s1", L("b"), "s0"}};

    CHECK_FALSE(containment_vs_fa(fa_to_gva(f), f, ContainmentDirection::GvaInFa));
    CHECK_FALSE(containment_vs_fa(fa_to_gva(f), f, ContainmentDirection::FaInGva));
}

TEST_CASE("an FA-like GVA inside a universal FA over the same letters") {
    // Universal over {a, b}: any in-alphabet word is accepted.
    Fa universal;
    universal.name = "universal";
    universal.letters = {L("a"), L("b")};
    universal.states = {"u"};
    universal.initial = {"u"};
    universal.accepting = {"u"};
    universal.transitions = {{"u", L("a"), "u"}, {"u", L("b"), "u"}};

    Fa f;
    f.name = "f";
    f.letters = {L("a"), L("b")};
    f.states = {"s0", "s1"};
    f.initial = {"s0"};
    f.accepting = {"s1"};
    f.transitions = {{"s0", L("a"), "s1"}};

    CHECK_FALSE(containment_vs_fa(fa_to_gva(f), universal, ContainmentDirection::GvaInFa));

    // A genuine GVA escapes any FA through an undeclared letter.
    auto counterexample = containment_vs_fa(example_a1(), universal, ContainmentDirection::GvaInFa);
    REQUIRE(counterexample);
    CHECK(membership(example_a1(), *counterexample));
    CHECK_FALSE(fa_accepts(universal, *counterexample));
}

TEST_CASE("aa against the alternating automaton") {
    Fa aa;
    aa.name = "aa";
    aa.letters = {L("a")};
    aa.states = {"s0", "s1", "s2"};
    aa.initial = {"s0"};
    aa.accepting = {"s2"};
    aa.transitions = {{"s0", L("a"), "s1"}, {"s1", L("a"), "s2"}};

    auto counterexample = containment_vs_fa(example_a2(), aa, ContainmentDirection::FaInGva);
    REQUIRE(counterexample);
    CHECK(*counterexample == word("a a"));
}

TEST_CASE("containment counterexamples are genuine on random inputs") {
    Rng rng(9090);
    const auto words = all_words({L("a"), L("b"), L("c")}, 3);
    for (int iter = 0; iter < 25; ++iter) {
        GvaGenOptions opt;
        opt.max_states = 3;
        opt.max_transitions = 4;
        Gva a = random_gva(rng, opt);
        Fa f = random_fa(rng, 3, 2, 4);

        auto gva_in_fa = containment_vs_fa(a, f, ContainmentDirection::GvaInFa);
        auto fa_in_gva = containment_vs_fa(a, f, ContainmentDirection::FaInGva);
        CAPTURE(iter);

        if (gva_in_fa) {
            CHECK(membership(a, *gva_in_fa));
            CHECK_FALSE(fa_accepts(f, *gva_in_fa));
        } else {
            // Spot-check the containment on short words.
            for (const auto& w : words)
                if (membership(a, w)) CHECK(fa_accepts(f, w));
        }

        if (fa_in_gva) {
            CHECK(fa_accepts(f, *fa_in_gva));
            CHECK_FALSE(membership(a, *fa_in_gva));
        } else {
            for (const auto& w : words)
                if (fa_accepts(f, w)) CHECK(membership(a, w));
        }
    }
}
