#include <doctest.h>

#include "gva/core.hpp"
#include "gva/automata.hpp"

#include "support/build.hpp"
#include "support/generators.hpp"

using namespace gva;
using namespace gva::testing;

TEST_CASE("guard free variables") {
    Guard g{{GuardAtom::eq(V("x"), V("y")), GuardAtom::neq(V("x"), L("c"))}};
    CHECK(guard_free_vars(g) == std::set<Variable>{V("x"), V("y")});
    CHECK(guard_free_vars(Guard::truth()).empty());
    CHECK(guard_free_vars(Guard{{GuardAtom::eq(L("c"), L("d"))}}).empty());
}

TEST_CASE("guard application") {
    Guard g{{GuardAtom::eq(V("x"), V("y"))}};
    Substitution s{{V("x"), L("a")}};
    CHECK(guard_apply(s, g) == Guard{{GuardAtom::eq(L("a"), V("y"))}});
    CHECK(guard_apply(Substitution{}, g) == g);

    Substitution both{{V("x"), L("a")}, {V("y"), L("a")}};
    Guard neq{{GuardAtom::neq(V("x"), V("y"))}};
    CHECK(guard_apply(both, neq) == Guard{{GuardAtom::neq(L("a"), L("a"))}});
}

TEST_CASE("guard satisfaction") {
    CHECK(guard_satisfies(Substitution{{V("x"), L("a")}, {V("y"), L("a")}},
                          Guard{{GuardAtom::eq(V("x"), V("y"))}}));
    CHECK(guard_satisfies(Substitution{{V("x"), L("a")}, {V("y"), L("b")}},
                          Guard{{GuardAtom::neq(V("x"), V("y"))}}));
    CHECK_FALSE(guard_satisfies(Substitution{{V("x"), L("a")}},
                                Guard{{GuardAtom::neq(V("x"), V("x"))}}));
    CHECK_THROWS_AS(guard_satisfies(Substitution{}, Guard{{GuardAtom::eq(V("x"), L("a"))}}),
                    UnboundVariableError);
}

TEST_CASE("guard satisfiability with guessing") {
    std::set<Letter> pool{L("a"), L("b")};

    auto forced = guard_satisfiable_ext(Substitution{{V("x"), L("a")}},
                                        Guard{{GuardAtom::neq(V("y"), V("x"))}}, pool);
    REQUIRE(forced);
    CHECK(*forced == Substitution{{V("y"), L("b")}});

    CHECK_FALSE(guard_satisfiable_ext(Substitution{}, Guard{{GuardAtom::neq(V("x"), V("x"))}},
                                      pool));

    auto equal = guard_satisfiable_ext(Substitution{{V("x"), L("a")}},
                                       Guard{{GuardAtom::eq(V("y"), V("x"))}}, pool);
    REQUIRE(equal);
    CHECK(*equal == Substitution{{V("y"), L("a")}});
}

TEST_CASE("disjunction normalization pads free variables") {
    GuardDisjunction input{Guard{{GuardAtom::eq(V("x"), L("a"))}},
                           Guard{{GuardAtom::eq(V("y"), L("b"))}}};
    auto out = normalize_disjunction(input);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == Guard{{GuardAtom::eq(V("x"), L("a")), GuardAtom::eq(V("y"), V("y"))}});
    CHECK(out[1] == Guard{{GuardAtom::eq(V("y"), L("b")), GuardAtom::eq(V("x"), V("x"))}});

    Guard single{{GuardAtom::neq(V("x"), V("y"))}};
    CHECK(normalize_disjunction({single}) == std::vector<Guard>{single});

    auto trues = normalize_disjunction({Guard{{GuardAtom::truth()}}, Guard{{GuardAtom::truth()}}});
    CHECK(trues == std::vector<Guard>{Guard{{GuardAtom::truth()}}, Guard{{GuardAtom::truth()}}});
}

TEST_CASE("disjunction normalization preserves satisfaction") {
    Rng rng(20240811);
    std::vector<Variable> vars{V("x"), V("y"), V("z")};
    std::vector<Letter> letters{L("a"), L("b"), L("c")};
    std::vector<Term> terms;
    for (const auto& v : vars) terms.push_back(v);
    for (const auto& l : letters) terms.push_back(l);

    for (int iter = 0; iter < 300; ++iter) {
        GuardDisjunction disjuncts;
        std::size_t n = pick(rng, 1, 3);
        for (std::size_t i = 0; i < n; ++i) disjuncts.push_back(random_guard(rng, terms, 2));

        Substitution sigma;  // ground everything
        for (const auto& v : vars) sigma.bindings.emplace(v, pick_one(rng, letters));

        bool any_disjunct = false;
        for (const auto& g : disjuncts) any_disjunct |= guard_satisfies(sigma, g);
        bool any_output = false;
        for (const auto& g : normalize_disjunction(disjuncts))
            any_output |= guard_satisfies(sigma, g);
        CAPTURE(iter);
        CHECK(any_disjunct == any_output);
    }
}

TEST_CASE("substitution application and pattern") {
    Substitution s{{V("x"), L("a")}};
    CHECK(s.apply(Symbol{V("x")}) == Symbol{L("a")});
    CHECK(s.apply(Symbol{V("y")}) == Symbol{V("y")});
    CHECK(s.apply(Symbol{L("b")}) == Symbol{L("b")});
    CHECK(s.domain() == std::set<Variable>{V("x")});
    CHECK(s.codomain() == std::set<Letter>{L("a")});
}

TEST_CASE("disjoint union") {
    Substitution x{{V("x"), L("a")}};
    Substitution y{{V("y"), L("b")}};
    CHECK(subst_disjoint_union(x, y) == Substitution{{V("x"), L("a")}, {V("y"), L("b")}});
    CHECK(subst_disjoint_union(Substitution{}, x) == x);
    CHECK_THROWS_AS(subst_disjoint_union(x, Substitution{{V("x"), L("b")}}), DomainOverlapError);
}

TEST_CASE("restriction") {
    Substitution s{{V("x"), L("a")}, {V("y"), L("b")}};
    CHECK(subst_restrict(s, {V("x")}) == Substitution{{V("x"), L("a")}});
    CHECK(subst_restrict(s, {}) == Substitution{});
    CHECK(subst_restrict(s, {V("x"), V("y"), V("z")}) == s);
}

TEST_CASE("substitution algebra properties") {
    Rng rng(7);
    std::vector<Variable> vars{V("x"), V("y"), V("z"), V("w")};
    std::vector<Letter> letters{L("a"), L("b")};

    for (int iter = 0; iter < 200; ++iter) {
        Substitution s = random_subst(rng, vars, letters);

        // Union with the empty substitution is the identity.
        CHECK(subst_disjoint_union(s, Substitution{}) == s);
        CHECK(subst_disjoint_union(Substitution{}, s) == s);

        // Commutativity and associativity on split domains.
        std::set<Variable> keep1, keep2;
        for (const auto& v : s.domain()) (chance(rng, 0.5) ? keep1 : keep2).insert(v);
        Substitution s1 = subst_restrict(s, keep1);
        Substitution s2 = subst_restrict(s, keep2);
        CHECK(subst_disjoint_union(s1, s2) == subst_disjoint_union(s2, s1));

        // Restriction then union with the dropped part reconstructs s.
        CHECK(subst_disjoint_union(s1, subst_drop(s, keep1)) == s);

        // Applying sigma to a guard does not change satisfaction under sigma.
        std::vector<Term> terms;
        for (const auto& v : s.domain()) terms.push_back(v);
        for (const auto& l : letters) terms.push_back(l);
        Guard g = random_guard(rng, terms, 3);
        if (!terms.empty())
            CHECK(guard_satisfies(s, guard_apply(s, g)) == guard_satisfies(s, g));
    }
}

TEST_CASE("validate the running examples") {
    CHECK(validate_gva(example_a1()).empty());
    CHECK(validate_gva(example_a2()).empty());
}

TEST_CASE("validate reports undeclared names") {
    Gva a = example_a1();
    a.transitions.push_back({"p0", V("zz"), Guard::truth(), "p1"});
    auto diags = validate_gva(a);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "UndeclaredVariable");

    Gva b = example_a1();
    b.refresh[V("y")].insert("nowhere");
    diags = validate_gva(b);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "UnknownState");

    Gva c = example_a1();
    c.transitions.push_back({"p0", L("q"), Guard::truth(), "p1"});
    diags = validate_gva(c);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "UndeclaredLetter");
}

TEST_CASE("fa helpers") {
    Fa f;
    f.name = "f";
    f.letters = {L("a"), L("b")};
    f.states = {"s0", "s1"};
    f.initial = {"s0"};
    f.accepting = {"s1"};
    f.transitions = {{"s0", L("a"), "s1"}, {"s1", L("b"), "s0"}};

    CHECK(f.is_deterministic());
    CHECK_FALSE(f.is_complete());
    CHECK(validate_fa(f).empty());
    CHECK(fa_accepts(f, word("a")));
    CHECK(fa_accepts(f, word("a b a")));
    CHECK_FALSE(fa_accepts(f, word("b")));
    CHECK_FALSE(fa_accepts(f, word("a c")));  // undeclared letter

    f.transitions.push_back({"s0", L("a"), "s0"});
    CHECK_FALSE(f.is_deterministic());
}
