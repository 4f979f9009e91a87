#include <doctest.h>

#include "gva/closure.hpp"
#include "gva/dsl.hpp"

#include "support/build.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace gva;
using namespace gva::testing;

TEST_CASE("the bundled fixtures parse to the expected automata") {
    Gva a1 = fixture_gva("a1.gva");
    CHECK(a1 == example_a1());
    CHECK(validate_gva(a1).empty());

    Gva a2 = fixture_gva("a2.gva");
    CHECK(a2 == example_a2());
}

TEST_CASE("unsatisfiable guards parse fine") {
    auto parsed = parse_automaton("gva g { vars: x; states: s init accept;"
                                  " trans: s -> s on x if x != x; }");
    const Gva& a = std::get<Gva>(parsed);
    CHECK(a.transitions.size() == 1);
    CHECK(a.transitions[0].guard == Guard{{GuardAtom::neq(V("x"), V("x"))}});
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_automaton("gva g {\n  vars: x\n}");
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.expected.find("';'") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_automaton("gva g { letters: #fresh1; }"), ParseError);
    CHECK_THROWS_AS(parse_automaton("gva g { trans: a -> b on x; }"), ParseError);
    CHECK_THROWS_AS(parse_automaton("widget g { }"), ParseError);
    CHECK_THROWS_AS(parse_automaton("gva g { states: s init; } trailing"), ParseError);
    CHECK_THROWS_AS(parse_automaton("gva g { letters: t; vars: t; }"), ParseError);
    CHECK_THROWS_AS(parse_automaton("gva g { vars: t; letters: t; }"), ParseError);
}

TEST_CASE("disjunction is eliminated at parse time") {
    auto parsed = parse_automaton(
        "gva g { letters: a, b; vars: x, y; states: s init accept;"
        " trans: s -> s on x if x == a || y == b; }");
    const Gva& g = std::get<Gva>(parsed);
    REQUIRE(g.transitions.size() == 2);
    CHECK(g.transitions[0].guard ==
          Guard{{GuardAtom::eq(V("x"), L("a")), GuardAtom::eq(V("y"), V("y"))}});
    CHECK(g.transitions[1].guard ==
          Guard{{GuardAtom::eq(V("y"), L("b")), GuardAtom::eq(V("x"), V("x"))}});
}

TEST_CASE("round trips on the fixture corpus") {
    for (const char* name : {"a1.gva", "a2.gva", "unsat.gva", "client.gva", "auth.gva",
                             "flight.gva", "payment.gva"}) {
        CAPTURE(name);
        std::string text = fixture_text(name);
        ParsedAutomaton parsed = parse_automaton(text);
        ParsedAutomaton again = parse_automaton(print_automaton(parsed));
        CHECK(parsed == again);
    }
}

TEST_CASE("round trips on constructions") {
    Gva composites[] = {
        gva_union(example_a1(), example_a2()),
        gva_intersection(example_a1(), example_a2()),
        gva_concat(example_a1(), example_a2()),
        gva_star(example_a1()),
        async_product({example_a1(), example_a2()}),
        gen_ln(2),
    };
    for (const auto& a : composites) {
        CAPTURE(a.name);
        ParsedAutomaton again = parse_automaton(print_automaton(a));
        CHECK(std::get<Gva>(again) == a);
    }
}

TEST_CASE("nfma and fa files") {
    std::string text = "nfma n {\n  registers: 2;\n  states: p0 init, p1 accept;\n"
                       "  init: 1 = c;\n  trans: p0 -> p1 read 1;\n"
                       "  trans: p1 -> p0 reassign 2;\n}\n";
    ParsedAutomaton parsed = parse_automaton(text);
    const Nfma& n = std::get<Nfma>(parsed);
    CHECK(n.registers == 2);
    CHECK(n.init_assign.at(1) == L("c"));
    CHECK(parse_automaton(print_automaton(parsed)) == parsed);

    std::string fa_text = "fa f {\n  letters: a, b;\n  states: s0 init, s1 accept;\n"
                          "  trans: s0 -> s1 on a;\n}\n";
    ParsedAutomaton fa_parsed = parse_automaton(fa_text);
    CHECK(std::get<Fa>(fa_parsed).letters.size() == 2);
    CHECK(parse_automaton(print_automaton(fa_parsed)) == fa_parsed);
    CHECK(print_automaton(fa_parsed) == fa_text);
}

TEST_CASE("dot export for the running example") {
    std::string dot = export_dot(example_a2());
    CHECK(dot.find("\"q0\"") != std::string::npos);
    CHECK(dot.find("\"q1\"") != std::string::npos);
    CHECK(dot.find("[label=\"y, y != x\"]") != std::string::npos);
    CHECK(dot.find("refresh: x, y") != std::string::npos);
    CHECK(dot == export_dot(example_a2()));  // deterministic

    std::string nfma_dot = export_dot(ParsedAutomaton{Nfma{
        "n", 1, {"p"}, "p", {"p"}, {}, {{"p", RegisterRead{1}, "p"}}}});
    CHECK(nfma_dot.find("read 1") != std::string::npos);
}

TEST_CASE("strategy export is deterministic") {
    CHECK(export_strategy_json(Strategy{}, example_a1()) == "[]\n");

    Gva a = make_all_accepting(example_a2());
    auto result = compose_services(a, {a});
    REQUIRE(result);
    std::string once = export_strategy_json(result->strategy, result->community);
    std::string twice = export_strategy_json(result->strategy, result->community);
    CHECK(once == twice);
    CHECK(once.find("\"service_index\": 0") != std::string::npos);
    CHECK(once.find("\"position\"") != std::string::npos);
    CHECK(once.find("\"challenge\"") != std::string::npos);
}
