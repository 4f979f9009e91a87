#ifndef GVA_DSL_HPP
#define GVA_DSL_HPP

#include <string>
#include <variant>

#include "gva/automata.hpp"
#include "gva/simulation.hpp"

namespace gva {

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& expected)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": " +
                expected),
          line(line), col(col), expected(expected) {}

    std::size_t line;
    std::size_t col;
    std::string expected;
};

using ParsedAutomaton = std::variant<Gva, Nfma, Fa>;

/// Parses the line-oriented automaton DSL:
///
///   gva NAME {
///     letters: c1, c2;
///     vars: x, y;
///     states: p0 init, p1 accept;
///     refresh: y @ p0;
///     trans: p0 -> p1 on x if y != x && x == c1;   // `on eps` for epsilon
///   }
///
///   nfma NAME { registers: 2; states: ...; init: 1 = c1;
///               trans: p -> q read 2;  trans: p -> q reassign 1; }
///
///   fa NAME { letters: ...; states: ...; trans: p -> q on a; }
///
/// Top-level `||` in guards is accepted and eliminated at parse time, one
/// transition per disjunct. Identifiers must be declared before use; letter
/// tokens beginning with "#fresh" are reserved and rejected.
ParsedAutomaton parse_automaton(const std::string& text);

std::string print_automaton(const Gva& a);
std::string print_automaton(const Nfma& n);
std::string print_automaton(const Fa& f);
std::string print_automaton(const ParsedAutomaton& a);

/// DOT digraph with guard labels on edges and refresh annotations on nodes.
/// Byte-deterministic for equal inputs.
std::string export_dot(const Gva& a);
std::string export_dot(const Nfma& n);
std::string export_dot(const Fa& f);
std::string export_dot(const ParsedAutomaton& a);

/// Strategy as a JSON array of {position, move} objects with sorted keys;
/// `responder` is the automaton the strategy moves in (the game's right
/// side), used to render transitions. Byte-deterministic.
std::string export_strategy_json(const Strategy& s, const Gva& responder);

} // namespace gva

#endif
