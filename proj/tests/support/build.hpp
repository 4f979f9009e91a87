#ifndef GVA_TESTS_BUILD_HPP
#define GVA_TESTS_BUILD_HPP

#include <sstream>
#include <string>

#include "gva/automata.hpp"
#include "gva/core.hpp"

namespace gva::testing {

inline Letter L(const std::string& name) { return Letter{name}; }
inline Variable V(const std::string& name) { return Variable{name}; }

/// "a b c" -> word of three letters.
inline Word word(const std::string& spaced) {
    Word w;
    std::istringstream in(spaced);
    std::string token;
    while (in >> token) w.push_back(Letter{token});
    return w;
}

/// Running examples: a1 accepts words whose last letter differs from all
/// earlier ones, a2 accepts pairwise-distinct two-letter blocks.
inline Gva example_a1() {
    Gva a;
    a.name = "a1";
    a.vars = {V("x"), V("y")};
    a.states = {"p0", "p1"};
    a.initial = {"p0"};
    a.accepting = {"p1"};
    a.refresh[V("y")] = {"p0"};
    a.transitions.push_back({"p0", V("y"), Guard{{GuardAtom::neq(V("y"), V("x"))}}, "p0"});
    a.transitions.push_back({"p0", V("x"), Guard::truth(), "p1"});
    return a;
}

inline Gva example_a2() {
    Gva a;
    a.name = "a2";
    a.vars = {V("x"), V("y")};
    a.states = {"q0", "q1"};
    a.initial = {"q0"};
    a.accepting = {"q0"};
    a.refresh[V("x")] = {"q0"};
    a.refresh[V("y")] = {"q0"};
    a.transitions.push_back({"q0", V("x"), Guard::truth(), "q1"});
    a.transitions.push_back({"q1", V("y"), Guard{{GuardAtom::neq(V("y"), V("x"))}}, "q0"});
    return a;
}

/// Closed-form predicate for L(a1).
inline bool last_letter_fresh(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w.back()) return false;
    return true;
}

/// Closed-form predicate for L(a2).
inline bool pairwise_distinct_blocks(const Word& w) {
    if (w.size() % 2 != 0) return false;
    for (std::size_t i = 0; i + 1 < w.size(); i += 2)
        if (w[i] == w[i + 1]) return false;
    return true;
}

/// All words over `pool` with length <= max_len.
inline std::vector<Word> all_words(const std::set<Letter>& pool, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& l : pool) {
                Word w = out[i];
                w.push_back(l);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

} // namespace gva::testing

#endif
