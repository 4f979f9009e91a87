#ifndef GVA_DECISIONS_HPP
#define GVA_DECISIONS_HPP

#include <optional>
#include <utility>

#include "gva/automata.hpp"
#include "gva/semantics.hpp"

namespace gva {

/// The finite alphabet sufficient for nonemptiness: the automaton's
/// constants plus |vars| reserved fresh letters.
std::set<Letter> bold_sigma(const Gva& a);

/// Decides L(a) != {} by breadth-first search over restricted
/// configurations, shortest witness first. The returned trace replays via
/// accepts_trace and visits pairwise-distinct configurations.
std::optional<std::pair<Word, Trace>> nonemptiness(const Gva& a);

enum class ContainmentDirection { GvaInFa, FaInGva };

/// Decides L(a) within L(f) (GvaInFa) or L(f) within L(a) (FaInGva) over
/// the infinite alphabet; returns a counterexample word when containment
/// fails. A nondeterministic f is determinized internally.
std::optional<Word> containment_vs_fa(const Gva& a, const Fa& f, ContainmentDirection direction);

} // namespace gva

#endif
