#ifndef GVA_SEMANTICS_HPP
#define GVA_SEMANTICS_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gva/automata.hpp"
#include "gva/core.hpp"

namespace gva {

/// Runtime state of a GVA: a substitution and a control state.
struct Configuration {
    Substitution subst;
    StateId state;

    auto operator<=>(const Configuration&) const = default;
};

/// Evidence for one transition step. `input` is empty for an epsilon step.
/// Replays to a valid step via accepts_trace.
struct StepWitness {
    std::size_t transition_index = 0;
    Substitution guess;
    std::optional<Letter> input;
    Configuration result;

    auto operator<=>(const StepWitness&) const = default;
};

using Trace = std::vector<StepWitness>;

/// All successors of `c` in one transition on `input` (empty = epsilon),
/// guessing free variables from `pool`. Guesses cover exactly the free
/// variables of the instantiated label and guard; the successor substitution
/// drops every variable refreshed in the target state. Deterministic order:
/// transition index, then guess enumeration over the sorted pool.
/// Throws PreconditionError when a letter input is missing from the pool.
std::vector<std::pair<Configuration, StepWitness>> step(const Gva& a,
                                                        const Configuration& c,
                                                        const std::optional<Letter>& input,
                                                        const std::set<Letter>& pool);

/// Least fixpoint of epsilon steps over pool-restricted configurations.
std::set<Configuration> eps_closure(const Gva& a,
                                    const std::set<Configuration>& cs,
                                    const std::set<Letter>& pool);

/// Epsilon closure that records how each configuration was first reached:
/// discovery order plus parent pointers for witness extraction. Roots map to
/// no entry in `parent`.
struct EpsClosure {
    std::vector<Configuration> order;
    std::map<Configuration, std::pair<Configuration, StepWitness>> parent;
};

EpsClosure eps_closure_traced(const Gva& a,
                              const std::vector<Configuration>& roots,
                              const std::set<Letter>& pool);

/// The finite candidate pool for membership: letters of w, the automaton's
/// constants, and |vars| reserved fresh letters.
std::set<Letter> membership_pool(const Gva& a, const Word& w);

/// Reserved letters "#fresh1", "#fresh2", ... skipping collisions with
/// `avoid`.
std::vector<Letter> reserved_fresh_letters(std::size_t count, const std::set<Letter>& avoid);

/// Decides w in L(a); on success returns an accepting run as a trace.
/// The search memoizes on (position, state, substitution up to coherence).
std::optional<Trace> membership(const Gva& a, const Word& w);

/// Membership restricted to an explicit candidate pool (the pool must
/// contain every letter of w). Exposed for pool-robustness checks.
std::optional<Trace> membership_over_pool(const Gva& a, const Word& w,
                                          const std::set<Letter>& pool);

/// All words over `pool` of length <= maxLen accepted by `a`, with both
/// inputs and guesses drawn from `pool`. Brute-force layered enumeration on
/// a code path independent of membership's memoized search.
std::set<Word> enumerate_language(const Gva& a, const std::set<Letter>& pool,
                                  std::size_t max_len);

/// True iff `trace` replays as a valid accepting run of `a` on `w`, with
/// each guess covering exactly the free variables of the step it fires.
bool accepts_trace(const Gva& a, const Word& w, const Trace& trace);

/// The word consumed by a trace (its non-epsilon inputs, in order).
Word trace_word(const Trace& trace);

} // namespace gva

#endif
