#ifndef GVA_CLOSURE_HPP
#define GVA_CLOSURE_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "gva/automata.hpp"

namespace gva {

class NondeterministicFaError : public Error {
public:
    explicit NondeterministicFaError(const std::string& what) : Error(what) {}
};

/// Injective per-automaton variable renamings making the variable sets
/// pairwise disjoint. Automata whose variables never collide keep their
/// names.
struct RenamingPlan {
    std::vector<std::map<Variable, Variable>> renamings;

    static RenamingPlan make_disjoint(const std::vector<const Gva*>& automata);
};

/// Alpha-converts variables; `renaming` must cover every variable of `a`.
Gva rename_variables(const Gva& a, const std::map<Variable, Variable>& renaming);

/// Renames both automata apart (second gets fresh variable names on
/// collision) and returns the pair.
std::pair<Gva, Gva> rename_apart(const Gva& a, const Gva& b);

/// Disjoint union of the two automata; recognizes L(a) | L(b).
Gva gva_union(const Gva& a, const Gva& b);

/// Synchronous product; paired transitions carry (a1 = a2) && g1 && g2 and
/// epsilon transitions advance one side alone.
Gva gva_intersection(const Gva& a, const Gva& b);

/// Epsilon transitions from a's accepting states into b's initial states.
Gva gva_concat(const Gva& a, const Gva& b);

/// Adds a fresh accepting initial state plus epsilon transitions between
/// accepting and initial states, so L(a) itself is untouched.
Gva gva_star(const Gva& a);

/// The complement of L(f) over the whole infinite alphabet, as a GVA. Each
/// state gets a divergence transition reading any letter not enabled there
/// into an all-accepting sink. Requires a deterministic (possibly partial)
/// FA; throws NondeterministicFaError otherwise.
Gva complement_fa(const Fa& f);

/// Asynchronous product: exactly one component advances per transition.
/// When `advancing` is given it receives, per output transition, the index
/// of the component that moves.
Gva async_product(const std::vector<Gva>& components,
                  std::vector<std::size_t>* advancing = nullptr);

/// Register machine translation: register reads become variable reads, each
/// nondeterministic reassignment becomes an epsilon pair through a state
/// refreshing the register's variable, and a nonempty initial assignment
/// becomes an equality-guarded epsilon prefix. Output size is linear.
Gva nfma_to_gva(const Nfma& n);

/// Benchmark family: mirrored words around '#' where every letter of the
/// second block occurs in the first. Exactly 4n+2 states and 1+3n+n^2
/// transitions.
Gva gen_ln(std::size_t n);

/// Embeds a classical FA as a variable-free GVA.
Gva fa_to_gva(const Fa& f);

/// Classical subset construction (reachable part, partial).
Fa fa_determinize(const Fa& f);

} // namespace gva

#endif
