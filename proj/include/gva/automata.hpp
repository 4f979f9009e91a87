#ifndef GVA_AUTOMATA_HPP
#define GVA_AUTOMATA_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gva/core.hpp"

namespace gva {

using StateId = std::string;
using Word = std::vector<Letter>;

struct Transition {
    StateId from;
    Symbol symbol;
    Guard guard;
    StateId to;

    auto operator<=>(const Transition&) const = default;
};

/// A guarded variable automaton.
struct Gva {
    std::string name;
    std::set<Letter> constants;                    // Sigma_A
    std::set<Variable> vars;                       // X
    std::set<StateId> states;
    std::set<StateId> initial;                     // Q0
    std::set<StateId> accepting;                   // F
    std::vector<Transition> transitions;
    std::map<Variable, std::set<StateId>> refresh; // kappa

    /// kappa^-1(q): the variables refreshed in q.
    std::set<Variable> refreshed_at(const StateId& q) const;

    bool has_epsilon_transitions() const;

    auto operator<=>(const Gva&) const = default;
};

/// Letters actually occurring in transition labels and guards.
std::set<Letter> used_letters(const Gva& a);
std::set<Variable> used_variables(const Gva& a);

/// Empty iff all Gva invariants hold; each violation carries its location.
Diagnostics validate_gva(const Gva& a);

struct RegisterRead {
    int reg = 0;
    auto operator<=>(const RegisterRead&) const = default;
};

struct RegisterReassign {
    int reg = 0;  // (p, eps/l, q) with rho(p,q) = l
    auto operator<=>(const RegisterReassign&) const = default;
};

using NfmaLabel = std::variant<RegisterRead, RegisterReassign>;

struct NfmaTransition {
    StateId from;
    NfmaLabel label;
    StateId to;

    auto operator<=>(const NfmaTransition&) const = default;
};

/// A finite-memory automaton with nondeterministic reassignment.
struct Nfma {
    std::string name;
    int registers = 0;                 // k
    std::set<StateId> states;
    StateId initial;
    std::set<StateId> accepting;
    std::map<int, Letter> init_assign; // u, partial
    std::vector<NfmaTransition> transitions;

    auto operator<=>(const Nfma&) const = default;
};

Diagnostics validate_nfma(const Nfma& n);

struct FaTransition {
    StateId from;
    Letter letter;
    StateId to;

    auto operator<=>(const FaTransition&) const = default;
};

/// A classical finite automaton over an explicit finite letter set. Against
/// the infinite alphabet it rejects any word using an undeclared letter.
struct Fa {
    std::string name;
    std::set<Letter> letters;
    std::set<StateId> states;
    std::set<StateId> initial;
    std::set<StateId> accepting;
    std::vector<FaTransition> transitions;

    bool is_deterministic() const;
    bool is_complete() const;

    auto operator<=>(const Fa&) const = default;
};

Diagnostics validate_fa(const Fa& f);

/// Classical run of an FA on a word.
bool fa_accepts(const Fa& f, const Word& w);

} // namespace gva

#endif
