#ifndef GVA_CORE_HPP
#define GVA_CORE_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gva {

/// A letter of the (infinite) alphabet. Any nonempty token is a letter;
/// there is no closed-world set of letters.
struct Letter {
    std::string name;

    auto operator<=>(const Letter&) const = default;
};

/// A variable. Variables live in a namespace distinct from letters.
struct Variable {
    std::string name;

    auto operator<=>(const Variable&) const = default;
};

struct Epsilon {
    auto operator<=>(const Epsilon&) const = default;
};

/// Transition label: a letter, a variable, or epsilon.
using Symbol = std::variant<Epsilon, Letter, Variable>;

/// Guard operand: a letter or a variable (never epsilon).
using Term = std::variant<Letter, Variable>;

bool is_epsilon(const Symbol& s);
std::string symbol_name(const Symbol& s);
Term symbol_to_term(const Symbol& s);
Symbol term_to_symbol(const Term& t);

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(const std::string& what) : Error(what) {}
};

class DomainOverlapError : public Error {
public:
    explicit DomainOverlapError(const std::string& what) : Error(what) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// A validation finding. Diagnostics are data, not exceptions.
struct Diagnostic {
    std::string code;     // e.g. "UndeclaredVariable"
    std::string message;
    std::string where;    // location hint, e.g. "transition 3"

    auto operator<=>(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

/// A ground substitution: a finite mapping from variables to letters.
/// Ordered by variable name so iteration and comparison are canonical.
struct Substitution {
    std::map<Variable, Letter> bindings;

    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const Variable, Letter>> init)
        : bindings(init) {}

    bool empty() const { return bindings.empty(); }
    std::size_t size() const { return bindings.size(); }
    bool binds(const Variable& x) const { return bindings.count(x) > 0; }

    const Letter& at(const Variable& x) const;
    std::optional<Letter> lookup(const Variable& x) const;

    std::set<Variable> domain() const;
    std::set<Letter> codomain() const;

    /// Applies the substitution to a symbol: bound variables become their
    /// letter, unbound variables and letters are untouched.
    Symbol apply(const Symbol& s) const;
    Term apply(const Term& t) const;

    auto operator<=>(const Substitution&) const = default;
};

/// sigma1 (+) sigma2; throws DomainOverlapError when the proper domains meet.
Substitution subst_disjoint_union(const Substitution& s1, const Substitution& s2);

/// Bindings limited to keep /\ dom(sigma).
Substitution subst_restrict(const Substitution& s, const std::set<Variable>& keep);

/// Bindings whose variable is NOT in drop.
Substitution subst_drop(const Substitution& s, const std::set<Variable>& drop);

enum class AtomKind { True, Eq, Neq };

/// An atomic guard: true, alpha = beta, or alpha != beta.
struct GuardAtom {
    AtomKind kind = AtomKind::True;
    Term lhs = Letter{""};
    Term rhs = Letter{""};

    static GuardAtom truth() { return GuardAtom{}; }
    static GuardAtom eq(Term l, Term r) { return GuardAtom{AtomKind::Eq, std::move(l), std::move(r)}; }
    static GuardAtom neq(Term l, Term r) { return GuardAtom{AtomKind::Neq, std::move(l), std::move(r)}; }

    auto operator<=>(const GuardAtom&) const = default;
};

/// A conjunction of atomic guards. An empty conjunction is true.
struct Guard {
    std::vector<GuardAtom> atoms;

    Guard() = default;
    explicit Guard(std::vector<GuardAtom> a) : atoms(std::move(a)) {}

    static Guard truth() { return Guard{}; }

    bool is_true() const;

    auto operator<=>(const Guard&) const = default;
};

/// Disjunction of conjunctive guards; accepted on input only and removed
/// by normalize_disjunction before anything else sees it.
using GuardDisjunction = std::vector<Guard>;

/// Free variables of a guard.
std::set<Variable> guard_free_vars(const Guard& g);

/// Free variables of sigma(g), i.e. of the guard after substitution.
std::set<Variable> guard_free_vars_under(const Substitution& sigma, const Guard& g);

/// Free variables of a symbol under sigma ("V" of the run semantics).
std::set<Variable> symbol_free_vars_under(const Substitution& sigma, const Symbol& s);

/// sigma(g): bound variables replaced by their letters.
Guard guard_apply(const Substitution& sigma, const Guard& g);

/// sigma |= g. Every variable of g must be bound by sigma.
bool guard_satisfies(const Substitution& sigma, const Guard& g);

/// sigma |- g: searches for gamma with dom(gamma) = V(g) \ dom(sigma),
/// codom(gamma) within pool, and sigma (+) gamma |= g. The pool is scanned
/// in order, so the result is deterministic.
std::optional<Substitution> guard_satisfiable_ext(const Substitution& sigma,
                                                  const Guard& g,
                                                  const std::set<Letter>& pool);

/// Turns a disjunctive guard into one conjunctive guard per disjunct, each
/// padded with x=x atoms so that every output has the same free-variable set.
std::vector<Guard> normalize_disjunction(const GuardDisjunction& disjuncts);

std::string to_string(const Term& t);
std::string to_string(const Symbol& s);
std::string to_string(const GuardAtom& a);
std::string to_string(const Guard& g);
std::string to_string(const Substitution& s);

} // namespace gva

#endif
