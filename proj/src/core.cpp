#include "gva/core.hpp"

#include <algorithm>

namespace gva {

bool is_epsilon(const Symbol& s) {
    return std::holds_alternative<Epsilon>(s);
}

std::string symbol_name(const Symbol& s) {
    if (const auto* l = std::get_if<Letter>(&s)) return l->name;
    if (const auto* v = std::get_if<Variable>(&s)) return v->name;
    return "eps";
}

Term symbol_to_term(const Symbol& s) {
    if (const auto* l = std::get_if<Letter>(&s)) return *l;
    if (const auto* v = std::get_if<Variable>(&s)) return *v;
    throw Error("epsilon cannot be used as a guard operand");
}

Symbol term_to_symbol(const Term& t) {
    if (const auto* l = std::get_if<Letter>(&t)) return *l;
    return std::get<Variable>(t);
}

const Letter& Substitution::at(const Variable& x) const {
    auto it = bindings.find(x);
    if (it == bindings.end())
        throw UnboundVariableError("variable '" + x.name + "' is not bound");
    return it->second;
}

std::optional<Letter> Substitution::lookup(const Variable& x) const {
    auto it = bindings.find(x);
    if (it == bindings.end()) return std::nullopt;
    return it->second;
}

std::set<Variable> Substitution::domain() const {
    std::set<Variable> out;
    for (const auto& [x, _] : bindings) out.insert(x);
    return out;
}

std::set<Letter> Substitution::codomain() const {
    std::set<Letter> out;
    for (const auto& [_, a] : bindings) out.insert(a);
    return out;
}

Symbol Substitution::apply(const Symbol& s) const {
    if (const auto* v = std::get_if<Variable>(&s)) {
        auto it = bindings.find(*v);
        if (it != bindings.end()) return it->second;
    }
    return s;
}

Term Substitution::apply(const Term& t) const {
    if (const auto* v = std::get_if<Variable>(&t)) {
        auto it = bindings.find(*v);
        if (it != bindings.end()) return it->second;
    }
    return t;
}

Substitution subst_disjoint_union(const Substitution& s1, const Substitution& s2) {
    Substitution out = s1;
    for (const auto& [x, a] : s2.bindings) {
        auto [it, inserted] = out.bindings.emplace(x, a);
        if (!inserted)
            throw DomainOverlapError("domains overlap on variable '" + x.name + "'");
    }
    return out;
}

Substitution subst_restrict(const Substitution& s, const std::set<Variable>& keep) {
    Substitution out;
    for (const auto& [x, a] : s.bindings)
        if (keep.count(x)) out.bindings.emplace(x, a);
    return out;
}

Substitution subst_drop(const Substitution& s, const std::set<Variable>& drop) {
    Substitution out;
    for (const auto& [x, a] : s.bindings)
        if (!drop.count(x)) out.bindings.emplace(x, a);
    return out;
}

bool Guard::is_true() const {
    return std::all_of(atoms.begin(), atoms.end(),
                       [](const GuardAtom& a) { return a.kind == AtomKind::True; });
}

namespace {

void collect_term_vars(const Term& t, std::set<Variable>& out) {
    if (const auto* v = std::get_if<Variable>(&t)) out.insert(*v);
}

} // namespace

std::set<Variable> guard_free_vars(const Guard& g) {
    std::set<Variable> out;
    for (const auto& atom : g.atoms) {
        if (atom.kind == AtomKind::True) continue;
        collect_term_vars(atom.lhs, out);
        collect_term_vars(atom.rhs, out);
    }
    return out;
}

std::set<Variable> guard_free_vars_under(const Substitution& sigma, const Guard& g) {
    return guard_free_vars(guard_apply(sigma, g));
}

std::set<Variable> symbol_free_vars_under(const Substitution& sigma, const Symbol& s) {
    std::set<Variable> out;
    if (const auto* v = std::get_if<Variable>(&std::as_const(s)))
        if (!sigma.binds(*v)) out.insert(*v);
    return out;
}

Guard guard_apply(const Substitution& sigma, const Guard& g) {
    Guard out;
    out.atoms.reserve(g.atoms.size());
    for (const auto& atom : g.atoms) {
        if (atom.kind == AtomKind::True) {
            out.atoms.push_back(atom);
        } else {
            out.atoms.push_back(GuardAtom{atom.kind, sigma.apply(atom.lhs), sigma.apply(atom.rhs)});
        }
    }
    return out;
}

namespace {

Letter ground_term(const Substitution& sigma, const Term& t) {
    if (const auto* l = std::get_if<Letter>(&t)) return *l;
    return sigma.at(std::get<Variable>(t));
}

} // namespace

bool guard_satisfies(const Substitution& sigma, const Guard& g) {
    for (const auto& atom : g.atoms) {
        switch (atom.kind) {
        case AtomKind::True:
            break;
        case AtomKind::Eq:
            if (ground_term(sigma, atom.lhs) != ground_term(sigma, atom.rhs)) return false;
            break;
        case AtomKind::Neq:
            if (ground_term(sigma, atom.lhs) == ground_term(sigma, atom.rhs)) return false;
            break;
        }
    }
    return true;
}

std::optional<Substitution> guard_satisfiable_ext(const Substitution& sigma,
                                                  const Guard& g,
                                                  const std::set<Letter>& pool) {
    std::vector<Variable> missing;
    for (const auto& x : guard_free_vars(g))
        if (!sigma.binds(x)) missing.push_back(x);

    std::vector<Letter> letters(pool.begin(), pool.end());
    if (missing.empty())
        return guard_satisfies(sigma, g) ? std::optional<Substitution>(Substitution{})
                                         : std::nullopt;
    if (letters.empty()) return std::nullopt;

    // Odometer over pool^missing, smallest assignment first.
    std::vector<std::size_t> idx(missing.size(), 0);
    while (true) {
        Substitution gamma;
        for (std::size_t i = 0; i < missing.size(); ++i)
            gamma.bindings.emplace(missing[i], letters[idx[i]]);
        Substitution whole = subst_disjoint_union(sigma, gamma);
        if (guard_satisfies(whole, g)) return gamma;

        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < letters.size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) return std::nullopt;
    }
}

std::vector<Guard> normalize_disjunction(const GuardDisjunction& disjuncts) {
    std::set<Variable> all_vars;
    for (const auto& g : disjuncts) {
        auto vs = guard_free_vars(g);
        all_vars.insert(vs.begin(), vs.end());
    }

    std::vector<Guard> out;
    out.reserve(disjuncts.size());
    for (const auto& g : disjuncts) {
        Guard padded = g;
        auto own = guard_free_vars(g);
        for (const auto& x : all_vars)
            if (!own.count(x)) padded.atoms.push_back(GuardAtom::eq(x, x));
        out.push_back(std::move(padded));
    }
    return out;
}

std::string to_string(const Term& t) {
    if (const auto* l = std::get_if<Letter>(&t)) return l->name;
    return std::get<Variable>(t).name;
}

std::string to_string(const Symbol& s) {
    return symbol_name(s);
}

std::string to_string(const GuardAtom& a) {
    switch (a.kind) {
    case AtomKind::True: return "true";
    case AtomKind::Eq: return to_string(a.lhs) + " == " + to_string(a.rhs);
    case AtomKind::Neq: return to_string(a.lhs) + " != " + to_string(a.rhs);
    }
    return "true";
}

std::string to_string(const Guard& g) {
    if (g.atoms.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
        if (i) out += " && ";
        out += to_string(g.atoms[i]);
    }
    return out;
}

std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, a] : s.bindings) {
        if (!first) out += ", ";
        first = false;
        out += x.name + " -> " + a.name;
    }
    out += "}";
    return out;
}

} // namespace gva
