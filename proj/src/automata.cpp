#include "gva/automata.hpp"

#include <algorithm>

namespace gva {

std::set<Variable> Gva::refreshed_at(const StateId& q) const {
    std::set<Variable> out;
    for (const auto& [x, qs] : refresh)
        if (qs.count(q)) out.insert(x);
    return out;
}

bool Gva::has_epsilon_transitions() const {
    return std::any_of(transitions.begin(), transitions.end(),
                       [](const Transition& t) { return is_epsilon(t.symbol); });
}

std::set<Letter> used_letters(const Gva& a) {
    std::set<Letter> out;
    for (const auto& t : a.transitions) {
        if (const auto* l = std::get_if<Letter>(&t.symbol)) out.insert(*l);
        for (const auto& atom : t.guard.atoms) {
            if (atom.kind == AtomKind::True) continue;
            if (const auto* l = std::get_if<Letter>(&atom.lhs)) out.insert(*l);
            if (const auto* l = std::get_if<Letter>(&atom.rhs)) out.insert(*l);
        }
    }
    return out;
}

std::set<Variable> used_variables(const Gva& a) {
    std::set<Variable> out;
    for (const auto& t : a.transitions) {
        if (const auto* v = std::get_if<Variable>(&t.symbol)) out.insert(*v);
        auto gv = guard_free_vars(t.guard);
        out.insert(gv.begin(), gv.end());
    }
    for (const auto& [x, _] : a.refresh) out.insert(x);
    return out;
}

namespace {

void check_name_nonempty(const std::string& name, const std::string& what,
                         const std::string& where, Diagnostics& out) {
    if (name.empty())
        out.push_back({"EmptyName", what + " with empty name", where});
}

} // namespace

Diagnostics validate_gva(const Gva& a) {
    Diagnostics out;

    for (const auto& l : a.constants) check_name_nonempty(l.name, "letter", "letters", out);
    for (const auto& v : a.vars) check_name_nonempty(v.name, "variable", "vars", out);

    for (const auto& q : a.initial)
        if (!a.states.count(q))
            out.push_back({"UnknownState", "initial state '" + q + "' not declared", "states"});
    for (const auto& q : a.accepting)
        if (!a.states.count(q))
            out.push_back({"UnknownState", "accepting state '" + q + "' not declared", "states"});

    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        const auto& t = a.transitions[i];
        const std::string where = "transition " + std::to_string(i);
        if (!a.states.count(t.from))
            out.push_back({"UnknownState", "source state '" + t.from + "' not declared", where});
        if (!a.states.count(t.to))
            out.push_back({"UnknownState", "target state '" + t.to + "' not declared", where});

        if (const auto* l = std::get_if<Letter>(&t.symbol)) {
            if (!a.constants.count(*l))
                out.push_back({"UndeclaredLetter", "letter '" + l->name + "' not declared", where});
        } else if (const auto* v = std::get_if<Variable>(&t.symbol)) {
            if (!a.vars.count(*v))
                out.push_back({"UndeclaredVariable", "variable '" + v->name + "' not declared", where});
        }

        for (const auto& atom : t.guard.atoms) {
            if (atom.kind == AtomKind::True) continue;
            for (const auto* term : {&atom.lhs, &atom.rhs}) {
                if (const auto* l = std::get_if<Letter>(term)) {
                    if (!a.constants.count(*l))
                        out.push_back({"UndeclaredLetter",
                                       "letter '" + l->name + "' not declared", where});
                } else if (const auto* v = std::get_if<Variable>(term)) {
                    if (!a.vars.count(*v))
                        out.push_back({"UndeclaredVariable",
                                       "variable '" + v->name + "' not declared", where});
                }
            }
        }
    }

    for (const auto& [x, qs] : a.refresh) {
        if (!a.vars.count(x))
            out.push_back({"UndeclaredVariable", "refreshed variable '" + x.name + "' not declared",
                           "refresh"});
        for (const auto& q : qs)
            if (!a.states.count(q))
                out.push_back({"UnknownState", "refresh state '" + q + "' not declared", "refresh"});
    }

    return out;
}

Diagnostics validate_nfma(const Nfma& n) {
    Diagnostics out;
    if (n.registers < 1)
        out.push_back({"BadRegisterCount", "register count must be positive", "registers"});
    if (!n.states.count(n.initial))
        out.push_back({"UnknownState", "initial state '" + n.initial + "' not declared", "states"});
    for (const auto& q : n.accepting)
        if (!n.states.count(q))
            out.push_back({"UnknownState", "accepting state '" + q + "' not declared", "states"});
    for (const auto& [r, l] : n.init_assign) {
        if (r < 1 || r > n.registers)
            out.push_back({"BadRegisterIndex",
                           "initial assignment of register " + std::to_string(r) + " out of range",
                           "init"});
        check_name_nonempty(l.name, "letter", "init", out);
    }
    for (std::size_t i = 0; i < n.transitions.size(); ++i) {
        const auto& t = n.transitions[i];
        const std::string where = "transition " + std::to_string(i);
        if (!n.states.count(t.from))
            out.push_back({"UnknownState", "source state '" + t.from + "' not declared", where});
        if (!n.states.count(t.to))
            out.push_back({"UnknownState", "target state '" + t.to + "' not declared", where});
        int reg = std::holds_alternative<RegisterRead>(t.label)
                      ? std::get<RegisterRead>(t.label).reg
                      : std::get<RegisterReassign>(t.label).reg;
        if (reg < 1 || reg > n.registers)
            out.push_back({"BadRegisterIndex", "register " + std::to_string(reg) + " out of range",
                           where});
    }
    return out;
}

bool Fa::is_deterministic() const {
    if (initial.size() != 1) return false;
    std::set<std::pair<StateId, Letter>> seen;
    for (const auto& t : transitions)
        if (!seen.insert({t.from, t.letter}).second) return false;
    return true;
}

bool Fa::is_complete() const {
    std::set<std::pair<StateId, Letter>> seen;
    for (const auto& t : transitions) seen.insert({t.from, t.letter});
    for (const auto& q : states)
        for (const auto& l : letters)
            if (!seen.count({q, l})) return false;
    return true;
}

Diagnostics validate_fa(const Fa& f) {
    Diagnostics out;
    for (const auto& q : f.initial)
        if (!f.states.count(q))
            out.push_back({"UnknownState", "initial state '" + q + "' not declared", "states"});
    for (const auto& q : f.accepting)
        if (!f.states.count(q))
            out.push_back({"UnknownState", "accepting state '" + q + "' not declared", "states"});
    for (std::size_t i = 0; i < f.transitions.size(); ++i) {
        const auto& t = f.transitions[i];
        const std::string where = "transition " + std::to_string(i);
        if (!f.states.count(t.from))
            out.push_back({"UnknownState", "source state '" + t.from + "' not declared", where});
        if (!f.states.count(t.to))
            out.push_back({"UnknownState", "target state '" + t.to + "' not declared", where});
        if (!f.letters.count(t.letter))
            out.push_back({"UndeclaredLetter", "letter '" + t.letter.name + "' not declared", where});
    }
    return out;
}

bool fa_accepts(const Fa& f, const Word& w) {
    for (const auto& l : w)
        if (!f.letters.count(l)) return false;

    std::set<StateId> current(f.initial.begin(), f.initial.end());
    for (const auto& l : w) {
        std::set<StateId> next;
        for (const auto& t : f.transitions)
            if (t.letter == l && current.count(t.from)) next.insert(t.to);
        current = std::move(next);
        if (current.empty()) return false;
    }
    return std::any_of(current.begin(), current.end(),
                       [&](const StateId& q) { return f.accepting.count(q) > 0; });
}

} // namespace gva
