#include "gva/closure.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace gva {

namespace {

std::string unique_name(const std::set<StateId>& taken, const std::string& base) {
    if (!taken.count(base)) return base;
    for (std::size_t k = 2;; ++k) {
        std::string candidate = base + "." + std::to_string(k);
        if (!taken.count(candidate)) return candidate;
    }
}

/// Dotted names for state pairs, deduplicated: inputs whose names already
/// contain dots must not make distinct pairs collide.
std::map<std::pair<StateId, StateId>, StateId> name_state_pairs(const std::set<StateId>& qs1,
                                                                const std::set<StateId>& qs2) {
    std::map<std::pair<StateId, StateId>, StateId> names;
    std::set<StateId> taken;
    for (const auto& q1 : qs1)
        for (const auto& q2 : qs2) {
            StateId name = unique_name(taken, q1 + "." + q2);
            taken.insert(name);
            names.emplace(std::make_pair(q1, q2), name);
        }
    return names;
}

Guard rename_guard(const Guard& g, const std::map<Variable, Variable>& renaming) {
    auto rename_term = [&](const Term& t) -> Term {
        if (const auto* v = std::get_if<Variable>(&t)) {
            auto it = renaming.find(*v);
            if (it != renaming.end()) return it->second;
        }
        return t;
    };
    Guard out;
    out.atoms.reserve(g.atoms.size());
    for (const auto& atom : g.atoms) {
        if (atom.kind == AtomKind::True)
            out.atoms.push_back(atom);
        else
            out.atoms.push_back(GuardAtom{atom.kind, rename_term(atom.lhs), rename_term(atom.rhs)});
    }
    return out;
}

Gva rename_states(const Gva& a, const std::string& suffix) {
    auto rn = [&](const StateId& q) { return q + suffix; };
    Gva out = a;
    out.states.clear();
    out.initial.clear();
    out.accepting.clear();
    out.transitions.clear();
    out.refresh.clear();
    for (const auto& q : a.states) out.states.insert(rn(q));
    for (const auto& q : a.initial) out.initial.insert(rn(q));
    for (const auto& q : a.accepting) out.accepting.insert(rn(q));
    for (const auto& t : a.transitions)
        out.transitions.push_back(Transition{rn(t.from), t.symbol, t.guard, rn(t.to)});
    for (const auto& [x, qs] : a.refresh) {
        std::set<StateId> renamed;
        for (const auto& q : qs) renamed.insert(rn(q));
        out.refresh.emplace(x, std::move(renamed));
    }
    return out;
}

} // namespace

RenamingPlan RenamingPlan::make_disjoint(const std::vector<const Gva*>& automata) {
    RenamingPlan plan;
    plan.renamings.resize(automata.size());
    std::set<std::string> used;
    for (std::size_t i = 0; i < automata.size(); ++i) {
        for (const auto& x : automata[i]->vars) {
            std::string name = x.name;
            if (used.count(name)) {
                std::string base = x.name + "." + std::to_string(i + 1);
                name = base;
                for (std::size_t k = 2; used.count(name); ++k)
                    name = base + "." + std::to_string(k);
            }
            used.insert(name);
            plan.renamings[i].emplace(x, Variable{name});
        }
    }
    return plan;
}

Gva rename_variables(const Gva& a, const std::map<Variable, Variable>& renaming) {
    auto rn = [&](const Variable& v) {
        auto it = renaming.find(v);
        if (it == renaming.end())
            throw PreconditionError("renaming does not cover variable '" + v.name + "'");
        return it->second;
    };

    Gva out = a;
    out.vars.clear();
    out.transitions.clear();
    out.refresh.clear();
    for (const auto& x : a.vars) out.vars.insert(rn(x));
    for (const auto& t : a.transitions) {
        Symbol sym = t.symbol;
        if (const auto* v = std::get_if<Variable>(&sym)) sym = rn(*v);
        out.transitions.push_back(Transition{t.from, sym, rename_guard(t.guard, renaming), t.to});
    }
    for (const auto& [x, qs] : a.refresh) out.refresh.emplace(rn(x), qs);
    return out;
}

std::pair<Gva, Gva> rename_apart(const Gva& a, const Gva& b) {
    RenamingPlan plan = RenamingPlan::make_disjoint({&a, &b});
    return {rename_variables(a, plan.renamings[0]), rename_variables(b, plan.renamings[1])};
}

Gva gva_union(const Gva& a, const Gva& b) {
    auto [ra, rb] = rename_apart(a, b);
    Gva left = rename_states(ra, ".1");
    Gva right = rename_states(rb, ".2");

    Gva out;
    out.name = a.name + ".or." + b.name;
    out.constants = left.constants;
    out.constants.insert(right.constants.begin(), right.constants.end());
    out.vars = left.vars;
    out.vars.insert(right.vars.begin(), right.vars.end());
    out.states = left.states;
    out.states.insert(right.states.begin(), right.states.end());
    out.initial = left.initial;
    out.initial.insert(right.initial.begin(), right.initial.end());
    out.accepting = left.accepting;
    out.accepting.insert(right.accepting.begin(), right.accepting.end());
    out.transitions = left.transitions;
    out.transitions.insert(out.transitions.end(), right.transitions.begin(),
                           right.transitions.end());
    out.refresh = left.refresh;
    out.refresh.insert(right.refresh.begin(), right.refresh.end());
    return out;
}

Gva gva_intersection(const Gva& a, const Gva& b) {
    auto [left, right] = rename_apart(a, b);

    Gva out;
    out.name = a.name + ".and." + b.name;
    out.constants = left.constants;
    out.constants.insert(right.constants.begin(), right.constants.end());
    out.vars = left.vars;
    out.vars.insert(right.vars.begin(), right.vars.end());

    const auto pair_names = name_state_pairs(left.states, right.states);
    auto pair_name = [&](const StateId& q1, const StateId& q2) {
        return pair_names.at({q1, q2});
    };

    for (const auto& [pair, name] : pair_names) out.states.insert(name);
    for (const auto& q1 : left.initial)
        for (const auto& q2 : right.initial)
            out.initial.insert(pair_name(q1, q2));
    for (const auto& q1 : left.accepting)
        for (const auto& q2 : right.accepting)
            out.accepting.insert(pair_name(q1, q2));

    // Paired letter/variable transitions.
    for (const auto& t1 : left.transitions) {
        if (is_epsilon(t1.symbol)) continue;
        for (const auto& t2 : right.transitions) {
            if (is_epsilon(t2.symbol)) continue;
            Guard g;
            g.atoms.push_back(GuardAtom::eq(symbol_to_term(t1.symbol), symbol_to_term(t2.symbol)));
            g.atoms.insert(g.atoms.end(), t1.guard.atoms.begin(), t1.guard.atoms.end());
            g.atoms.insert(g.atoms.end(), t2.guard.atoms.begin(), t2.guard.atoms.end());
            out.transitions.push_back(Transition{pair_name(t1.from, t2.from), t1.symbol,
                                                 std::move(g), pair_name(t1.to, t2.to)});
        }
    }
    // Epsilon transitions advance one side alone.
    for (const auto& t1 : left.transitions) {
        if (!is_epsilon(t1.symbol)) continue;
        for (const auto& q2 : right.states)
            out.transitions.push_back(
                Transition{pair_name(t1.from, q2), t1.symbol, t1.guard, pair_name(t1.to, q2)});
    }
    for (const auto& t2 : right.transitions) {
        if (!is_epsilon(t2.symbol)) continue;
        for (const auto& q1 : left.states)
            out.transitions.push_back(
                Transition{pair_name(q1, t2.from), t2.symbol, t2.guard, pair_name(q1, t2.to)});
    }

    for (const auto& [x, qs] : left.refresh) {
        std::set<StateId> states;
        for (const auto& q1 : qs)
            for (const auto& q2 : right.states)
                states.insert(pair_name(q1, q2));
        if (!states.empty()) out.refresh.emplace(x, std::move(states));
    }
    for (const auto& [x, qs] : right.refresh) {
        std::set<StateId> states;
        for (const auto& q1 : left.states)
            for (const auto& q2 : qs)
                states.insert(pair_name(q1, q2));
        if (!states.empty()) out.refresh.emplace(x, std::move(states));
    }
    return out;
}

Gva gva_concat(const Gva& a, const Gva& b) {
    auto [ra, rb] = rename_apart(a, b);
    Gva left = rename_states(ra, ".1");
    Gva right = rename_states(rb, ".2");

    Gva out;
    out.name = a.name + ".cat." + b.name;
    out.constants = left.constants;
    out.constants.insert(right.constants.begin(), right.constants.end());
    out.vars = left.vars;
    out.vars.insert(right.vars.begin(), right.vars.end());
    out.states = left.states;
    out.states.insert(right.states.begin(), right.states.end());
    out.initial = left.initial;
    out.accepting = right.accepting;
    out.transitions = left.transitions;
    out.transitions.insert(out.transitions.end(), right.transitions.begin(),
                           right.transitions.end());
    for (const auto& f : left.accepting)
        for (const auto& q0 : right.initial)
            out.transitions.push_back(Transition{f, Epsilon{}, Guard::truth(), q0});
    out.refresh = left.refresh;
    out.refresh.insert(right.refresh.begin(), right.refresh.end());
    return out;
}

Gva gva_star(const Gva& a) {
    Gva out = a;
    out.name = a.name + ".star";
    StateId fresh = unique_name(out.states, "star");
    out.states.insert(fresh);
    out.initial = {fresh};
    out.accepting.insert(fresh);
    for (const auto& q0 : a.initial)
        out.transitions.push_back(Transition{fresh, Epsilon{}, Guard::truth(), q0});

    // Loop back through a state refreshing every variable: bindings must not
    // leak from one iteration into the next.
    StateId reset = unique_name(out.states, fresh + ".r");
    out.states.insert(reset);
    for (const auto& x : out.vars) out.refresh[x].insert(reset);
    for (const auto& f : a.accepting)
        out.transitions.push_back(Transition{f, Epsilon{}, Guard::truth(), reset});
    for (const auto& q0 : a.initial)
        out.transitions.push_back(Transition{reset, Epsilon{}, Guard::truth(), q0});
    return out;
}

Gva complement_fa(const Fa& f) {
    if (!f.is_deterministic())
        throw NondeterministicFaError("complement_fa requires a deterministic FA");

    Gva out;
    out.name = "co." + f.name;
    out.constants = f.letters;
    out.states = f.states;
    out.initial = f.initial;
    for (const auto& q : f.states)
        if (!f.accepting.count(q)) out.accepting.insert(q);

    for (const auto& t : f.transitions)
        out.transitions.push_back(Transition{t.from, t.letter, Guard::truth(), t.to});

    std::size_t i = 0;
    for (const auto& q : f.states) {
        ++i;
        // skip names the FA already uses as letters
        Variable x{"x" + std::to_string(i)};
        while (f.letters.count(Letter{x.name})) x.name += "x";
        out.vars.insert(x);

        StateId diverge = unique_name(out.states, q + ".d1");
        out.states.insert(diverge);
        StateId sink = unique_name(out.states, q + ".d2");
        out.states.insert(sink);
        out.accepting.insert(diverge);
        out.accepting.insert(sink);

        // Any letter without an outgoing transition here leaves L(f) forever.
        Guard guard;
        std::set<Letter> enabled;
        for (const auto& t : f.transitions)
            if (t.from == q) enabled.insert(t.letter);
        for (const auto& l : enabled) guard.atoms.push_back(GuardAtom::neq(x, l));

        out.transitions.push_back(Transition{q, x, std::move(guard), diverge});
        out.transitions.push_back(Transition{diverge, Epsilon{}, Guard::truth(), sink});
        out.transitions.push_back(Transition{sink, x, Guard::truth(), sink});
        out.refresh[x] = {sink};
    }
    return out;
}

Gva async_product(const std::vector<Gva>& components, std::vector<std::size_t>* advancing) {
    if (components.empty())
        throw PreconditionError("async_product needs at least one component");

    std::vector<const Gva*> ptrs;
    for (const auto& c : components) ptrs.push_back(&c);
    RenamingPlan plan = RenamingPlan::make_disjoint(ptrs);
    std::vector<Gva> comps;
    comps.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i)
        comps.push_back(rename_variables(components[i], plan.renamings[i]));

    Gva out;
    out.name = "product";
    for (const auto& c : comps) {
        out.constants.insert(c.constants.begin(), c.constants.end());
        out.vars.insert(c.vars.begin(), c.vars.end());
    }

    // All state tuples, in lexicographic coordinate order.
    std::vector<std::vector<StateId>> tuples{{}};
    for (const auto& c : comps) {
        std::vector<std::vector<StateId>> next;
        for (const auto& prefix : tuples)
            for (const auto& q : c.states) {
                auto t = prefix;
                t.push_back(q);
                next.push_back(std::move(t));
            }
        tuples = std::move(next);
    }

    std::map<std::vector<StateId>, StateId> tuple_names;
    {
        std::set<StateId> taken;
        for (const auto& t : tuples) {
            std::string base;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) base += ".";
                base += t[i];
            }
            StateId name = unique_name(taken, base);
            taken.insert(name);
            tuple_names.emplace(t, name);
        }
    }
    auto tuple_name = [&](const std::vector<StateId>& t) { return tuple_names.at(t); };

    for (const auto& t : tuples) out.states.insert(tuple_name(t));

    auto all_match = [&](const std::vector<StateId>& t,
                         const std::function<bool(std::size_t, const StateId&)>& pred) {
        for (std::size_t i = 0; i < t.size(); ++i)
            if (!pred(i, t[i])) return false;
        return true;
    };
    for (const auto& t : tuples) {
        if (all_match(t, [&](std::size_t i, const StateId& q) { return comps[i].initial.count(q) > 0; }))
            out.initial.insert(tuple_name(t));
        if (all_match(t, [&](std::size_t i, const StateId& q) { return comps[i].accepting.count(q) > 0; }))
            out.accepting.insert(tuple_name(t));
    }

    if (advancing) advancing->clear();
    for (const auto& t : tuples) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            for (const auto& ct : comps[i].transitions) {
                if (ct.from != t[i]) continue;
                auto target = t;
                target[i] = ct.to;
                out.transitions.push_back(
                    Transition{tuple_name(t), ct.symbol, ct.guard, tuple_name(target)});
                if (advancing) advancing->push_back(i);
            }
        }
    }

    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (const auto& [x, qs] : comps[i].refresh) {
            std::set<StateId> states;
            for (const auto& t : tuples)
                if (qs.count(t[i])) states.insert(tuple_name(t));
            if (!states.empty()) out.refresh.emplace(x, std::move(states));
        }
    }
    return out;
}

Gva nfma_to_gva(const Nfma& n) {
    Gva out;
    out.name = n.name;
    out.states = n.states;
    out.accepting = n.accepting;

    auto reg_var = [](int r) { return Variable{"x" + std::to_string(r)}; };
    for (int r = 1; r <= n.registers; ++r) out.vars.insert(reg_var(r));

    if (n.init_assign.empty()) {
        out.initial = {n.initial};
    } else {
        StateId start = unique_name(out.states, "start");
        out.states.insert(start);
        out.initial = {start};
        Guard bind;
        for (const auto& [r, l] : n.init_assign) {
            bind.atoms.push_back(GuardAtom::eq(reg_var(r), l));
            out.constants.insert(l);
        }
        out.transitions.push_back(Transition{start, Epsilon{}, std::move(bind), n.initial});
    }

    for (std::size_t ti = 0; ti < n.transitions.size(); ++ti) {
        const auto& t = n.transitions[ti];
        if (const auto* read = std::get_if<RegisterRead>(&t.label)) {
            out.transitions.push_back(
                Transition{t.from, reg_var(read->reg), Guard::truth(), t.to});
        } else {
            int l = std::get<RegisterReassign>(t.label).reg;
            StateId mid = unique_name(out.states, t.from + ".r" + std::to_string(ti));
            out.states.insert(mid);
            out.transitions.push_back(Transition{t.from, Epsilon{}, Guard::truth(), mid});
            Guard distinct;
            for (int r = 1; r <= n.registers; ++r)
                if (r != l) distinct.atoms.push_back(GuardAtom::neq(reg_var(l), reg_var(r)));
            out.transitions.push_back(Transition{mid, Epsilon{}, std::move(distinct), t.to});
            out.refresh[reg_var(l)].insert(mid);
        }
    }
    return out;
}

Gva gen_ln(std::size_t n) {
    if (n < 1) throw PreconditionError("gen_ln needs n >= 1");

    Gva out;
    out.name = "ln" + std::to_string(n);
    Letter hash{"#"};
    out.constants = {hash};

    auto state = [](std::size_t i) { return "q" + std::to_string(i); };
    auto xa = [](std::size_t i) { return Variable{"xa" + std::to_string(i)}; };
    auto xb = [](std::size_t i) { return Variable{"xb" + std::to_string(i)}; };

    for (std::size_t i = 0; i <= 4 * n + 1; ++i) out.states.insert(state(i));
    for (std::size_t i = 1; i <= n; ++i) {
        out.vars.insert(xa(i));
        out.vars.insert(xb(i));
    }
    out.initial = {state(0)};
    out.accepting = {state(4 * n + 1)};

    // Bind the first block, then the second with membership guards.
    for (std::size_t i = 1; i <= n; ++i)
        out.transitions.push_back(Transition{state(i - 1), xa(i), Guard::truth(), state(i)});
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            out.transitions.push_back(Transition{
                state(n + i - 1), xb(i), Guard{{GuardAtom::eq(xb(i), xa(j))}}, state(n + i)});
    out.transitions.push_back(Transition{state(2 * n), hash, Guard::truth(), state(2 * n + 1)});
    // Mirror readback, no refreshment.
    std::size_t at = 2 * n + 1;
    for (std::size_t i = n; i >= 1; --i, ++at)
        out.transitions.push_back(Transition{state(at), xb(i), Guard::truth(), state(at + 1)});
    for (std::size_t i = n; i >= 1; --i, ++at)
        out.transitions.push_back(Transition{state(at), xa(i), Guard::truth(), state(at + 1)});
    return out;
}

Gva fa_to_gva(const Fa& f) {
    Gva out;
    out.name = f.name;
    out.constants = f.letters;
    out.states = f.states;
    out.initial = f.initial;
    out.accepting = f.accepting;
    for (const auto& t : f.transitions)
        out.transitions.push_back(Transition{t.from, t.letter, Guard::truth(), t.to});
    return out;
}

Fa fa_determinize(const Fa& f) {
    Fa out;
    out.name = "det." + f.name;
    out.letters = f.letters;

    auto subset_name = [](const std::set<StateId>& qs) {
        if (qs.empty()) return std::string("none");
        std::string name;
        for (const auto& q : qs) {
            if (!name.empty()) name += ".";
            name += q;
        }
        return name;
    };

    std::set<StateId> start(f.initial.begin(), f.initial.end());
    std::map<std::set<StateId>, StateId> names;
    std::deque<std::set<StateId>> queue;

    auto intern = [&](const std::set<StateId>& qs) {
        auto it = names.find(qs);
        if (it != names.end()) return it->second;
        StateId name = unique_name(out.states, subset_name(qs));
        names.emplace(qs, name);
        out.states.insert(name);
        if (std::any_of(qs.begin(), qs.end(),
                        [&](const StateId& q) { return f.accepting.count(q) > 0; }))
            out.accepting.insert(name);
        queue.push_back(qs);
        return name;
    };

    out.initial = {intern(start)};
    while (!queue.empty()) {
        std::set<StateId> qs = queue.front();
        queue.pop_front();
        StateId from = names.at(qs);
        for (const auto& l : f.letters) {
            std::set<StateId> target;
            for (const auto& t : f.transitions)
                if (t.letter == l && qs.count(t.from)) target.insert(t.to);
            if (target.empty()) continue;
            StateId to = intern(target);
            out.transitions.push_back(FaTransition{from, l, to});
        }
    }
    return out;
}

} // namespace gva
