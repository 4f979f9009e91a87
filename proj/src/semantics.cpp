#include "gva/semantics.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace gva {

namespace {

/// Enumerates all total assignments of `vars` into `pool` on top of `base`,
/// invoking `fn` for each. `base` already holds any forced bindings.
void for_each_guess(const std::vector<Variable>& vars, const std::set<Letter>& pool,
                    const Substitution& base,
                    const std::function<void(const Substitution&)>& fn) {
    if (vars.empty()) {
        fn(base);
        return;
    }
    if (pool.empty()) return;
    std::vector<Letter> letters(pool.begin(), pool.end());
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
        Substitution gamma = base;
        for (std::size_t i = 0; i < vars.size(); ++i)
            gamma.bindings.emplace(vars[i], letters[idx[i]]);
        fn(gamma);
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < letters.size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) return;
    }
}

} // namespace

std::vector<std::pair<Configuration, StepWitness>> step(const Gva& a,
                                                        const Configuration& c,
                                                        const std::optional<Letter>& input,
                                                        const std::set<Letter>& pool) {
    if (input && !pool.count(*input))
        throw PreconditionError("input letter '" + input->name + "' is missing from the pool");

    std::vector<std::pair<Configuration, StepWitness>> out;
    const Substitution& sigma = c.subst;

    for (std::size_t ti = 0; ti < a.transitions.size(); ++ti) {
        const Transition& t = a.transitions[ti];
        if (t.from != c.state) continue;
        if (is_epsilon(t.symbol) != !input) continue;

        Substitution forced;
        if (input) {
            Symbol instantiated = sigma.apply(t.symbol);
            if (const auto* l = std::get_if<Letter>(&instantiated)) {
                if (*l != *input) continue;
            } else {
                forced.bindings.emplace(std::get<Variable>(instantiated), *input);
            }
        }

        std::set<Variable> free = guard_free_vars_under(sigma, t.guard);
        for (const auto& [x, _] : forced.bindings) free.erase(x);
        std::vector<Variable> to_guess(free.begin(), free.end());

        const std::set<Variable> refreshed = a.refreshed_at(t.to);
        for_each_guess(to_guess, pool, forced, [&](const Substitution& gamma) {
            Substitution whole = subst_disjoint_union(sigma, gamma);
            if (!guard_satisfies(whole, t.guard)) return;
            Configuration succ{subst_drop(whole, refreshed), t.to};
            out.push_back({succ, StepWitness{ti, gamma, input, succ}});
        });
    }
    return out;
}

EpsClosure eps_closure_traced(const Gva& a, const std::vector<Configuration>& roots,
                              const std::set<Letter>& pool) {
    EpsClosure closure;
    std::set<Configuration> seen;
    std::deque<Configuration> queue;
    for (const auto& c : roots) {
        if (seen.insert(c).second) {
            closure.order.push_back(c);
            queue.push_back(c);
        }
    }
    while (!queue.empty()) {
        Configuration c = queue.front();
        queue.pop_front();
        for (const auto& [succ, wit] : step(a, c, std::nullopt, pool)) {
            if (seen.insert(succ).second) {
                closure.order.push_back(succ);
                closure.parent.emplace(succ, std::make_pair(c, wit));
                queue.push_back(succ);
            }
        }
    }
    return closure;
}

std::set<Configuration> eps_closure(const Gva& a, const std::set<Configuration>& cs,
                                    const std::set<Letter>& pool) {
    EpsClosure closure = eps_closure_traced(a, {cs.begin(), cs.end()}, pool);
    return {closure.order.begin(), closure.order.end()};
}

std::vector<Letter> reserved_fresh_letters(std::size_t count, const std::set<Letter>& avoid) {
    std::vector<Letter> out;
    for (std::size_t i = 1; out.size() < count; ++i) {
        Letter candidate{"#fresh" + std::to_string(i)};
        if (!avoid.count(candidate)) out.push_back(candidate);
    }
    return out;
}

std::set<Letter> membership_pool(const Gva& a, const Word& w) {
    std::set<Letter> pool(w.begin(), w.end());
    pool.insert(a.constants.begin(), a.constants.end());
    for (const auto& fresh : reserved_fresh_letters(a.vars.size(), pool))
        pool.insert(fresh);
    return pool;
}

namespace {

/// Memoized membership search. Keys collapse configurations that are
/// coherent w.r.t. C = letters(w) + constants: letters outside C are renamed
/// to their first-occurrence index over the sorted domain.
class MembershipSearch {
public:
    MembershipSearch(const Gva& a, const Word& w, const std::set<Letter>& pool)
        : a_(a), w_(w), pool_(pool) {
        base_letters_.insert(w.begin(), w.end());
        base_letters_.insert(a.constants.begin(), a.constants.end());
    }

    std::optional<Trace> run() {
        for (const auto& q0 : a_.initial) {
            Configuration start{Substitution{}, q0};
            if (solve(0, start)) {
                Trace trace;
                reconstruct(0, start, trace);
                return trace;
            }
        }
        return std::nullopt;
    }

private:
    std::string canonical_key(std::size_t pos, const Configuration& c) const {
        // Length-prefixed tokens so odd letter names cannot collide with the
        // fresh-class encoding.
        std::string key = std::to_string(pos) + "|" + c.state + "|";
        std::map<Letter, std::size_t> fresh_index;
        for (const auto& [x, l] : c.subst.bindings) {
            key += std::to_string(x.name.size()) + ":" + x.name + "=";
            if (base_letters_.count(l)) {
                key += "L" + std::to_string(l.name.size()) + ":" + l.name;
            } else {
                auto [it, _] = fresh_index.emplace(l, fresh_index.size());
                key += "F" + std::to_string(it->second);
            }
            key += ";";
        }
        return key;
    }

    bool solve(std::size_t pos, const Configuration& c) {
        const std::string key = canonical_key(pos, c);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        bool ok = false;
        EpsClosure closure = eps_closure_traced(a_, {c}, pool_);
        if (pos == w_.size()) {
            ok = std::any_of(closure.order.begin(), closure.order.end(),
                             [&](const Configuration& e) { return a_.accepting.count(e.state) > 0; });
        } else {
            for (const auto& e : closure.order) {
                for (const auto& [succ, wit] : step(a_, e, w_[pos], pool_)) {
                    if (solve(pos + 1, succ)) {
                        ok = true;
                        break;
                    }
                }
                if (ok) break;
            }
        }
        memo_[key] = ok;
        return ok;
    }

    /// Walks the winning verdicts again from an actual configuration and
    /// collects replayable witnesses. A winning verdict for a coherent
    /// sibling transfers to `c`, so the guided walk cannot get stuck.
    void reconstruct(std::size_t pos, const Configuration& c, Trace& trace) {
        EpsClosure closure = eps_closure_traced(a_, {c}, pool_);
        if (pos == w_.size()) {
            for (const auto& e : closure.order) {
                if (a_.accepting.count(e.state)) {
                    append_eps_chain(closure, c, e, trace);
                    return;
                }
            }
            throw Error("internal: reconstructing a losing configuration");
        }
        for (const auto& e : closure.order) {
            for (const auto& [succ, wit] : step(a_, e, w_[pos], pool_)) {
                if (solve(pos + 1, succ)) {
                    append_eps_chain(closure, c, e, trace);
                    trace.push_back(wit);
                    reconstruct(pos + 1, succ, trace);
                    return;
                }
            }
        }
        throw Error("internal: reconstructing a losing configuration");
    }

    static void append_eps_chain(const EpsClosure& closure, const Configuration& from,
                                 const Configuration& to, Trace& trace) {
        std::vector<StepWitness> chain;
        Configuration cur = to;
        while (!(cur == from)) {
            auto it = closure.parent.find(cur);
            if (it == closure.parent.end())
                throw Error("internal: broken epsilon chain in witness reconstruction");
            chain.push_back(it->second.second);
            cur = it->second.first;
        }
        trace.insert(trace.end(), chain.rbegin(), chain.rend());
    }

    const Gva& a_;
    const Word& w_;
    const std::set<Letter>& pool_;
    std::set<Letter> base_letters_;
    std::map<std::string, bool> memo_;
};

} // namespace

std::optional<Trace> membership_over_pool(const Gva& a, const Word& w,
                                          const std::set<Letter>& pool) {
    for (const auto& l : w)
        if (!pool.count(l))
            throw PreconditionError("word letter '" + l.name + "' is missing from the pool");
    MembershipSearch search(a, w, pool);
    return search.run();
}

std::optional<Trace> membership(const Gva& a, const Word& w) {
    return membership_over_pool(a, w, membership_pool(a, w));
}

namespace {

/// Successor enumeration for the brute-force oracle. Written separately from
/// step() on purpose; the enumerator must not share the code path it checks.
std::set<Configuration> oracle_successors(const Gva& a, const Configuration& c,
                                          const std::optional<Letter>& input,
                                          const std::set<Letter>& pool) {
    std::set<Configuration> out;
    for (std::size_t ti = 0; ti < a.transitions.size(); ++ti) {
        const Transition& t = a.transitions[ti];
        if (t.from != c.state) continue;
        if (is_epsilon(t.symbol) != !input) continue;

        // Unbound variables of the instantiated label and guard, with the
        // label variable (if any) pinned to the input letter.
        Substitution base;
        bool dead = false;
        if (input) {
            Symbol inst = c.subst.apply(t.symbol);
            if (const auto* l = std::get_if<Letter>(&inst)) {
                if (*l != *input) dead = true;
            } else {
                base.bindings.emplace(std::get<Variable>(inst), *input);
            }
        }
        if (dead) continue;

        std::vector<Variable> open;
        for (const auto& x : guard_free_vars(guard_apply(c.subst, t.guard)))
            if (!base.binds(x)) open.push_back(x);

        std::vector<Letter> letters(pool.begin(), pool.end());
        std::vector<std::size_t> odo(open.size(), 0);
        while (true) {
            Substitution guess = base;
            for (std::size_t i = 0; i < open.size(); ++i)
                guess.bindings.emplace(open[i], letters[odo[i]]);
            Substitution whole = c.subst;
            for (const auto& [x, l] : guess.bindings) whole.bindings.emplace(x, l);
            if (guard_satisfies(whole, t.guard)) {
                Substitution next = whole;
                for (const auto& x : a.refreshed_at(t.to)) next.bindings.erase(x);
                out.insert(Configuration{next, t.to});
            }
            if (open.empty()) break;
            std::size_t i = 0;
            for (; i < odo.size(); ++i) {
                if (++odo[i] < letters.size()) break;
                odo[i] = 0;
            }
            if (i == odo.size()) break;
        }
    }
    return out;
}

std::set<Configuration> oracle_eps_closure(const Gva& a, std::set<Configuration> cs,
                                           const std::set<Letter>& pool) {
    std::deque<Configuration> queue(cs.begin(), cs.end());
    while (!queue.empty()) {
        Configuration c = queue.front();
        queue.pop_front();
        for (const auto& succ : oracle_successors(a, c, std::nullopt, pool))
            if (cs.insert(succ).second) queue.push_back(succ);
    }
    return cs;
}

} // namespace

std::set<Word> enumerate_language(const Gva& a, const std::set<Letter>& pool,
                                  std::size_t max_len) {
    std::set<Word> accepted;

    std::set<Configuration> start;
    for (const auto& q0 : a.initial) start.insert(Configuration{Substitution{}, q0});
    start = oracle_eps_closure(a, std::move(start), pool);

    std::map<Word, std::set<Configuration>> layer;
    layer.emplace(Word{}, std::move(start));

    for (std::size_t len = 0; len <= max_len; ++len) {
        std::map<Word, std::set<Configuration>> next_layer;
        for (const auto& [word, configs] : layer) {
            if (std::any_of(configs.begin(), configs.end(),
                            [&](const Configuration& c) { return a.accepting.count(c.state) > 0; }))
                accepted.insert(word);

            if (len == max_len) continue;
            for (const auto& l : pool) {
                std::set<Configuration> succs;
                for (const auto& c : configs) {
                    auto more = oracle_successors(a, c, l, pool);
                    succs.insert(more.begin(), more.end());
                }
                if (succs.empty()) continue;
                Word extended = word;
                extended.push_back(l);
                next_layer.emplace(std::move(extended),
                                   oracle_eps_closure(a, std::move(succs), pool));
            }
        }
        layer = std::move(next_layer);
    }
    return accepted;
}

bool accepts_trace(const Gva& a, const Word& w, const Trace& trace) {
    if (trace.empty()) {
        if (!w.empty()) return false;
        return std::any_of(a.initial.begin(), a.initial.end(),
                           [&](const StateId& q) { return a.accepting.count(q) > 0; });
    }
    if (trace.front().transition_index >= a.transitions.size()) return false;

    Configuration cfg{Substitution{}, a.transitions[trace.front().transition_index].from};
    if (!a.initial.count(cfg.state)) return false;

    std::size_t pos = 0;
    for (const auto& wit : trace) {
        if (wit.transition_index >= a.transitions.size()) return false;
        const Transition& t = a.transitions[wit.transition_index];
        if (t.from != cfg.state) return false;

        if (is_epsilon(t.symbol) != !wit.input) return false;

        // The guess must bind exactly the unbound variables of the step.
        std::set<Variable> expected = guard_free_vars_under(cfg.subst, t.guard);
        auto label_vars = symbol_free_vars_under(cfg.subst, t.symbol);
        expected.insert(label_vars.begin(), label_vars.end());
        if (wit.guess.domain() != expected) return false;

        Substitution whole;
        try {
            whole = subst_disjoint_union(cfg.subst, wit.guess);
        } catch (const DomainOverlapError&) {
            return false;
        }

        if (wit.input) {
            if (pos >= w.size() || !(w[pos] == *wit.input)) return false;
            Symbol instantiated = whole.apply(t.symbol);
            const auto* l = std::get_if<Letter>(&instantiated);
            if (!l || !(*l == *wit.input)) return false;
            ++pos;
        }

        if (!guard_satisfies(whole, t.guard)) return false;

        Configuration succ{subst_drop(whole, a.refreshed_at(t.to)), t.to};
        if (!(succ == wit.result)) return false;
        cfg = succ;
    }

    return pos == w.size() && a.accepting.count(cfg.state) > 0;
}

Word trace_word(const Trace& trace) {
    Word out;
    for (const auto& wit : trace)
        if (wit.input) out.push_back(*wit.input);
    return out;
}

} // namespace gva
