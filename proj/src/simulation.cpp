#include "gva/simulation.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "gva/closure.hpp"

namespace gva {

Diagnostics check_sim_preconditions(const Gva& a) {
    Diagnostics out;
    for (std::size_t i = 0; i < a.transitions.size(); ++i)
        if (is_epsilon(a.transitions[i].symbol))
            out.push_back({"EpsilonNotAllowed", "epsilon transitions are not supported here",
                           "transition " + std::to_string(i)});
    if (a.initial.empty())
        out.push_back({"NoInitial", "a unique initial state is required", "states"});
    else if (a.initial.size() > 1)
        out.push_back({"MultipleInitial", "a unique initial state is required", "states"});
    for (const auto& q : a.states)
        if (!a.accepting.count(q))
            out.push_back({"NotAllAccepting", "state '" + q + "' is not accepting", "states"});
    return out;
}

Gva make_all_accepting(const Gva& a) {
    Gva out = a;
    out.accepting = out.states;
    return out;
}

namespace {

void require_game_input(const Gva& a, const char* who) {
    if (a.has_epsilon_transitions())
        throw PreconditionError(std::string(who) + " has epsilon transitions");
    if (a.initial.size() != 1)
        throw PreconditionError(std::string(who) + " does not have a unique initial state");
}

/// Assignments of `vars` into `pool` layered on `forced`, deterministic.
void each_assignment(const std::vector<Variable>& vars, const std::vector<Letter>& pool,
                     const Substitution& forced,
                     const std::function<void(const Substitution&)>& fn) {
    if (vars.empty()) {
        fn(forced);
        return;
    }
    if (pool.empty()) return;
    std::vector<std::size_t> odo(vars.size(), 0);
    while (true) {
        Substitution gamma = forced;
        for (std::size_t i = 0; i < vars.size(); ++i)
            gamma.bindings.emplace(vars[i], pool[odo[i]]);
        fn(gamma);
        std::size_t i = 0;
        for (; i < odo.size(); ++i) {
            if (++odo[i] < pool.size()) break;
            odo[i] = 0;
        }
        if (i == odo.size()) return;
    }
}

class GameBuilder {
public:
    GameBuilder(Gva a1, Gva a2, std::size_t extra_fresh) {
        game_.a1 = std::move(a1);
        game_.a2 = std::move(a2);

        game_.c0 = game_.a1.constants;
        game_.c0.insert(game_.a2.constants.begin(), game_.a2.constants.end());
        std::size_t k = game_.a1.vars.size() + game_.a2.vars.size() + extra_fresh;
        for (const auto& fresh : reserved_fresh_letters(k, game_.c0)) game_.c0.insert(fresh);
        pool_.assign(game_.c0.begin(), game_.c0.end());
    }

    RestrictedGame build() {
        AbelardPosition start{
            Configuration{Substitution{}, *game_.a1.initial.begin()},
            Configuration{Substitution{}, *game_.a2.initial.begin()}};
        game_.start = intern(start);

        std::size_t next = 0;
        while (next < game_.positions.size()) {
            std::size_t index = next++;
            GamePosition pos = game_.positions[index];  // copy: positions_ may grow
            if (const auto* ab = std::get_if<AbelardPosition>(&pos))
                expand_abelard(index, *ab);
            else
                expand_eloise(index, std::get<EloisePosition>(pos));
        }
        return std::move(game_);
    }

private:
    std::size_t intern(GamePosition pos) {
        auto it = index_.find(pos);
        if (it != index_.end()) return it->second;
        std::size_t id = game_.positions.size();
        index_.emplace(pos, id);
        game_.positions.push_back(std::move(pos));
        game_.moves.emplace_back();
        return id;
    }

    void expand_abelard(std::size_t index, const AbelardPosition& pos) {
        const Substitution& sigma1 = pos.left.subst;
        for (std::size_t ti = 0; ti < game_.a1.transitions.size(); ++ti) {
            const Transition& t = game_.a1.transitions[ti];
            if (t.from != pos.left.state) continue;

            std::set<Variable> free = guard_free_vars_under(sigma1, t.guard);
            auto label_vars = symbol_free_vars_under(sigma1, t.symbol);
            free.insert(label_vars.begin(), label_vars.end());
            std::vector<Variable> open(free.begin(), free.end());

            const auto refreshed = game_.a1.refreshed_at(t.to);
            each_assignment(open, pool_, Substitution{}, [&](const Substitution& gamma) {
                Substitution sigma3 = subst_disjoint_union(sigma1, gamma);
                if (!guard_satisfies(sigma3, t.guard)) return;
                EloisePosition succ{
                    Configuration{subst_drop(sigma3, refreshed), t.to},
                    pos.right, sigma3, t.symbol};
                // intern() may reallocate moves; build the move first
                GameMove move{intern(std::move(succ)), ti, gamma};
                game_.moves[index].push_back(std::move(move));
            });
        }
    }

    void expand_eloise(std::size_t index, const EloisePosition& pos) {
        Symbol challenge = pos.challenge_subst.apply(pos.challenge_label);
        const auto* letter = std::get_if<Letter>(&challenge);
        if (!letter) throw Error("internal: an Eloise challenge is not ground");

        const Substitution& sigma2 = pos.right.subst;
        for (std::size_t ti = 0; ti < game_.a2.transitions.size(); ++ti) {
            const Transition& t = game_.a2.transitions[ti];
            if (t.from != pos.right.state) continue;

            // gamma2(sigma2(beta)) must produce exactly the challenge letter.
            Substitution forced;
            Symbol beta = sigma2.apply(t.symbol);
            if (const auto* l = std::get_if<Letter>(&beta)) {
                if (!(*l == *letter)) continue;
            } else {
                forced.bindings.emplace(std::get<Variable>(beta), *letter);
            }

            std::set<Variable> free = guard_free_vars_under(sigma2, t.guard);
            for (const auto& [x, _] : forced.bindings) free.erase(x);
            std::vector<Variable> open(free.begin(), free.end());

            const auto refreshed = game_.a2.refreshed_at(t.to);
            each_assignment(open, pool_, forced, [&](const Substitution& gamma2) {
                Substitution whole = subst_disjoint_union(sigma2, gamma2);
                if (!guard_satisfies(whole, t.guard)) return;
                AbelardPosition succ{
                    pos.left,
                    Configuration{subst_drop(whole, refreshed), t.to}};
                GameMove move{intern(std::move(succ)), ti, gamma2};
                game_.moves[index].push_back(std::move(move));
            });
        }
    }

    RestrictedGame game_;
    std::vector<Letter> pool_;
    std::map<GamePosition, std::size_t> index_;
};

} // namespace

RestrictedGame build_restricted_game(const Gva& a1, const Gva& a2, std::size_t extra_fresh) {
    require_game_input(a1, "left automaton");
    require_game_input(a2, "right automaton");
    auto [r1, r2] = rename_apart(a1, a2);
    GameBuilder builder(std::move(r1), std::move(r2), extra_fresh);
    return builder.build();
}

SafetyRegions solve_safety_game(const RestrictedGame& g) {
    const std::size_t n = g.positions.size();
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> pending(n, 0);  // not-yet-losing successors (Eloise)
    std::vector<bool> losing(n, false);
    std::deque<std::size_t> queue;

    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& m : g.moves[i]) preds[m.target].push_back(i);
        pending[i] = g.moves[i].size();
        if (std::holds_alternative<EloisePosition>(g.positions[i]) && g.moves[i].empty()) {
            losing[i] = true;
            queue.push_back(i);
        }
    }

    while (!queue.empty()) {
        std::size_t lost = queue.front();
        queue.pop_front();
        for (std::size_t p : preds[lost]) {
            if (losing[p]) continue;
            if (std::holds_alternative<AbelardPosition>(g.positions[p])) {
                losing[p] = true;
                queue.push_back(p);
            } else if (--pending[p] == 0) {
                losing[p] = true;
                queue.push_back(p);
            }
        }
    }

    SafetyRegions regions;
    regions.eloise_wins.resize(n);
    for (std::size_t i = 0; i < n; ++i) regions.eloise_wins[i] = !losing[i];
    return regions;
}

bool simulates(const Gva& a1, const Gva& a2, std::size_t extra_fresh) {
    RestrictedGame g = build_restricted_game(a1, a2, extra_fresh);
    return solve_safety_game(g).start_winning(g);
}

Strategy extract_strategy(const RestrictedGame& g, const SafetyRegions& regions) {
    if (!regions.start_winning(g))
        throw NotWinningError("the start position is not winning for Eloise");

    Strategy strategy;
    std::vector<bool> seen(g.positions.size(), false);
    std::deque<std::size_t> queue{g.start};
    seen[g.start] = true;

    while (!queue.empty()) {
        std::size_t index = queue.front();
        queue.pop_front();

        if (std::holds_alternative<AbelardPosition>(g.positions[index])) {
            for (const auto& m : g.moves[index]) {
                if (!seen[m.target]) {
                    seen[m.target] = true;
                    queue.push_back(m.target);
                }
            }
            continue;
        }

        const auto& pos = std::get<EloisePosition>(g.positions[index]);
        const GameMove* chosen = nullptr;
        for (const auto& m : g.moves[index]) {
            if (regions.eloise_wins[m.target]) {
                chosen = &m;
                break;
            }
        }
        if (!chosen) throw Error("internal: a winning Eloise position has no winning move");
        strategy.moves.emplace(
            pos, StrategyMove{chosen->transition_index, chosen->guess,
                              std::get<AbelardPosition>(g.positions[chosen->target]),
                              std::nullopt});
        if (!seen[chosen->target]) {
            seen[chosen->target] = true;
            queue.push_back(chosen->target);
        }
    }
    return strategy;
}

bool strategy_replays(const RestrictedGame& g, const Strategy& s, std::size_t depth) {
    std::map<std::size_t, std::size_t> best_depth;  // position -> least depth seen
    std::deque<std::pair<std::size_t, std::size_t>> queue{{g.start, 0}};

    while (!queue.empty()) {
        auto [index, d] = queue.front();
        queue.pop_front();
        auto it = best_depth.find(index);
        if (it != best_depth.end() && it->second <= d) continue;
        best_depth[index] = d;
        if (d >= depth) continue;

        if (const auto* pos = std::get_if<EloisePosition>(&g.positions[index])) {
            auto entry = s.moves.find(*pos);
            if (entry == s.moves.end()) return false;  // Eloise is stuck
            const StrategyMove& sm = entry->second;
            bool followed = false;
            for (const auto& m : g.moves[index]) {
                if (m.transition_index != sm.transition_index || !(m.guess == sm.guess)) continue;
                if (!(std::get<AbelardPosition>(g.positions[m.target]) == sm.successor)) continue;
                queue.push_back({m.target, d + 1});
                followed = true;
                break;
            }
            if (!followed) return false;  // strategy move is not a game move
        } else {
            for (const auto& m : g.moves[index]) queue.push_back({m.target, d + 1});
        }
    }
    return true;
}

std::optional<CompositionResult> compose_services(const Gva& client,
                                                  const std::vector<Gva>& services) {
    std::vector<std::size_t> advancing;
    Gva community = async_product(services, &advancing);

    RestrictedGame g = build_restricted_game(client, community);
    SafetyRegions regions = solve_safety_game(g);
    if (!regions.start_winning(g)) return std::nullopt;

    Strategy strategy = extract_strategy(g, regions);
    for (auto& [pos, move] : strategy.moves)
        move.service_index = advancing.at(move.transition_index);

    // Return the game's right side: the strategy speaks its variable names,
    // which differ from the raw product's when they collide with the client's.
    return CompositionResult{std::move(g.a2), std::move(strategy)};
}

} // namespace gva
