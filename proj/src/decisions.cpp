#include "gva/decisions.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "gva/closure.hpp"

namespace gva {

std::set<Letter> bold_sigma(const Gva& a) {
    std::set<Letter> pool = a.constants;
    for (const auto& fresh : reserved_fresh_letters(a.vars.size(), pool))
        pool.insert(fresh);
    return pool;
}

namespace {

struct SearchState {
    std::set<Configuration> visited;
    std::map<Configuration, std::pair<Configuration, StepWitness>> parent;
};

std::optional<std::pair<Word, Trace>> reconstruct(const SearchState& search,
                                                  const Configuration& goal) {
    Trace trace;
    Configuration cur = goal;
    while (true) {
        auto it = search.parent.find(cur);
        if (it == search.parent.end()) break;
        trace.push_back(it->second.second);
        cur = it->second.first;
    }
    std::reverse(trace.begin(), trace.end());
    return std::make_pair(trace_word(trace), trace);
}

} // namespace

std::optional<std::pair<Word, Trace>> nonemptiness(const Gva& a) {
    const std::set<Letter> pool = bold_sigma(a);
    SearchState search;

    // One layer per witness length; every layer is epsilon-closed.
    std::vector<Configuration> frontier;
    auto absorb_closure = [&](const std::vector<Configuration>& roots,
                              std::vector<Configuration>& layer) {
        EpsClosure closure = eps_closure_traced(a, roots, pool);
        for (const auto& c : closure.order) {
            if (!search.visited.insert(c).second) continue;
            auto it = closure.parent.find(c);
            if (it != closure.parent.end()) search.parent.emplace(c, it->second);
            layer.push_back(c);
        }
    };

    std::vector<Configuration> roots;
    for (const auto& q0 : a.initial) roots.push_back(Configuration{Substitution{}, q0});
    absorb_closure(roots, frontier);

    while (!frontier.empty()) {
        for (const auto& c : frontier)
            if (a.accepting.count(c.state)) return reconstruct(search, c);

        std::vector<Configuration> next;
        for (const auto& c : frontier) {
            for (const auto& l : pool) {
                for (const auto& [succ, wit] : step(a, c, l, pool)) {
                    if (search.visited.count(succ)) continue;
                    search.visited.insert(succ);
                    search.parent.emplace(succ, std::make_pair(c, wit));
                    next.push_back(succ);
                }
            }
        }
        // Close the new layer under epsilon steps.
        std::vector<Configuration> layer;
        for (const auto& c : next) {
            search.visited.erase(c);  // re-inserted by absorb_closure
        }
        absorb_closure(next, layer);
        frontier = std::move(layer);
    }
    return std::nullopt;
}

namespace {

/// The reachable part of L(a) restricted to words over `letters`, as a
/// classical FA. States are epsilon-closed configurations over the finite
/// pool `letters + constants + |vars| fresh`.
Fa fa_of_gva_over(const Gva& a, const std::set<Letter>& letters) {
    std::set<Letter> pool = letters;
    pool.insert(a.constants.begin(), a.constants.end());
    for (const auto& fresh : reserved_fresh_letters(a.vars.size(), pool))
        pool.insert(fresh);

    Fa out;
    out.name = a.name + "|fa";
    out.letters = letters;

    std::map<Configuration, StateId> names;
    std::deque<Configuration> queue;
    auto intern = [&](const Configuration& c) {
        auto it = names.find(c);
        if (it != names.end()) return it->second;
        StateId name = "c" + std::to_string(names.size());
        names.emplace(c, name);
        out.states.insert(name);
        if (a.accepting.count(c.state)) out.accepting.insert(name);
        queue.push_back(c);
        return name;
    };

    std::set<Configuration> start;
    for (const auto& q0 : a.initial) start.insert(Configuration{Substitution{}, q0});
    for (const auto& c : eps_closure(a, start, pool)) out.initial.insert(intern(c));

    while (!queue.empty()) {
        Configuration c = queue.front();
        queue.pop_front();
        StateId from = names.at(c);
        for (const auto& l : letters) {
            std::set<Configuration> succs;
            for (const auto& [succ, wit] : step(a, c, l, pool)) succs.insert(succ);
            for (const auto& target : eps_closure(a, succs, pool))
                out.transitions.push_back(FaTransition{from, l, intern(target)});
        }
    }
    return out;
}

} // namespace

std::optional<Word> containment_vs_fa(const Gva& a, const Fa& f,
                                      ContainmentDirection direction) {
    const Fa det = f.is_deterministic() ? f : fa_determinize(f);

    if (direction == ContainmentDirection::GvaInFa) {
        Gva gap = gva_intersection(a, complement_fa(det));
        auto witness = nonemptiness(gap);
        if (!witness) return std::nullopt;
        return witness->first;
    }

    // FaInGva: complement a's restriction to f's alphabet; words of f using
    // other letters do not exist, so the restriction loses nothing.
    Fa restricted = fa_determinize(fa_of_gva_over(a, f.letters));
    Gva gap = gva_intersection(fa_to_gva(det), complement_fa(restricted));
    auto witness = nonemptiness(gap);
    if (!witness) return std::nullopt;
    return witness->first;
}

} // namespace gva
