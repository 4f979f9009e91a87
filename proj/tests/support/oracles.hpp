#ifndef GVA_TESTS_ORACLES_HPP
#define GVA_TESTS_ORACLES_HPP

#include <deque>
#include <map>
#include <optional>
#include <set>

#include "gva/automata.hpp"
#include "gva/semantics.hpp"

namespace gva::testing {

/// Greatest simulation on the transition structure of two FAs (acceptance
/// plays no role, matching the game's standing all-accepting assumption).
inline bool classical_fa_simulates(const Fa& a, const Fa& b) {
    std::set<std::pair<StateId, StateId>> rel;
    for (const auto& p : a.states)
        for (const auto& q : b.states) rel.insert({p, q});

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = rel.begin(); it != rel.end();) {
            const auto& [p, q] = *it;
            bool ok = true;
            for (const auto& ta : a.transitions) {
                if (ta.from != p) continue;
                bool matched = false;
                for (const auto& tb : b.transitions) {
                    if (tb.from != q || !(tb.letter == ta.letter)) continue;
                    if (rel.count({ta.to, tb.to})) {
                        matched = true;
                        break;
                    }
                }
                if (!matched) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                it = rel.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }

    for (const auto& p0 : a.initial) {
        bool covered = false;
        for (const auto& q0 : b.initial)
            if (rel.count({p0, q0})) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

/// Direct NFMA run semantics: registers hold letters, a read fires when the
/// input equals the register's content, a reassignment is an epsilon step
/// guessing a value distinct from every other occupied register.
struct NfmaConfig {
    StateId state;
    std::map<int, Letter> regs;

    auto operator<=>(const NfmaConfig&) const = default;
};

inline std::set<NfmaConfig> nfma_eps_closure(const Nfma& n, std::set<NfmaConfig> cs,
                                             const std::set<Letter>& pool) {
    std::deque<NfmaConfig> queue(cs.begin(), cs.end());
    while (!queue.empty()) {
        NfmaConfig c = queue.front();
        queue.pop_front();
        for (const auto& t : n.transitions) {
            const auto* re = std::get_if<RegisterReassign>(&t.label);
            if (!re || t.from != c.state) continue;
            for (const auto& v : pool) {
                bool clash = false;
                for (const auto& [r, l] : c.regs)
                    if (r != re->reg && l == v) clash = true;
                if (clash) continue;
                NfmaConfig succ{t.to, c.regs};
                succ.regs[re->reg] = v;
                if (cs.insert(succ).second) queue.push_back(succ);
            }
        }
    }
    return cs;
}

inline std::set<Word> nfma_enumerate(const Nfma& n, const std::set<Letter>& pool,
                                     std::size_t max_len) {
    std::set<Word> accepted;
    std::map<Word, std::set<NfmaConfig>> layer;
    layer.emplace(Word{}, nfma_eps_closure(n, {NfmaConfig{n.initial, n.init_assign}}, pool));

    for (std::size_t len = 0; len <= max_len; ++len) {
        std::map<Word, std::set<NfmaConfig>> next;
        for (const auto& [w, configs] : layer) {
            for (const auto& c : configs)
                if (n.accepting.count(c.state)) {
                    accepted.insert(w);
                    break;
                }
            if (len == max_len) continue;
            for (const auto& l : pool) {
                std::set<NfmaConfig> succs;
                for (const auto& c : configs)
                    for (const auto& t : n.transitions) {
                        const auto* read = std::get_if<RegisterRead>(&t.label);
                        if (!read || t.from != c.state) continue;
                        auto it = c.regs.find(read->reg);
                        if (it == c.regs.end() || !(it->second == l)) continue;
                        succs.insert(NfmaConfig{t.to, c.regs});
                    }
                if (succs.empty()) continue;
                Word w2 = w;
                w2.push_back(l);
                next.emplace(std::move(w2), nfma_eps_closure(n, std::move(succs), pool));
            }
        }
        layer = std::move(next);
    }
    return accepted;
}

inline std::size_t nfma_size(const Nfma& n) { return n.states.size() + n.transitions.size(); }
inline std::size_t gva_size(const Gva& a) { return a.states.size() + a.transitions.size(); }

/// Bounded language over `surface` letters: enumerates with a guess pool
/// rich enough for every disequality (surface + constants + |vars| fresh),
/// then keeps only the words written entirely over `surface`.
inline std::set<Word> bounded_lang(const Gva& a, const std::set<Letter>& surface,
                                   std::size_t max_len) {
    std::set<Letter> pool = surface;
    pool.insert(a.constants.begin(), a.constants.end());
    for (const auto& fresh : reserved_fresh_letters(a.vars.size(), pool)) pool.insert(fresh);
    std::set<Word> out;
    for (const auto& w : enumerate_language(a, pool, max_len)) {
        bool on_surface = true;
        for (const auto& l : w)
            if (!surface.count(l)) on_surface = false;
        if (on_surface) out.insert(w);
    }
    return out;
}

/// Shortest accepted word length over `pool`, by configuration-graph BFS
/// (terminates via the visited fixpoint). Test-side relative of
/// nonemptiness without its witness machinery.
inline std::optional<std::size_t> bfs_shortest_accepted(const Gva& a,
                                                        const std::set<Letter>& pool) {
    std::set<Configuration> start;
    for (const auto& q0 : a.initial) start.insert(Configuration{Substitution{}, q0});
    std::set<Configuration> frontier = eps_closure(a, start, pool);
    std::set<Configuration> visited = frontier;

    for (std::size_t len = 0;; ++len) {
        if (frontier.empty()) return std::nullopt;
        for (const auto& c : frontier)
            if (a.accepting.count(c.state)) return len;

        std::set<Configuration> raw;
        for (const auto& c : frontier)
            for (const auto& l : pool)
                for (const auto& [succ, wit] : step(a, c, l, pool)) raw.insert(succ);
        std::set<Configuration> closed = eps_closure(a, raw, pool);
        std::set<Configuration> next;
        for (const auto& c : closed)
            if (visited.insert(c).second) next.insert(c);
        frontier = std::move(next);
    }
}

} // namespace gva::testing

#endif
