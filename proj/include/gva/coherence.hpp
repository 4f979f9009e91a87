#ifndef GVA_COHERENCE_HPP
#define GVA_COHERENCE_HPP

#include <optional>
#include <set>
#include <string>

#include "gva/core.hpp"

namespace gva {

/// A letter pool: an explicit finite set, optionally extended by an
/// unbounded stream of generated letters ("<prefix>1", "<prefix>2", ...)
/// so that "infinite" pools stay usable.
struct LetterPool {
    std::set<Letter> named;
    std::optional<std::string> fresh_prefix;

    static LetterPool finite(std::set<Letter> letters) {
        return LetterPool{std::move(letters), std::nullopt};
    }
    static LetterPool infinite(std::set<Letter> letters, std::string prefix) {
        return LetterPool{std::move(letters), std::move(prefix)};
    }

    bool contains(const Letter& l) const;

    /// Deterministic chooser: the first generated letter not in `excluded`
    /// when the pool is infinite, otherwise the smallest named letter not in
    /// `excluded`. Throws PreconditionError when a finite pool is exhausted.
    Letter get(const std::set<Letter>& excluded) const;
};

/// The two pools S1, S2 with C = S1 /\ S2 used by the substitution-transfer
/// functions. Each difference must offer at least |X| letters beyond C.
struct CoherenceContext {
    std::set<Letter> c;  // C
    LetterPool s1;
    LetterPool s2;

    /// True when both pools keep at least `k` letters outside C.
    bool has_slack(std::size_t k) const;
};

/// sigma_bar |x|_C sigma: equal domains, agreement on C-valued bindings in
/// both directions, and the same equality pattern.
bool coherent(const std::set<Letter>& c, const Substitution& lhs, const Substitution& rhs);

/// Theta for a singleton gamma1: keeps C-valued bindings, maps through M2
/// when the value comes from codom(M1), otherwise picks a fresh letter of S2
/// outside C and codom(M2).
Substitution theta(const CoherenceContext& ctx, const Substitution& m1,
                   const Substitution& gamma1, const Substitution& m2);

/// Folds theta over gamma1's bindings in variable order. Postcondition
/// (Theta product): (m1 (+) gamma1) |x|_C (m2 (+) result).
Substitution big_theta(const CoherenceContext& ctx, const Substitution& m1,
                       const Substitution& gamma1, const Substitution& m2);

/// Inputs of the Xi transfer. Guards must use letters of C only; sigma1 must
/// agree with sigma3 on dom(sigma1) (and primed likewise) — the shape the
/// simulation game produces.
struct XiInput {
    Substitution sigma1, sigma2, sigma3, gamma2;
    Term alpha = Letter{""};
    Term beta = Letter{""};
    Guard g2;
    Substitution sigma1p, sigma2p, sigma3p;
};

/// Builds gamma2' mirroring Eloise's instantiation across the two pools:
/// gamma2'(sigma2'(beta)) = sigma3'(alpha), coherence of the assembled
/// unions, and gamma2' |= sigma2'(g2). Throws PreconditionError when the
/// side conditions fail.
Substitution xi(const CoherenceContext& ctx, const XiInput& in);

} // namespace gva

#endif
