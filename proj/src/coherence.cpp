#include "gva/coherence.hpp"

#include <algorithm>

namespace gva {

bool LetterPool::contains(const Letter& l) const {
    if (named.count(l)) return true;
    if (!fresh_prefix) return false;
    const std::string& p = *fresh_prefix;
    if (l.name.size() <= p.size() || l.name.compare(0, p.size(), p) != 0) return false;
    return std::all_of(l.name.begin() + static_cast<long>(p.size()), l.name.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

Letter LetterPool::get(const std::set<Letter>& excluded) const {
    if (fresh_prefix) {
        for (std::size_t i = 1;; ++i) {
            Letter candidate{*fresh_prefix + std::to_string(i)};
            if (!excluded.count(candidate)) return candidate;
        }
    }
    for (const auto& l : named)
        if (!excluded.count(l)) return l;
    throw PreconditionError("letter pool exhausted");
}

bool CoherenceContext::has_slack(std::size_t k) const {
    for (const auto* pool : {&s1, &s2}) {
        if (pool->fresh_prefix) continue;  // a generator never runs dry
        std::size_t outside = 0;
        for (const auto& l : pool->named)
            if (!c.count(l)) ++outside;
        if (outside < k) return false;
    }
    return true;
}

bool coherent(const std::set<Letter>& c, const Substitution& lhs, const Substitution& rhs) {
    if (lhs.domain() != rhs.domain()) return false;

    for (const auto& [x, a] : lhs.bindings) {
        const Letter& b = rhs.bindings.at(x);
        if (c.count(a) && !(a == b)) return false;
        if (c.count(b) && !(a == b)) return false;
    }

    for (const auto& [x, ax] : lhs.bindings)
        for (const auto& [y, ay] : lhs.bindings) {
            bool same_left = ax == ay;
            bool same_right = rhs.bindings.at(x) == rhs.bindings.at(y);
            if (same_left != same_right) return false;
        }
    return true;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

void require_valued_in(const Substitution& s, const LetterPool& pool, const std::string& who) {
    for (const auto& [x, a] : s.bindings)
        require(pool.contains(a), who + " binds '" + x.name + "' outside its pool");
}

} // namespace

Substitution theta(const CoherenceContext& ctx, const Substitution& m1,
                   const Substitution& gamma1, const Substitution& m2) {
    require(gamma1.size() == 1, "theta needs a singleton gamma1");
    const auto& [x, v] = *gamma1.bindings.begin();
    require(!m1.binds(x), "theta: gamma1 domain overlaps m1");
    require(coherent(ctx.c, m1, m2), "theta: m1 and m2 are not coherent");
    require_valued_in(m1, ctx.s1, "m1");
    require_valued_in(gamma1, ctx.s1, "gamma1");
    require_valued_in(m2, ctx.s2, "m2");

    if (ctx.c.count(v)) return gamma1;

    for (const auto& [y, w] : m1.bindings)
        if (w == v) return Substitution{{x, m2.at(y)}};

    std::set<Letter> excluded = ctx.c;
    for (const auto& l : m2.codomain()) excluded.insert(l);
    return Substitution{{x, ctx.s2.get(excluded)}};
}

Substitution big_theta(const CoherenceContext& ctx, const Substitution& m1,
                       const Substitution& gamma1, const Substitution& m2) {
    for (const auto& [x, _] : gamma1.bindings)
        require(!m1.binds(x), "big_theta: gamma1 domain overlaps m1");
    require(coherent(ctx.c, m1, m2), "big_theta: m1 and m2 are not coherent");

    Substitution left = m1;
    Substitution right = m2;
    Substitution out;
    for (const auto& [x, v] : gamma1.bindings) {
        Substitution single{{x, v}};
        Substitution image = theta(ctx, left, single, right);
        out = subst_disjoint_union(out, image);
        left = subst_disjoint_union(left, single);
        right = subst_disjoint_union(right, image);
    }
    return out;
}

Substitution xi(const CoherenceContext& ctx, const XiInput& in) {
    Substitution s32, s32p;
    try {
        s32 = subst_disjoint_union(in.sigma3, in.sigma2);
        s32p = subst_disjoint_union(in.sigma3p, in.sigma2p);
    } catch (const DomainOverlapError&) {
        throw PreconditionError("xi: sigma3 and sigma2 must have disjoint domains");
    }
    require(coherent(ctx.c, s32, s32p), "xi: sigma3+sigma2 not coherent with primed pair");
    require(coherent(ctx.c, in.sigma1, in.sigma1p), "xi: sigma1 not coherent with sigma1'");

    for (const auto& [x, a] : in.sigma1.bindings) {
        auto bound = in.sigma3.lookup(x);
        require(bound && *bound == a, "xi: sigma1 must agree with sigma3 on its domain");
    }
    for (const auto& [x, a] : in.sigma1p.bindings) {
        auto bound = in.sigma3p.lookup(x);
        require(bound && *bound == a, "xi: sigma1' must agree with sigma3' on its domain");
    }

    for (const auto& atom : in.g2.atoms) {
        if (atom.kind == AtomKind::True) continue;
        for (const auto* term : {&atom.lhs, &atom.rhs})
            if (const auto* l = std::get_if<Letter>(term))
                require(ctx.c.count(*l) > 0, "xi: guard letters must lie in C");
    }

    Term challenge = in.sigma3.apply(in.alpha);
    Term answered = in.gamma2.apply(in.sigma2.apply(in.beta));
    require(challenge == answered, "xi: gamma2(sigma2(beta)) must equal sigma3(alpha)");

    try {
        require(guard_satisfies(in.gamma2, guard_apply(in.sigma2, in.g2)),
                "xi: gamma2 must satisfy sigma2(g2)");
    } catch (const UnboundVariableError&) {
        throw PreconditionError("xi: gamma2 must cover the free variables of sigma2(g2)");
    }

    for (const auto& [x, _] : in.gamma2.bindings)
        require(!s32.binds(x), "xi: gamma2 domain overlaps sigma3+sigma2");

    // Case analysis on sigma3(alpha): a C letter or a letter outside C both
    // transfer through the sigma3+sigma2 pair; an unbound variable transfers
    // through the sigma1+sigma2 pair.
    if (const auto* l = std::get_if<Letter>(&challenge)) {
        (void)l;
        return big_theta(ctx, s32, in.gamma2, s32p);
    }
    Substitution s12 = subst_disjoint_union(in.sigma1, in.sigma2);
    Substitution s12p = subst_disjoint_union(in.sigma1p, in.sigma2p);
    return big_theta(ctx, s12, in.gamma2, s12p);
}

} // namespace gva
