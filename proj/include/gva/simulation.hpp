#ifndef GVA_SIMULATION_HPP
#define GVA_SIMULATION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "gva/automata.hpp"
#include "gva/semantics.hpp"

namespace gva {

class NotWinningError : public Error {
public:
    explicit NotWinningError(const std::string& what) : Error(what) {}
};

/// Abelard owns pairs of configurations: his side in A1, Eloise's in A2.
struct AbelardPosition {
    Configuration left;
    Configuration right;

    auto operator<=>(const AbelardPosition&) const = default;
};

/// Eloise owns the same pair extended with Abelard's challenge: the
/// substitution sigma1 (+) gamma taken before refreshing, and the label
/// it instantiates.
struct EloisePosition {
    Configuration left;   // A1 configuration, already advanced and refreshed
    Configuration right;
    Substitution challenge_subst;  // sigma3
    Symbol challenge_label;        // alpha

    auto operator<=>(const EloisePosition&) const = default;
};

using GamePosition = std::variant<AbelardPosition, EloisePosition>;

struct GameMove {
    std::size_t target = 0;            // successor position index
    std::size_t transition_index = 0;  // transition of the automaton that moved
    Substitution guess;
};

/// The finite simulation game over the instantiation pool C0.
struct RestrictedGame {
    Gva a1, a2;  // inputs with variables renamed apart
    std::set<Letter> c0;
    std::vector<GamePosition> positions;  // positions[0] is the start
    std::vector<std::vector<GameMove>> moves;
    std::size_t start = 0;
};

/// Diagnostics for the standing assumptions of the simulation preorder:
/// no epsilon transitions, a unique initial state, all states accepting.
Diagnostics check_sim_preconditions(const Gva& a);

/// Marks every state accepting (the simulation sections' standing
/// assumption, applied as a normalization instead of a rejection).
Gva make_all_accepting(const Gva& a);

/// Builds the reachable restricted game of a1 versus a2. C0 is both
/// automata's constants plus |X1|+|X2| (+ extra_fresh) reserved letters.
/// Throws PreconditionError on epsilon transitions or non-unique initial
/// states; acceptance is ignored, as the game never reads it.
RestrictedGame build_restricted_game(const Gva& a1, const Gva& a2,
                                     std::size_t extra_fresh = 0);

struct SafetyRegions {
    std::vector<bool> eloise_wins;  // per position index

    bool start_winning(const RestrictedGame& g) const { return eloise_wins[g.start]; }
};

/// Least fixpoint over Eloise-losing positions: an Eloise position loses
/// when every successor loses (in particular with no successor at all), an
/// Abelard position loses for Eloise when some successor does.
SafetyRegions solve_safety_game(const RestrictedGame& g);

/// a1 is simulated by a2: Eloise wins the restricted game from the start.
bool simulates(const Gva& a1, const Gva& a2, std::size_t extra_fresh = 0);

struct StrategyMove {
    std::size_t transition_index = 0;  // transition of a2
    Substitution guess;                // gamma2
    AbelardPosition successor;
    std::optional<std::size_t> service_index;  // component that advanced

    auto operator<=>(const StrategyMove&) const = default;
};

/// Eloise's positional winning strategy, closed under reachability from the
/// start position when she follows it and Abelard plays arbitrarily.
struct Strategy {
    std::map<EloisePosition, StrategyMove> moves;
};

/// Picks, for each reachable winning Eloise position, the first winning
/// move in the game's deterministic order. Throws NotWinningError when the
/// start position is lost.
Strategy extract_strategy(const RestrictedGame& g, const SafetyRegions& regions);

/// Replays `s` against an exhaustive Abelard for at most `depth` moves;
/// false when Eloise reaches a position her strategy does not cover.
bool strategy_replays(const RestrictedGame& g, const Strategy& s, std::size_t depth);

struct CompositionResult {
    Gva community;  // the asynchronous product of the services
    Strategy strategy;
};

/// Synthesizes a mediator: decides whether the community of services
/// simulates the client and, if so, returns Eloise's strategy with each
/// move routed to the unique service component that advances.
std::optional<CompositionResult> compose_services(const Gva& client,
                                                  const std::vector<Gva>& services);

} // namespace gva

#endif
