#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdilemma/game.hpp"
#include "qdilemma/scan.hpp"

// Best-response search, pure-NE verification and enumeration, decoherence
// threshold bisection, and mixed-strategy NE verification. Deviations are
// scanned over a StrategyGrid; candidate enumeration defaults to the named
// set {C, D, Q} x {C, D, Q}.

namespace qdilemma {

/// A player's move in either convention. Kept as a sum type: the two
/// conventions build different unitaries from the same (theta, phi).
using Strategy = std::variant<TwoParamStrategy, ThreeParamStrategy>;

Convention convention_of(const Strategy& s);
Mat2 strategy_unitary(const Strategy& s);

/// "C" / "D" / "Q" when the parameters match a named point exactly in the
/// strategy's own convention, otherwise the parameter tuple.
std::string strategy_label(const Strategy& s);

/// Named point in the requested convention. The three-parameter triples are
/// the operator-equivalent images of the two-parameter points:
/// C = (0,0,0), D = (pi,0,-pi/2), Q = (0,pi/2,0).
Strategy named_strategy(char name, Convention c);

using Profile = std::pair<Strategy, Strategy>;

enum class PlayerTag { Alice, Bob };

std::string to_string(PlayerTag p);

struct BestResponseResult {
    Strategy strategy;
    double payoff;
};

/// Grid point maximizing the responding player's payoff against the fixed
/// opponent move. Ties break toward lowest theta, then phi, then psi.
BestResponseResult best_response(const Strategy& opponent, PlayerTag player, double mu,
                                 double delta, const StrategyGrid& grid, Convention convention,
                                 const ClassicalPayoffs& payoffs = ClassicalPayoffs::defaults());

struct EquilibriumReport {
    Profile profile;
    bool is_ne;
    double worst_deviation_gain;  // most positive unilateral improvement found
    PlayerTag witness_player;
    Strategy witness;  // best deviation found for the witness player
    double tolerance;
    PayoffPair payoffs;  // at the profile
};

EquilibriumReport verify_pure_ne(const Profile& profile, double mu, double delta,
                                 const StrategyGrid& grid, double tolerance,
                                 Convention convention,
                                 const ClassicalPayoffs& payoffs = ClassicalPayoffs::defaults());

/// All pairs over {C, D, Q} in row-major order.
std::vector<Profile> named_candidates(Convention c);

std::vector<EquilibriumReport> enumerate_pure_ne(
    double mu, double delta, const StrategyGrid& grid, const std::vector<Profile>& candidates,
    double tolerance, Convention convention,
    const ClassicalPayoffs& payoffs = ClassicalPayoffs::defaults());

struct GridEquilibrium {
    Profile profile;
    PayoffPair payoffs;
};

/// Exhaustive enumeration over all grid profile pairs (O(grid^2) payoff
/// evaluations; intended for coarse grids). Reports every profile where
/// neither player has a grid deviation gaining more than tolerance.
std::vector<GridEquilibrium> enumerate_grid_ne(
    double mu, double delta, const StrategyGrid& grid, double tolerance, Convention convention,
    const ClassicalPayoffs& payoffs = ClassicalPayoffs::defaults());

enum class ThresholdDirection { NeAbove, NeBelow };
enum class ThresholdRegion { Boundary, AlwaysNe, NeverNe };

std::string to_string(ThresholdDirection d);
std::string to_string(ThresholdRegion r);

struct ThresholdResult {
    double mu_star;  // boundary; 0 for AlwaysNe, 1 for NeverNe
    ThresholdRegion region;
    ThresholdDirection direction;  // side of the boundary where the profile is NE
};

/// Locates the boundary of the is_ne region in mu by bisection. The NE
/// indicator is first scanned at 101 equally spaced points; more than one
/// sign change raises NotMonotone. A declared `expected` direction that
/// contradicts the scan raises InvalidParameter.
ThresholdResult ne_threshold(const Profile& profile, double delta, const StrategyGrid& grid,
                             std::optional<ThresholdDirection> expected, double bisect_tol,
                             Convention convention, double ne_tolerance = tol::kNeGain,
                             const ClassicalPayoffs& payoffs = ClassicalPayoffs::defaults());

struct MixedStrategy {
    std::vector<std::pair<Strategy, double>> support;

    /// Validates non-empty support, probabilities >= 0 summing to 1.
    static MixedStrategy of(std::vector<std::pair<Strategy, double>> support);
    static MixedStrategy pure(Strategy s);
};

PayoffPair expected_payoff_mixed(const MixedStrategy& a, const MixedStrategy& b, double mu,
                                 double delta,
                                 const ClassicalPayoffs& payoffs = ClassicalPayoffs::defaults());

struct MixedEquilibriumReport {
    bool is_ne;
    double worst_deviation_gain;
    PlayerTag witness_player;
    Strategy witness;
    double tolerance;
    PayoffPair average;
    std::vector<PayoffPair> components;  // support product, Alice-major order
};

/// Checks that no pure grid deviation by either player improves on the
/// mixed expected payoff beyond tolerance.
MixedEquilibriumReport verify_mixed_ne(const MixedStrategy& a, const MixedStrategy& b, double mu,
                                       double delta, const StrategyGrid& grid, double tolerance,
                                       Convention convention,
                                       const ClassicalPayoffs& payoffs = ClassicalPayoffs::defaults());

/// The equal-weight mixed equilibrium of the three-parameter game:
/// Alice mixes (0, 0, psi) and (0, pi/2, psi); Bob mixes (pi, phi, 0) and
/// (pi, phi, pi/2). psi and phi are free parameters.
std::pair<MixedStrategy, MixedStrategy> mixed_ne_profile(double psi, double phi);

}  // namespace qdilemma
