#include "qdilemma/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qdilemma/errors.hpp"

namespace qdilemma {

namespace {

constexpr double kPi = std::numbers::pi;

Mat4 conjugate_one_side(const Mat4& rho, const Mat2& u, bool left_slot) {
    const Mat4 full =
        left_slot ? tensor_product(u, Mat2::identity()) : tensor_product(Mat2::identity(), u);
    return full * rho * adjoint(full);
}

Strategy grid_strategy(const StrategyGrid& grid, Convention c, long index) {
    const GridPoint p = grid_point(grid, c, index);
    if (c == Convention::TwoParam) return TwoParamStrategy(p.theta, p.phi);
    return ThreeParamStrategy(p.theta, p.phi, p.psi);
}

// Best payoff a responder can reach against a fixed (already conjugated)
// state, together with the achieving grid strategy.
BestResponseResult best_against(const Mat4& rho_fixed, PlayerTag responder, double delta,
                                const StrategyGrid& grid, Convention convention,
                                const ClassicalPayoffs& payoffs) {
    const PayoffOperators ops = payoff_operators(MeasurementBasis(delta), payoffs);
    ScanProblem problem{rho_fixed, responder == PlayerTag::Alice ? ops.alice : ops.bob,
                        responder == PlayerTag::Alice, grid, convention};
    const ScanResult r = scan_best_payoff(problem);
    return {grid_strategy(grid, convention, r.best_index), r.best_payoff};
}

}  // namespace

Convention convention_of(const Strategy& s) {
    return std::holds_alternative<TwoParamStrategy>(s) ? Convention::TwoParam
                                                       : Convention::ThreeParam;
}

Mat2 strategy_unitary(const Strategy& s) {
    if (const auto* two = std::get_if<TwoParamStrategy>(&s)) return unitary_2p(*two);
    return unitary_3p(std::get<ThreeParamStrategy>(s));
}

std::string strategy_label(const Strategy& s) {
    std::ostringstream out;
    if (const auto* two = std::get_if<TwoParamStrategy>(&s)) {
        if (two->theta == 0.0 && two->phi == 0.0) return "C";
        if (two->theta == kPi && two->phi == 0.0) return "D";
        if (two->theta == 0.0 && two->phi == kPi / 2.0) return "Q";
        out << "(theta=" << two->theta << ", phi=" << two->phi << ")";
    } else {
        const auto& three = std::get<ThreeParamStrategy>(s);
        if (three.theta == 0.0 && three.phi == 0.0 && three.psi == 0.0) return "C";
        if (three.theta == kPi && three.phi == 0.0 && three.psi == -kPi / 2.0) return "D";
        if (three.theta == 0.0 && three.phi == kPi / 2.0 && three.psi == 0.0) return "Q";
        out << "(theta=" << three.theta << ", phi=" << three.phi << ", psi=" << three.psi << ")";
    }
    return out.str();
}

Strategy named_strategy(char name, Convention c) {
    const bool two = c == Convention::TwoParam;
    switch (name) {
        case 'C':
            return two ? Strategy(TwoParamStrategy::cooperate())
                       : Strategy(ThreeParamStrategy(0.0, 0.0, 0.0));
        case 'D':
            return two ? Strategy(TwoParamStrategy::defect())
                       : Strategy(ThreeParamStrategy(kPi, 0.0, -kPi / 2.0));
        case 'Q':
            return two ? Strategy(TwoParamStrategy::quantum())
                       : Strategy(ThreeParamStrategy(0.0, kPi / 2.0, 0.0));
        default:
            throw InvalidParameter(std::string("unknown named strategy '") + name +
                                   "'; legal names are C, D, Q");
    }
}

std::string to_string(PlayerTag p) { return p == PlayerTag::Alice ? "A" : "B"; }

BestResponseResult best_response(const Strategy& opponent, PlayerTag player, double mu,
                                 double delta, const StrategyGrid& grid, Convention convention,
                                 const ClassicalPayoffs& payoffs) {
    const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(mu));
    const Mat4 rho_fixed = conjugate_one_side(rho.mat(), strategy_unitary(opponent),
                                              player != PlayerTag::Alice);
    return best_against(rho_fixed, player, delta, grid, convention, payoffs);
}

EquilibriumReport verify_pure_ne(const Profile& profile, double mu, double delta,
                                 const StrategyGrid& grid, double tolerance,
                                 Convention convention, const ClassicalPayoffs& payoffs) {
    if (!(tolerance >= 0.0))
        throw InvalidParameter("tolerance must be >= 0");
    const MeasurementBasis basis(delta);
    const Mat2 uA = strategy_unitary(profile.first);
    const Mat2 uB = strategy_unitary(profile.second);
    const PayoffPair base = game_payoffs(mu, uA, uB, basis, payoffs);

    const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(mu));
    const Mat4 rho_b_fixed = conjugate_one_side(rho.mat(), uB, false);
    const Mat4 rho_a_fixed = conjugate_one_side(rho.mat(), uA, true);

    const BestResponseResult bestA =
        best_against(rho_b_fixed, PlayerTag::Alice, delta, grid, convention, payoffs);
    const BestResponseResult bestB =
        best_against(rho_a_fixed, PlayerTag::Bob, delta, grid, convention, payoffs);

    const double gainA = bestA.payoff - base.alice;
    const double gainB = bestB.payoff - base.bob;

    const bool bob_worst = gainB > gainA;
    EquilibriumReport report{profile,
                             std::max(gainA, gainB) <= tolerance,
                             std::max(gainA, gainB),
                             bob_worst ? PlayerTag::Bob : PlayerTag::Alice,
                             bob_worst ? bestB.strategy : bestA.strategy,
                             tolerance,
                             base};
    return report;
}

std::vector<Profile> named_candidates(Convention c) {
    std::vector<Profile> out;
    for (char a : {'C', 'D', 'Q'})
        for (char b : {'C', 'D', 'Q'}) out.emplace_back(named_strategy(a, c), named_strategy(b, c));
    return out;
}

std::vector<EquilibriumReport> enumerate_pure_ne(double mu, double delta,
                                                 const StrategyGrid& grid,
                                                 const std::vector<Profile>& candidates,
                                                 double tolerance, Convention convention,
                                                 const ClassicalPayoffs& payoffs) {
    if (candidates.empty()) throw InvalidParameter("candidate list must be non-empty");
    std::vector<EquilibriumReport> out;
    out.reserve(candidates.size());
    for (const Profile& p : candidates)
        out.push_back(verify_pure_ne(p, mu, delta, grid, tolerance, convention, payoffs));
    return out;
}

std::vector<GridEquilibrium> enumerate_grid_ne(double mu, double delta, const StrategyGrid& grid,
                                               double tolerance, Convention convention,
                                               const ClassicalPayoffs& payoffs) {
    const long n = grid_point_count(grid, convention);
    const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(mu));
    const PayoffOperators ops = payoff_operators(MeasurementBasis(delta), payoffs);

    std::vector<Mat2> unitaries(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i)
        unitaries[static_cast<size_t>(i)] =
            grid_unitary(convention, grid_point(grid, convention, i));

    // Row maxima of Bob's payoff (Bob varies, Alice fixed).
    std::vector<double> row_max_bob(static_cast<size_t>(n));
    std::vector<double> buffer(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        const Mat4 fixed = conjugate_one_side(rho.mat(), unitaries[static_cast<size_t>(i)], true);
        ScanProblem problem{fixed, ops.bob, false, grid, convention};
        scan_all_payoffs(problem, buffer.data());
        row_max_bob[static_cast<size_t>(i)] = *std::max_element(buffer.begin(), buffer.end());
    }

    // Per Bob strategy: Alice's payoff column (for the column max) and
    // Bob's payoff column, then the equilibrium test.
    struct Hit {
        long i, j;
        PayoffPair payoffs;
    };
    std::vector<Hit> hits;
    std::vector<double> col_alice(static_cast<size_t>(n));
    std::vector<double> col_bob(static_cast<size_t>(n));
    for (long j = 0; j < n; ++j) {
        const Mat4 fixed = conjugate_one_side(rho.mat(), unitaries[static_cast<size_t>(j)], false);
        ScanProblem alice_problem{fixed, ops.alice, true, grid, convention};
        ScanProblem bob_problem{fixed, ops.bob, true, grid, convention};
        scan_all_payoffs(alice_problem, col_alice.data());
        scan_all_payoffs(bob_problem, col_bob.data());
        const double col_max_alice = *std::max_element(col_alice.begin(), col_alice.end());
        for (long i = 0; i < n; ++i) {
            const double pa = col_alice[static_cast<size_t>(i)];
            const double pb = col_bob[static_cast<size_t>(i)];
            if (pa >= col_max_alice - tolerance && pb >= row_max_bob[static_cast<size_t>(i)] - tolerance)
                hits.push_back({i, j, {pa, pb}});
        }
    }
    // Deterministic order: Alice grid index major, then Bob's.
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    std::vector<GridEquilibrium> out;
    out.reserve(hits.size());
    for (const Hit& h : hits)
        out.push_back({{grid_strategy(grid, convention, h.i), grid_strategy(grid, convention, h.j)},
                       h.payoffs});
    return out;
}

std::string to_string(ThresholdDirection d) {
    return d == ThresholdDirection::NeAbove ? "ne_above" : "ne_below";
}

std::string to_string(ThresholdRegion r) {
    switch (r) {
        case ThresholdRegion::Boundary: return "boundary";
        case ThresholdRegion::AlwaysNe: return "always_ne";
        case ThresholdRegion::NeverNe: return "never_ne";
    }
    return "?";
}

ThresholdResult ne_threshold(const Profile& profile, double delta, const StrategyGrid& grid,
                             std::optional<ThresholdDirection> expected, double bisect_tol,
                             Convention convention, double ne_tolerance,
                             const ClassicalPayoffs& payoffs) {
    if (!(bisect_tol > 0.0)) throw InvalidParameter("bisection tolerance must be > 0");

    auto indicator = [&](double mu) {
        return verify_pure_ne(profile, mu, delta, grid, ne_tolerance, convention, payoffs).is_ne;
    };

    // Monotonicity is verified empirically before bisecting.
    constexpr int kScanPoints = 101;
    std::array<bool, kScanPoints> flags{};
    for (int k = 0; k < kScanPoints; ++k)
        flags[static_cast<size_t>(k)] = indicator(static_cast<double>(k) / (kScanPoints - 1));

    int transitions = 0;
    int flip_at = -1;
    for (int k = 0; k + 1 < kScanPoints; ++k)
        if (flags[static_cast<size_t>(k)] != flags[static_cast<size_t>(k + 1)]) {
            ++transitions;
            flip_at = k;
        }

    if (transitions > 1) {
        std::ostringstream msg;
        msg << "NE indicator changes sign " << transitions
            << " times over mu in [0, 1]; bisection needs a monotone indicator";
        throw NotMonotone(msg.str());
    }

    ThresholdResult result{};
    if (transitions == 0) {
        result.region = flags[0] ? ThresholdRegion::AlwaysNe : ThresholdRegion::NeverNe;
        result.mu_star = flags[0] ? 0.0 : 1.0;
        result.direction = expected.value_or(ThresholdDirection::NeAbove);
        return result;
    }

    double lo = static_cast<double>(flip_at) / (kScanPoints - 1);
    double hi = static_cast<double>(flip_at + 1) / (kScanPoints - 1);
    const bool lo_flag = flags[static_cast<size_t>(flip_at)];
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (indicator(mid) == lo_flag)
            lo = mid;
        else
            hi = mid;
    }

    result.mu_star = 0.5 * (lo + hi);
    result.region = ThresholdRegion::Boundary;
    result.direction = flags[kScanPoints - 1] ? ThresholdDirection::NeAbove
                                              : ThresholdDirection::NeBelow;
    if (expected && *expected != result.direction) {
        std::ostringstream msg;
        msg << "direction: expected " << to_string(*expected) << " but the profile is NE "
            << (result.direction == ThresholdDirection::NeAbove ? "above" : "below")
            << " mu = " << result.mu_star;
        throw InvalidParameter(msg.str());
    }
    return result;
}

MixedStrategy MixedStrategy::of(std::vector<std::pair<Strategy, double>> support) {
    if (support.empty()) throw InvalidParameter("mixed strategy support must be non-empty");
    double sum = 0.0;
    for (const auto& [s, p] : support) {
        (void)s;
        if (!std::isfinite(p) || p < 0.0)
            throw InvalidParameter("mixed strategy probabilities must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol::kMixedProbabilitySum) {
        std::ostringstream msg;
        msg << "mixed strategy probabilities sum to " << sum << "; must equal 1 within "
            << tol::kMixedProbabilitySum;
        throw InvalidParameter(msg.str());
    }
    MixedStrategy m;
    m.support = std::move(support);
    return m;
}

MixedStrategy MixedStrategy::pure(Strategy s) { return of({{std::move(s), 1.0}}); }

PayoffPair expected_payoff_mixed(const MixedStrategy& a, const MixedStrategy& b, double mu,
                                 double delta, const ClassicalPayoffs& payoffs) {
    const MeasurementBasis basis(delta);
    PayoffPair total{0.0, 0.0};
    for (const auto& [sa, pa] : a.support)
        for (const auto& [sb, pb] : b.support) {
            const PayoffPair v =
                game_payoffs(mu, strategy_unitary(sa), strategy_unitary(sb), basis, payoffs);
            total.alice += pa * pb * v.alice;
            total.bob += pa * pb * v.bob;
        }
    return total;
}

MixedEquilibriumReport verify_mixed_ne(const MixedStrategy& a, const MixedStrategy& b, double mu,
                                       double delta, const StrategyGrid& grid, double tolerance,
                                       Convention convention, const ClassicalPayoffs& payoffs) {
    if (!(tolerance >= 0.0)) throw InvalidParameter("tolerance must be >= 0");
    const MeasurementBasis basis(delta);
    const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(mu));
    const PayoffPair average = expected_payoff_mixed(a, b, mu, delta, payoffs);

    // A pure deviation against a mixture sees the probability-weighted
    // average of the conjugated states.
    Mat4 mixed_b = Mat4::zero();
    for (const auto& [sb, pb] : b.support)
        mixed_b = mixed_b + cx{pb} * conjugate_one_side(rho.mat(), strategy_unitary(sb), false);
    Mat4 mixed_a = Mat4::zero();
    for (const auto& [sa, pa] : a.support)
        mixed_a = mixed_a + cx{pa} * conjugate_one_side(rho.mat(), strategy_unitary(sa), true);

    const BestResponseResult bestA =
        best_against(mixed_b, PlayerTag::Alice, delta, grid, convention, payoffs);
    const BestResponseResult bestB =
        best_against(mixed_a, PlayerTag::Bob, delta, grid, convention, payoffs);

    const double gainA = bestA.payoff - average.alice;
    const double gainB = bestB.payoff - average.bob;
    const bool bob_worst = gainB > gainA;

    MixedEquilibriumReport report{std::max(gainA, gainB) <= tolerance,
                                  std::max(gainA, gainB),
                                  bob_worst ? PlayerTag::Bob : PlayerTag::Alice,
                                  bob_worst ? bestB.strategy : bestA.strategy,
                                  tolerance,
                                  average,
                                  {}};
    for (const auto& [sa, pa] : a.support) {
        (void)pa;
        for (const auto& [sb, pb] : b.support) {
            (void)pb;
            report.components.push_back(
                game_payoffs(mu, strategy_unitary(sa), strategy_unitary(sb), basis, payoffs));
        }
    }
    return report;
}

std::pair<MixedStrategy, MixedStrategy> mixed_ne_profile(double psi, double phi) {
    MixedStrategy a = MixedStrategy::of({{ThreeParamStrategy(0.0, 0.0, psi), 0.5},
                                         {ThreeParamStrategy(0.0, kPi / 2.0, psi), 0.5}});
    MixedStrategy b = MixedStrategy::of({{ThreeParamStrategy(kPi, phi, 0.0), 0.5},
                                         {ThreeParamStrategy(kPi, phi, kPi / 2.0), 0.5}});
    return {std::move(a), std::move(b)};
}

}  // namespace qdilemma
