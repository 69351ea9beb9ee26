#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "qdilemma/channel.hpp"
#include "qdilemma/equilibrium.hpp"
#include "qdilemma/errors.hpp"
#include "qdilemma/rng.hpp"
#include "qdilemma/scan.hpp"

using namespace qdilemma;

namespace {

constexpr double kPi = std::numbers::pi;

Strategy named_2p(char c) { return named_strategy(c, Convention::TwoParam); }

Profile profile_2p(char a, char b) { return {named_2p(a), named_2p(b)}; }

ScanProblem deviation_problem(const Profile& profile, PlayerTag responder, double mu,
                              double delta, const StrategyGrid& grid, Convention conv) {
    const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(mu));
    const Mat2 opponent = strategy_unitary(responder == PlayerTag::Alice ? profile.second
                                                                         : profile.first);
    const Mat4 embedded = responder == PlayerTag::Alice
                              ? tensor_product(Mat2::identity(), opponent)
                              : tensor_product(opponent, Mat2::identity());
    const Mat4 fixed = embedded * rho.mat() * adjoint(embedded);
    const PayoffOperators ops =
        payoff_operators(MeasurementBasis(delta), ClassicalPayoffs::defaults());
    return ScanProblem{fixed, responder == PlayerTag::Alice ? ops.alice : ops.bob,
                       responder == PlayerTag::Alice, grid, conv};
}

double theta_of(const Strategy& s) {
    if (const auto* two = std::get_if<TwoParamStrategy>(&s)) return two->theta;
    return std::get<ThreeParamStrategy>(s).theta;
}

}  // namespace

TEST_CASE("strategy grid validation and named-point coverage") {
    CHECK_THROWS_AS(StrategyGrid(180, 91), InvalidParameter);  // even theta count
    CHECK_THROWS_AS(StrategyGrid(181, 90), InvalidParameter);  // even phi count
    CHECK_THROWS_AS(StrategyGrid(1, 91), InvalidParameter);
    CHECK_THROWS_AS(StrategyGrid(181, 91, 0), InvalidParameter);

    // The named points are exact grid values for any valid 2p grid.
    for (const StrategyGrid grid : {StrategyGrid(5, 3), StrategyGrid::two_param_default()}) {
        std::set<std::pair<double, double>> points;
        for (long i = 0; i < grid_point_count(grid, Convention::TwoParam); ++i) {
            const GridPoint p = grid_point(grid, Convention::TwoParam, i);
            points.insert({p.theta, p.phi});
        }
        CHECK(points.count({0.0, 0.0}) == 1);            // C
        CHECK(points.count({kPi, 0.0}) == 1);            // D
        CHECK(points.count({0.0, kPi / 2.0}) == 1);      // Q
    }

    // The default 3p grid contains the operator-equivalent named triples.
    const StrategyGrid g3 = StrategyGrid::three_param_default();
    std::set<std::array<double, 3>> triples;
    for (long i = 0; i < grid_point_count(g3, Convention::ThreeParam); ++i) {
        const GridPoint p = grid_point(g3, Convention::ThreeParam, i);
        triples.insert({p.theta, p.phi, p.psi});
    }
    CHECK(triples.count({0.0, 0.0, 0.0}) == 1);
    CHECK(triples.count({kPi, 0.0, -kPi / 2.0}) == 1);
    CHECK(triples.count({0.0, kPi / 2.0, 0.0}) == 1);
}

TEST_CASE("scan kernel agrees with the trace pipeline at grid points") {
    Rng rng(301);
    for (Convention conv : {Convention::TwoParam, Convention::ThreeParam}) {
        const StrategyGrid grid =
            conv == Convention::TwoParam ? StrategyGrid(21, 11) : StrategyGrid(9, 9, 9);
        const double mu = 0.45, delta = 0.9;
        const Strategy opponent =
            conv == Convention::TwoParam
                ? Strategy(TwoParamStrategy(1.1, 0.4))
                : Strategy(ThreeParamStrategy(1.1, 0.4, -2.0));
        for (PlayerTag responder : {PlayerTag::Alice, PlayerTag::Bob}) {
            const Profile profile = responder == PlayerTag::Alice
                                        ? Profile{opponent, opponent}
                                        : Profile{opponent, opponent};
            const ScanProblem problem = deviation_problem(profile, responder, mu, delta, grid, conv);
            for (int k = 0; k < 40; ++k) {
                const long index =
                    static_cast<long>(rng.uniform01() *
                                      static_cast<double>(grid_point_count(grid, conv) - 1));
                const GridPoint p = grid_point(grid, conv, index);
                const Mat2 u = grid_unitary(conv, p);
                const Mat2 uo = strategy_unitary(opponent);
                const PayoffPair full = responder == PlayerTag::Alice
                                            ? game_payoffs(mu, u, uo, MeasurementBasis(delta))
                                            : game_payoffs(mu, uo, u, MeasurementBasis(delta));
                const double expected =
                    responder == PlayerTag::Alice ? full.alice : full.bob;
                CHECK(scan_eval_point(problem, index) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("serial and OpenMP scans return identical results") {
    for (Convention conv : {Convention::TwoParam, Convention::ThreeParam}) {
        const StrategyGrid grid =
            conv == Convention::TwoParam ? StrategyGrid(61, 31) : StrategyGrid(15, 15, 15);
        int case_index = 0;
        for (double mu : {0.0, 0.3, 1.0}) {
            const double delta = case_index++ % 2 == 0 ? kPi / 2 : 0.7;
            const Profile profile{named_strategy('Q', conv), named_strategy('D', conv)};
            for (PlayerTag responder : {PlayerTag::Alice, PlayerTag::Bob}) {
                const ScanProblem problem =
                    deviation_problem(profile, responder, mu, delta, grid, conv);
                const ScanResult serial = scan_best_payoff_serial(problem);
                const ScanResult parallel = scan_best_payoff_parallel(problem);
                CHECK(serial.best_index == parallel.best_index);
                CHECK(serial.best_payoff == parallel.best_payoff);
            }
        }
    }
}

TEST_CASE("QDILEMMA_THREADS caps the parallel kernel without changing results") {
    const StrategyGrid grid(41, 21);
    const ScanProblem problem = deviation_problem(profile_2p('Q', 'D'), PlayerTag::Alice, 0.8,
                                                  kPi / 2, grid, Convention::TwoParam);
    const ScanResult reference = scan_best_payoff_serial(problem);

    setenv("QDILEMMA_THREADS", "1", 1);
    const ScanResult capped = scan_best_payoff(problem);
    CHECK(capped.best_index == reference.best_index);
    CHECK(capped.best_payoff == reference.best_payoff);

    setenv("QDILEMMA_THREADS", "abc", 1);
    CHECK_THROWS_AS(thread_cap(), InvalidParameter);
    setenv("QDILEMMA_THREADS", "-2", 1);
    CHECK_THROWS_AS(thread_cap(), InvalidParameter);

    unsetenv("QDILEMMA_THREADS");
    CHECK(thread_cap() == 0);
}

TEST_CASE("best responses at pinned points") {
    const StrategyGrid grid = StrategyGrid::two_param_default();

    const BestResponseResult vs_d = best_response(named_2p('D'), PlayerTag::Alice, 1.0, kPi / 2,
                                                  grid, Convention::TwoParam);
    CHECK(strategy_label(vs_d.strategy) == "Q");
    CHECK(vs_d.payoff == doctest::Approx(5.0).epsilon(1e-9));

    const BestResponseResult vs_q = best_response(named_2p('Q'), PlayerTag::Alice, 1.0, kPi / 2,
                                                  grid, Convention::TwoParam);
    CHECK(strategy_label(vs_q.strategy) == "Q");
    CHECK(vs_q.payoff == doctest::Approx(3.0).epsilon(1e-9));

    // Against C in the product basis the best response is the defect row
    // (theta = pi; phi is payoff-irrelevant there).
    for (double mu : {0.0, 0.3, 1.0}) {
        const BestResponseResult vs_c =
            best_response(named_2p('C'), PlayerTag::Alice, mu, 0.0, grid, Convention::TwoParam);
        CHECK(theta_of(vs_c.strategy) == kPi);
        CHECK(vs_c.payoff == doctest::Approx(2.5).epsilon(1e-9));
    }
}

TEST_CASE("pure NE verification at pinned points") {
    const StrategyGrid grid = StrategyGrid::two_param_default();

    const EquilibriumReport qq_mid =
        verify_pure_ne(profile_2p('Q', 'Q'), 0.5, kPi / 2, grid, 1e-9, Convention::TwoParam);
    CHECK(qq_mid.is_ne);
    CHECK(qq_mid.payoffs.alice == doctest::Approx(2.5).epsilon(1e-12));

    const EquilibriumReport qq_low =
        verify_pure_ne(profile_2p('Q', 'Q'), 0.1, kPi / 2, grid, 1e-9, Convention::TwoParam);
    CHECK_FALSE(qq_low.is_ne);
    // The binding deviation is the defect row: gain (1 - 7 mu)/2 at theta = pi.
    CHECK(theta_of(qq_low.witness) == kPi);
    CHECK(qq_low.worst_deviation_gain == doctest::Approx(0.15).epsilon(1e-9));

    const EquilibriumReport dc =
        verify_pure_ne(profile_2p('D', 'C'), 0.3, 0.0, grid, 1e-9, Convention::TwoParam);
    CHECK(dc.is_ne);
    CHECK(dc.payoffs.alice == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(dc.payoffs.bob == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("NE regimes over the named candidates") {
    const StrategyGrid grid = StrategyGrid::two_param_default();
    const auto candidates = named_candidates(Convention::TwoParam);
    REQUIRE(candidates.size() == 9);

    const auto ne_labels = [&](double mu) {
        std::set<std::pair<std::string, std::string>> out;
        for (const auto& r :
             enumerate_pure_ne(mu, kPi / 2, grid, candidates, 1e-9, Convention::TwoParam))
            if (r.is_ne)
                out.insert({strategy_label(r.profile.first), strategy_label(r.profile.second)});
        return out;
    };

    CHECK(ne_labels(1.0) == std::set<std::pair<std::string, std::string>>{{"Q", "Q"}});
    CHECK(ne_labels(0.5) == std::set<std::pair<std::string, std::string>>{{"Q", "Q"}});
    CHECK(ne_labels(0.05) ==
          std::set<std::pair<std::string, std::string>>{{"Q", "D"}, {"D", "Q"}});
    CHECK(ne_labels(0.0) == std::set<std::pair<std::string, std::string>>{
                                {"Q", "D"}, {"D", "Q"}, {"C", "D"}, {"D", "C"}});
}

TEST_CASE("soundness: NE verdicts survive an independent serial re-check") {
    const StrategyGrid grid = StrategyGrid::two_param_default();
    const auto reports = enumerate_pure_ne(0.05, kPi / 2, grid, named_candidates(Convention::TwoParam),
                                           1e-9, Convention::TwoParam);
    for (const auto& r : reports) {
        if (!r.is_ne) continue;
        for (PlayerTag responder : {PlayerTag::Alice, PlayerTag::Bob}) {
            const ScanProblem problem =
                deviation_problem(r.profile, responder, 0.05, kPi / 2, grid, Convention::TwoParam);
            const double base =
                responder == PlayerTag::Alice ? r.payoffs.alice : r.payoffs.bob;
            const ScanResult best = scan_best_payoff_serial(problem);
            CHECK(best.best_payoff - base <= 1e-9);
        }
    }
}

TEST_CASE("grid refinement does not flip the pinned NE verdicts") {
    const StrategyGrid base(91, 45);
    const StrategyGrid doubled(181, 89);
    const struct {
        Profile profile;
        double mu, delta;
    } cases[] = {
        {profile_2p('Q', 'Q'), 0.2, kPi / 2}, {profile_2p('Q', 'Q'), 1.0, kPi / 2},
        {profile_2p('Q', 'D'), 0.05, kPi / 2}, {profile_2p('D', 'Q'), 0.05, kPi / 2},
        {profile_2p('D', 'C'), 0.7, 0.0},      {profile_2p('C', 'D'), 0.7, 0.0},
    };
    for (const auto& k : cases) {
        CHECK(verify_pure_ne(k.profile, k.mu, k.delta, base, 1e-9, Convention::TwoParam).is_ne);
        CHECK(verify_pure_ne(k.profile, k.mu, k.delta, doubled, 1e-9, Convention::TwoParam).is_ne);
    }
}

TEST_CASE("decoherence thresholds") {
    const StrategyGrid grid = StrategyGrid::two_param_default();

    const ThresholdResult qq = ne_threshold(profile_2p('Q', 'Q'), kPi / 2, grid,
                                            ThresholdDirection::NeAbove, 1e-6,
                                            Convention::TwoParam);
    CHECK(qq.region == ThresholdRegion::Boundary);
    CHECK(qq.mu_star == doctest::Approx(1.0 / 7.0).epsilon(1e-5));
    CHECK(std::abs(qq.mu_star - 1.0 / 7.0) <= 1e-6);

    const ThresholdResult qd = ne_threshold(profile_2p('Q', 'D'), kPi / 2, grid,
                                            ThresholdDirection::NeBelow, 1e-6,
                                            Convention::TwoParam);
    CHECK(qd.region == ThresholdRegion::Boundary);
    CHECK(std::abs(qd.mu_star - 1.0 / 7.0) <= 1e-6);

    // The two boundaries are the same bifurcation point.
    CHECK(std::abs(qq.mu_star - qd.mu_star) <= 2e-6);

    const ThresholdResult dc = ne_threshold(profile_2p('D', 'C'), 0.0, grid, std::nullopt, 1e-6,
                                            Convention::TwoParam);
    CHECK(dc.region == ThresholdRegion::AlwaysNe);
    CHECK(dc.mu_star == 0.0);

    // A declared direction contradicting the scan is rejected.
    CHECK_THROWS_AS(ne_threshold(profile_2p('Q', 'Q'), kPi / 2, grid,
                                 ThresholdDirection::NeBelow, 1e-6, Convention::TwoParam),
                    InvalidParameter);
}

TEST_CASE("three-parameter game has no pure NE at mu = 1") {
    const StrategyGrid grid(31, 31, 31);
    Rng rng(302);
    for (int k = 0; k < 50; ++k) {
        const ThreeParamStrategy sa(rng.uniform(0, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi));
        const ThreeParamStrategy sb(rng.uniform(0, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi));
        const EquilibriumReport r = verify_pure_ne({Strategy(sa), Strategy(sb)}, 1.0, kPi / 2,
                                                   grid, 1e-9, Convention::ThreeParam);
        CHECK_FALSE(r.is_ne);
        CHECK(r.worst_deviation_gain > 0.05);  // counter-strategies gain macroscopically
    }
}

TEST_CASE("mixed strategies") {
    SUBCASE("validation") {
        CHECK_THROWS_AS(MixedStrategy::of({}), InvalidParameter);
        CHECK_THROWS_AS(MixedStrategy::of({{named_2p('C'), 0.6}, {named_2p('D'), 0.5}}),
                        InvalidParameter);
        CHECK_THROWS_AS(MixedStrategy::of({{named_2p('C'), -0.1}, {named_2p('D'), 1.1}}),
                        InvalidParameter);
    }

    SUBCASE("point masses reduce to the trace pipeline") {
        const MixedStrategy a = MixedStrategy::pure(named_2p('Q'));
        const MixedStrategy b = MixedStrategy::pure(named_2p('D'));
        const PayoffPair mixed = expected_payoff_mixed(a, b, 0.7, kPi / 2);
        const PayoffPair pure = game_payoffs(0.7, strategy_unitary(named_2p('Q')),
                                             strategy_unitary(named_2p('D')), MeasurementBasis(kPi / 2));
        CHECK(mixed.alice == pure.alice);
        CHECK(mixed.bob == pure.bob);
    }

    SUBCASE("the equal-weight mix is decoherence independent") {
        for (double psi : {0.0, 0.3, -2.0}) {
            for (double phi : {0.0, 1.0}) {
                const auto [a, b] = mixed_ne_profile(psi, phi);
                for (double mu : {0.0, 0.4, 1.0}) {
                    for (double delta : {0.0, 0.9, kPi / 2}) {
                        const PayoffPair avg = expected_payoff_mixed(a, b, mu, delta);
                        CHECK(avg.alice == doctest::Approx(2.5).epsilon(1e-9));
                        CHECK(avg.bob == doctest::Approx(2.5).epsilon(1e-9));
                    }
                }
            }
        }
    }

    SUBCASE("mixed NE verification") {
        const StrategyGrid grid(31, 31, 31);
        const auto [a, b] = mixed_ne_profile(0.3, 0.7);

        const MixedEquilibriumReport top =
            verify_mixed_ne(a, b, 1.0, kPi / 2, grid, 1e-9, Convention::ThreeParam);
        CHECK(top.is_ne);
        CHECK(top.average.alice == doctest::Approx(2.5).epsilon(1e-9));
        REQUIRE(top.components.size() == 4);
        // Alice's component multiset at mu = 1, delta = pi/2 is {5, 5, 0, 0}.
        std::multiset<int> rounded;
        for (const auto& p : top.components) rounded.insert(static_cast<int>(std::lround(p.alice * 2)));
        CHECK(rounded == std::multiset<int>{0, 0, 10, 10});

        const MixedEquilibriumReport bottom =
            verify_mixed_ne(a, b, 0.0, 0.8, grid, 1e-9, Convention::ThreeParam);
        CHECK(bottom.is_ne);
        for (const auto& p : bottom.components) {
            CHECK(p.alice == doctest::Approx(2.5).epsilon(1e-9));
            CHECK(p.bob == doctest::Approx(2.5).epsilon(1e-9));
        }

        // A degenerate pure (C, C) "mix" is refuted: defecting gains 5 - 3 = 2.
        const MixedEquilibriumReport cc = verify_mixed_ne(
            MixedStrategy::pure(named_2p('C')), MixedStrategy::pure(named_2p('C')), 1.0, kPi / 2,
            StrategyGrid::two_param_default(), 1e-9, Convention::TwoParam);
        CHECK_FALSE(cc.is_ne);
        CHECK(cc.worst_deviation_gain == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("full-grid enumeration on a coarse grid") {
    const StrategyGrid coarse(19, 11);

    const auto at_top = enumerate_grid_ne(1.0, kPi / 2, coarse, 1e-9, Convention::TwoParam);
    REQUIRE(at_top.size() == 1);
    CHECK(strategy_label(at_top[0].profile.first) == "Q");
    CHECK(strategy_label(at_top[0].profile.second) == "Q");
    CHECK(at_top[0].payoffs.alice == doctest::Approx(3.0).epsilon(1e-12));

    // Below the bifurcation the defect row (theta = pi, any phi) pairs with
    // Q: one grid equilibrium per phi sample on the defect side.
    const auto below = enumerate_grid_ne(0.05, kPi / 2, coarse, 1e-9, Convention::TwoParam);
    CHECK(below.size() == 2 * 11);
    for (const auto& hit : below) {
        const double ta = theta_of(hit.profile.first);
        const double tb = theta_of(hit.profile.second);
        const bool q_vs_defect_row = (strategy_label(hit.profile.first) == "Q" && tb == kPi) ||
                                     (strategy_label(hit.profile.second) == "Q" && ta == kPi);
        CHECK(q_vs_defect_row);
    }
}
