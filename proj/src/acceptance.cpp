#include "qdilemma/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qdilemma/channel.hpp"
#include "qdilemma/equilibrium.hpp"
#include "qdilemma/errors.hpp"
#include "qdilemma/rng.hpp"

namespace qdilemma {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr uint64_t kProfileSeed = 424242;   // criterion 6 random profiles
constexpr uint64_t kSampleSeed = 20250810;  // criteria 9 and 10 random draws

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    double worst = 0.0;
    std::string note;

    void expect(bool condition, double err, const std::string& what) {
        worst = std::max(worst, err);
        if (!condition && ok) {
            ok = false;
            note = what;
        }
    }
};

std::string profile_text(const Profile& p) {
    return "(" + strategy_label(p.first) + "," + strategy_label(p.second) + ")";
}

CriterionResult finish(int id, const std::string& name, double budget, Clock::time_point start,
                       const Check& c, const std::string& summary) {
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    CriterionResult r{id, name, c.ok && seconds < budget, seconds, budget, ""};
    std::ostringstream detail;
    detail << summary;
    if (!c.note.empty()) detail << "; first failure: " << c.note;
    if (seconds >= budget) detail << "; runtime " << seconds << " s exceeded budget " << budget << " s";
    r.detail = detail.str();
    return r;
}

CriterionResult criterion_qq_payoff_law() {
    const auto start = Clock::now();
    Check c;
    const MeasurementBasis entangled(kPi / 2.0);
    const Mat2 q = unitary_2p(TwoParamStrategy::quantum());
    for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const PayoffPair p = game_payoffs(mu, q, q, entangled);
        const double err = std::max(std::abs(p.alice - (2.0 + mu)), std::abs(p.bob - (2.0 + mu)));
        std::ostringstream what;
        what << "mu=" << mu << " payoff (" << p.alice << ", " << p.bob << ") vs 2+mu";
        c.expect(err <= 1e-9, err, what.str());
    }
    std::ostringstream summary;
    summary << "(Q,Q) at delta=pi/2 equals (2+mu, 2+mu); worst |err| = " << c.worst
            << ", tol 1e-9";
    return finish(1, "qq-payoff-law", 1.0, start, c, summary.str());
}

CriterionResult criterion_classical_limit() {
    const auto start = Clock::now();
    Check c;
    const MeasurementBasis entangled(kPi / 2.0);
    const Mat2 cc = unitary_2p(TwoParamStrategy::cooperate());
    const Mat2 dd = unitary_2p(TwoParamStrategy::defect());
    const struct {
        const Mat2 &a, &b;
        double ea, eb;
        const char* name;
    } cases[] = {{cc, cc, 3, 3, "(C,C)"},
                 {cc, dd, 0, 5, "(C,D)"},
                 {dd, cc, 5, 0, "(D,C)"},
                 {dd, dd, 1, 1, "(D,D)"}};
    for (const auto& k : cases) {
        const PayoffPair p = game_payoffs(1.0, k.a, k.b, entangled);
        const double err = std::max(std::abs(p.alice - k.ea), std::abs(p.bob - k.eb));
        c.expect(err <= 1e-12, err, std::string(k.name) + " deviates from the classical bimatrix");
    }
    std::ostringstream summary;
    summary << "mu=1, delta=pi/2 reproduces (3,3),(0,5),(5,0),(1,1); worst |err| = " << c.worst
            << ", tol 1e-12";
    return finish(2, "classical-limit", 1.0, start, c, summary.str());
}

CriterionResult criterion_bifurcation_threshold() {
    const auto start = Clock::now();
    Check c;
    const StrategyGrid grid = StrategyGrid::two_param_default();
    const Profile qq{named_strategy('Q', Convention::TwoParam),
                     named_strategy('Q', Convention::TwoParam)};
    const Profile qd{named_strategy('Q', Convention::TwoParam),
                     named_strategy('D', Convention::TwoParam)};
    const ThresholdResult t_qq = ne_threshold(qq, kPi / 2.0, grid, ThresholdDirection::NeAbove,
                                              1e-6, Convention::TwoParam);
    const ThresholdResult t_qd = ne_threshold(qd, kPi / 2.0, grid, ThresholdDirection::NeBelow,
                                              1e-6, Convention::TwoParam);
    const double expected = 1.0 / 7.0;
    c.expect(t_qq.region == ThresholdRegion::Boundary &&
                 std::abs(t_qq.mu_star - expected) <= 1e-6,
             std::abs(t_qq.mu_star - expected), "(Q,Q) threshold off 1/7");
    c.expect(t_qd.region == ThresholdRegion::Boundary &&
                 std::abs(t_qd.mu_star - expected) <= 1e-6,
             std::abs(t_qd.mu_star - expected), "(Q,D) threshold off 1/7");
    std::ostringstream summary;
    summary << "mu*(Q,Q) = " << t_qq.mu_star << ", mu*(Q,D) = " << t_qd.mu_star
            << " vs 1/7 = " << expected << ", tol 1e-6";
    return finish(3, "bifurcation-threshold", 5.0, start, c, summary.str());
}

CriterionResult criterion_ne_regimes() {
    const auto start = Clock::now();
    Check c;
    const StrategyGrid grid = StrategyGrid::two_param_default();
    const auto candidates = named_candidates(Convention::TwoParam);

    const struct {
        double mu;
        std::set<std::pair<std::string, std::string>> expected;
    } regimes[] = {
        {0.5, {{"Q", "Q"}}},
        {0.05, {{"Q", "D"}, {"D", "Q"}}},
        {0.0, {{"Q", "D"}, {"D", "Q"}, {"C", "D"}, {"D", "C"}}},
    };
    std::ostringstream summary;
    summary << "NE sets over {C,D,Q}^2 at delta=pi/2, tol 1e-9:";
    for (const auto& regime : regimes) {
        const auto reports = enumerate_pure_ne(regime.mu, kPi / 2.0, grid, candidates, 1e-9,
                                               Convention::TwoParam);
        std::set<std::pair<std::string, std::string>> found;
        for (const auto& r : reports)
            if (r.is_ne)
                found.insert({strategy_label(r.profile.first), strategy_label(r.profile.second)});
        std::ostringstream what;
        what << "mu=" << regime.mu << " NE set {";
        for (const auto& [a, b] : found) what << "(" << a << "," << b << ")";
        what << "} differs from the expected set";
        c.expect(found == regime.expected, found == regime.expected ? 0.0 : 1.0, what.str());
        summary << " mu=" << regime.mu << " -> " << found.size() << " NE;";
    }
    return finish(4, "ne-regimes", 10.0, start, c, summary.str());
}

CriterionResult criterion_product_basis_ne() {
    const auto start = Clock::now();
    Check c;
    const StrategyGrid grid = StrategyGrid::two_param_default();
    for (char a : {'D', 'C'}) {
        const char b = a == 'D' ? 'C' : 'D';
        const Profile profile{named_strategy(a, Convention::TwoParam),
                              named_strategy(b, Convention::TwoParam)};
        for (double mu : {0.0, 0.5, 1.0}) {
            const EquilibriumReport r =
                verify_pure_ne(profile, mu, 0.0, grid, 1e-9, Convention::TwoParam);
            const double err =
                std::max(std::abs(r.payoffs.alice - 2.5), std::abs(r.payoffs.bob - 2.5));
            std::ostringstream what;
            what << profile_text(profile) << " at mu=" << mu
                 << (r.is_ne ? " payoff off (5/2, 5/2)" : " is not NE");
            c.expect(r.is_ne && err <= 1e-9, err, what.str());
        }
    }
    std::ostringstream summary;
    summary << "(D,C) and (C,D) at delta=0 are NE with payoffs (5/2, 5/2) for mu in {0, 0.5, 1};"
            << " worst |err| = " << c.worst << ", tol 1e-9";
    return finish(5, "product-basis-ne", 2.0, start, c, summary.str());
}

CriterionResult criterion_three_param_no_pure_ne() {
    const auto start = Clock::now();
    Check c;
    const StrategyGrid grid = StrategyGrid::three_param_default();
    Rng rng(kProfileSeed);
    int failures_to_reject = 0;
    double min_gain = 1e300;
    for (int k = 0; k < 50; ++k) {
        const ThreeParamStrategy sa(rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi));
        const ThreeParamStrategy sb(rng.uniform(0.0, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi));
        const EquilibriumReport r = verify_pure_ne({Strategy(sa), Strategy(sb)}, 1.0, kPi / 2.0,
                                                   grid, 1e-9, Convention::ThreeParam);
        min_gain = std::min(min_gain, r.worst_deviation_gain);
        if (r.is_ne) ++failures_to_reject;
        std::ostringstream what;
        what << "profile " << k << " reported as NE (gain " << r.worst_deviation_gain << ")";
        c.expect(!r.is_ne, 0.0, what.str());
    }
    std::ostringstream summary;
    summary << "50 seeded random 3p profiles at mu=1, delta=pi/2 all rejected ("
            << failures_to_reject << " NE verdicts); min deviation gain = " << min_gain
            << ", tol 1e-9";
    return finish(6, "three-param-no-pure-ne", 15.0, start, c, summary.str());
}

CriterionResult criterion_mixed_ne_invariance() {
    const auto start = Clock::now();
    Check c;
    const auto [mix_a, mix_b] = mixed_ne_profile(0.3, 0.7);
    for (int i = 0; i <= 10; ++i) {
        const double mu = i / 10.0;
        for (int j = 0; j <= 4; ++j) {
            const double delta = j * kPi / 8.0;
            const PayoffPair avg = expected_payoff_mixed(mix_a, mix_b, mu, delta);
            const double avg_err =
                std::max(std::abs(avg.alice - 2.5), std::abs(avg.bob - 2.5));
            std::ostringstream what;
            what << "average payoff (" << avg.alice << ", " << avg.bob << ") at mu=" << mu
                 << ", delta=" << delta;
            c.expect(avg_err <= 1e-9, avg_err, what.str());

            // Component payoffs as a multiset: (5/2)(1 +/- mu sin delta), twice each.
            const double hi = 2.5 * (1.0 + mu * std::sin(delta));
            const double lo = 2.5 * (1.0 - mu * std::sin(delta));
            std::vector<double> expected{lo, lo, hi, hi};
            const MeasurementBasis basis(delta);
            std::vector<double> alice, bob;
            for (const auto& [sa, pa] : mix_a.support) {
                (void)pa;
                for (const auto& [sb, pb] : mix_b.support) {
                    (void)pb;
                    const PayoffPair v = game_payoffs(mu, strategy_unitary(sa),
                                                      strategy_unitary(sb), basis);
                    alice.push_back(v.alice);
                    bob.push_back(v.bob);
                }
            }
            std::sort(alice.begin(), alice.end());
            std::sort(bob.begin(), bob.end());
            for (size_t k = 0; k < 4; ++k) {
                const double err = std::max(std::abs(alice[k] - expected[k]),
                                            std::abs(bob[k] - expected[k]));
                std::ostringstream multiset_what;
                multiset_what << "component multiset off at mu=" << mu << ", delta=" << delta;
                c.expect(err <= 1e-9, err, multiset_what.str());
            }
        }
    }
    std::ostringstream summary;
    summary << "equal-weight mix averages (5/2, 5/2) over the 11x5 (mu, delta) grid and the"
            << " component multiset is {(5/2)(1+mu sin d) x2, (5/2)(1-mu sin d) x2};"
            << " worst |err| = " << c.worst << ", tol 1e-9";
    return finish(7, "mixed-ne-invariance", 3.0, start, c, summary.str());
}

CriterionResult criterion_channel_oracle() {
    const auto start = Clock::now();
    Check c;
    const DensityMatrix4 rho0 = initial_state(DecoherenceParam::from_mu(1.0));
    for (double gt : {0.1, 0.5, 1.0, 3.0}) {
        const DensityMatrix4 integrated = integrate_master_equation(rho0, 1.0, gt, 1e-4);
        const DensityMatrix4 closed = initial_state(DecoherenceParam::from_gamma_t(gt));
        const double dist = frobenius_distance(integrated.mat(), closed.mat());
        std::ostringstream what;
        what << "gamma*t=" << gt << " Frobenius distance " << dist;
        c.expect(dist <= 1e-6, dist, what.str());
    }
    std::ostringstream summary;
    summary << "RK4 master-equation integration matches the closed form for gamma*t in"
            << " {0.1, 0.5, 1, 3} at dt=1e-4; worst distance = " << c.worst << ", tol 1e-6";
    return finish(8, "channel-oracle", 5.0, start, c, summary.str());
}

nlohmann::ordered_json report_json(const DiscrepancyReport& r) {
    nlohmann::ordered_json j;
    j["family"] = to_string(r.family);
    j["restriction"] = to_string(r.restriction);
    j["n_samples"] = r.n_samples;
    j["seed"] = r.seed;
    j["max_dev_alice"] = r.max_dev_alice;
    j["mean_dev_alice"] = r.mean_dev_alice;
    j["max_dev_bob"] = r.max_dev_bob;
    j["mean_dev_bob"] = r.mean_dev_bob;
    const auto sample_json = [](const WorstSample& w) {
        return nlohmann::ordered_json{{"theta_a", w.theta_a}, {"phi_a", w.phi_a},
                                      {"psi_a", w.psi_a},     {"theta_b", w.theta_b},
                                      {"phi_b", w.phi_b},     {"psi_b", w.psi_b},
                                      {"mu", w.mu},           {"delta", w.delta}};
    };
    j["worst_alice"] = sample_json(r.worst_alice);
    j["worst_bob"] = sample_json(r.worst_bob);
    return j;
}

CriterionResult criterion_formula_cross_validation(const AcceptanceOptions& options) {
    const auto start = Clock::now();
    Check c;

    const auto gated = [&](FormulaFamily fam, SampleRestriction restr, const char* label) {
        const DiscrepancyReport r = cross_validate(fam, 1000, kSampleSeed, restr);
        const double dev = std::max(r.max_dev_alice, r.max_dev_bob);
        c.expect(dev <= 1e-9, dev, std::string(label) + " deviates from the trace pipeline");
        return r;
    };

    std::vector<DiscrepancyReport> reports;
    reports.push_back(gated(FormulaFamily::Product, SampleRestriction::None, "product family"));
    reports.push_back(gated(FormulaFamily::TwoParamEntangled, SampleRestriction::EqualPhi,
                            "entangled family on phi_A=phi_B"));
    for (FormulaFamily fam : {FormulaFamily::TwoParamGeneral, FormulaFamily::TwoParamEntangled,
                              FormulaFamily::Product, FormulaFamily::ThreeParam})
        reports.push_back(gated(fam, SampleRestriction::ThetaZero,
                                "theta_A=theta_B=0 restriction"));

    // The unrestricted general and three-parameter families are archived,
    // not gated: the printed formulas carry sign inconsistencies that the
    // report quantifies.
    reports.push_back(cross_validate(FormulaFamily::TwoParamGeneral, 1000, kSampleSeed));
    reports.push_back(cross_validate(FormulaFamily::ThreeParam, 1000, kSampleSeed));
    const DiscrepancyReport& general = reports[reports.size() - 2];
    const DiscrepancyReport& three = reports.back();

    nlohmann::ordered_json archive;
    archive["schema_version"] = 1;
    archive["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) archive["reports"].push_back(report_json(r));
    std::ofstream out(options.report_path, std::ios::binary);
    out << archive.dump(2) << "\n";
    out.flush();
    c.expect(out.good(), 0.0, "failed to write " + options.report_path);

    std::ostringstream summary;
    summary << "gated families match the trace pipeline (worst = " << c.worst
            << ", tol 1e-9); unrestricted report archived to " << options.report_path
            << " (2p_general max dev A=" << general.max_dev_alice << " B=" << general.max_dev_bob
            << "; 3p max dev A=" << three.max_dev_alice << " B=" << three.max_dev_bob << ")";
    return finish(9, "formula-cross-validation", 5.0, start, c, summary.str());
}

CriterionResult criterion_property_suite() {
    const auto start = Clock::now();
    Check c;
    Rng rng(kSampleSeed);

    // Unitarity in both conventions.
    double worst_unitary = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Mat2 u2 = unitary_2p(TwoParamStrategy(rng.uniform(0, kPi), rng.uniform(0, kPi / 2)));
        const Mat2 u3 = unitary_3p(ThreeParamStrategy(rng.uniform(0, kPi), rng.uniform(-kPi, kPi),
                                                      rng.uniform(-kPi, kPi)));
        worst_unitary = std::max({worst_unitary, unitary_deviation(u2), unitary_deviation(u3)});
    }
    c.expect(worst_unitary <= 1e-12, worst_unitary, "strategy unitary fails U^dagger U = I");

    // Projector algebra over the delta ladder.
    double worst_proj = 0.0;
    for (int j = 0; j <= 4; ++j) {
        const ProjectorSet ps = measurement_projectors(MeasurementBasis(j * kPi / 8.0));
        const Mat4* projectors[] = {&ps.p00, &ps.p11, &ps.p10, &ps.p01};
        Mat4 sum = Mat4::zero();
        for (const Mat4* p : projectors) {
            worst_proj = std::max(worst_proj, frobenius_distance(*p * *p, *p));  // idempotent
            worst_proj = std::max(worst_proj, frobenius_distance(adjoint(*p), *p));  // Hermitian
            sum = sum + *p;
        }
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                worst_proj = std::max(
                    worst_proj, frobenius_distance(*projectors[a] * *projectors[b], Mat4::zero()));
        worst_proj = std::max(worst_proj, frobenius_distance(sum, Mat4::identity()));
    }
    c.expect(worst_proj <= 1e-12, worst_proj, "projector algebra violated");

    // Density-matrix validity along the decoherence ladder.
    double worst_eig = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(i / 10.0));
        const auto ev = hermitian_eigenvalues(rho.mat());
        worst_eig = std::max({worst_eig, -ev[0], ev[3] - 1.0,
                              std::abs(ev[0] + ev[1] + ev[2] + ev[3] - 1.0)});
    }
    c.expect(worst_eig <= 1e-9, worst_eig, "channel state fails the density-matrix invariants");

    // Player-swap symmetry and the payoff hull, both conventions.
    double worst_swap = 0.0;
    double worst_hull = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double mu = rng.uniform(0, 1);
        const MeasurementBasis basis(rng.uniform(0, kPi / 2));
        const TwoParamStrategy a2(rng.uniform(0, kPi), rng.uniform(0, kPi / 2));
        const TwoParamStrategy b2(rng.uniform(0, kPi), rng.uniform(0, kPi / 2));
        const PayoffPair p2 = game_payoffs(mu, unitary_2p(a2), unitary_2p(b2), basis);
        const PayoffPair p2s = game_payoffs(mu, unitary_2p(b2), unitary_2p(a2), basis);
        worst_swap = std::max(worst_swap, std::abs(p2.alice - p2s.bob));

        const ThreeParamStrategy a3(rng.uniform(0, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi));
        const ThreeParamStrategy b3(rng.uniform(0, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi));
        const PayoffPair p3 = game_payoffs(mu, unitary_3p(a3), unitary_3p(b3), basis);
        const PayoffPair p3s = game_payoffs(mu, unitary_3p(b3), unitary_3p(a3), basis);
        worst_swap = std::max(worst_swap, std::abs(p3.alice - p3s.bob));

        for (double v : {p2.alice, p2.bob, p3.alice, p3.bob})
            worst_hull = std::max({worst_hull, -v, v - 5.0});
    }
    c.expect(worst_swap <= 1e-10, worst_swap, "player-swap symmetry violated");
    c.expect(worst_hull <= 1e-10, worst_hull, "payoff escapes the classical hull [0, 5]");

    std::ostringstream summary;
    summary << "unitarity worst " << worst_unitary << " (tol 1e-12); projector algebra worst "
            << worst_proj << " (tol 1e-12); channel eigenvalues worst " << worst_eig
            << "; swap symmetry worst " << worst_swap << " (tol 1e-10); hull excess "
            << worst_hull << " (tol 1e-10)";
    return finish(10, "property-suite", 10.0, start, c, summary.str());
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& options) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_qq_payoff_law());
    results.push_back(criterion_classical_limit());
    results.push_back(criterion_bifurcation_threshold());
    results.push_back(criterion_ne_regimes());
    results.push_back(criterion_product_basis_ne());
    results.push_back(criterion_three_param_no_pure_ne());
    results.push_back(criterion_mixed_ne_invariance());
    results.push_back(criterion_channel_oracle());
    results.push_back(criterion_formula_cross_validation(options));
    results.push_back(criterion_property_suite());
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.passed; });
}

void print_criteria(const std::vector<CriterionResult>& results, std::ostream& out) {
    for (const CriterionResult& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " ("
            << r.seconds << " s, budget " << r.budget_seconds << " s)\n        " << r.detail
            << "\n";
    }
}

}  // namespace qdilemma
