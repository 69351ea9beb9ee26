// Command-line front end: evaluate payoffs, sweep parameters to CSV,
// enumerate Nash equilibria, bisect the decoherence threshold, verify the
// mixed equilibrium, run the channel oracle, and execute the full
// verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid parameter,
// 3 unwritable output path, 4 non-monotone NE indicator.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdilemma/acceptance.hpp"
#include "qdilemma/channel.hpp"
#include "qdilemma/equilibrium.hpp"
#include "qdilemma/errors.hpp"
#include "qdilemma/format.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qdilemma;

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    return parts;
}

// Shared run configuration; every value is validated before any
// computation starts.
struct Config {
    std::optional<double> mu_opt;
    std::optional<double> gamma_t_opt;
    std::string delta_text = "pi/2";
    std::string convention_text = "2p";
    std::string payoffs_text = "3,0,5,1";
    int n_theta = 0;  // 0 = convention default
    int n_phi = 0;
    int n_psi = 0;
    double tolerance = tol::kNeGain;
    uint64_t seed = 12345;
    bool json_output = false;

    Convention convention() const {
        if (convention_text == "2p") return Convention::TwoParam;
        if (convention_text == "3p") return Convention::ThreeParam;
        throw InvalidParameter("convention = '" + convention_text +
                               "' outside legal set {2p, 3p}");
    }

    double delta() const { return MeasurementBasis(parse_angle(delta_text)).delta; }

    ClassicalPayoffs payoffs() const {
        const auto parts = split(payoffs_text, ',');
        if (parts.size() != 4)
            throw InvalidParameter(
                "payoffs = '" + payoffs_text +
                "' must be four comma-separated numbers: reward,sucker,temptation,punishment");
        return ClassicalPayoffs::make(parse_angle(parts[0]), parse_angle(parts[1]),
                                      parse_angle(parts[2]), parse_angle(parts[3]));
    }

    double mu() const {
        if (mu_opt && gamma_t_opt)
            throw InvalidParameter("mu and gamma-t are mutually exclusive; provide exactly one");
        if (mu_opt) return DecoherenceParam::from_mu(*mu_opt).mu;
        if (gamma_t_opt) return DecoherenceParam::from_gamma_t(*gamma_t_opt).mu;
        throw InvalidParameter("one of --mu (range [0, 1]) or --gamma-t (range [0, inf)) is required");
    }

    StrategyGrid grid(Convention c) const {
        StrategyGrid g = c == Convention::TwoParam ? StrategyGrid::two_param_default()
                                                   : StrategyGrid::three_param_default();
        return StrategyGrid(n_theta > 0 ? n_theta : g.n_theta, n_phi > 0 ? n_phi : g.n_phi,
                            n_psi > 0 ? n_psi : g.n_psi);
    }

    json to_json(const std::string& command) const {
        json j;
        j["command"] = command;
        if (mu_opt) j["mu"] = *mu_opt;
        if (gamma_t_opt) j["gamma_t"] = *gamma_t_opt;
        j["delta"] = parse_angle(delta_text);
        j["convention"] = convention_text;
        j["payoffs"] = payoffs_text;
        j["tolerance"] = tolerance;
        j["seed"] = seed;
        return j;
    }
};

void add_config_options(CLI::App* cmd, Config& cfg, bool with_mu = true) {
    if (with_mu) {
        cmd->add_option("--mu", cfg.mu_opt, "decoherence level mu = e^{-2 gamma t}, range [0, 1]");
        cmd->add_option("--gamma-t", cfg.gamma_t_opt,
                        "dephasing exposure gamma*t >= 0 (alternative to --mu)");
    }
    cmd->add_option("--delta", cfg.delta_text,
                    "measurement-basis entanglement, radians in [0, pi/2] (literals pi/2, pi/4)");
    cmd->add_option("--convention", cfg.convention_text, "strategy set: 2p or 3p");
    cmd->add_option("--payoffs", cfg.payoffs_text,
                    "classical payoffs reward,sucker,temptation,punishment");
    cmd->add_option("--n-theta", cfg.n_theta, "grid samples for theta (odd; default per convention)");
    cmd->add_option("--n-phi", cfg.n_phi, "grid samples for phi (odd; default per convention)");
    cmd->add_option("--n-psi", cfg.n_psi, "grid samples for psi (3p only)");
    cmd->add_option("--tol", cfg.tolerance, "NE tolerance in payoff units (default 1e-9)");
    cmd->add_option("--seed", cfg.seed, "seed for randomized checks");
    cmd->add_flag("--json", cfg.json_output, "machine-readable output");
}

Strategy parse_strategy(const std::string& text, Convention c) {
    if (text == "C" || text == "D" || text == "Q") return named_strategy(text[0], c);
    const auto parts = split(text, ',');
    if (c == Convention::TwoParam) {
        if (parts.size() != 2)
            throw InvalidParameter("strategy '" + text +
                                   "' must be C, D, Q or theta,phi under the 2p convention");
        return TwoParamStrategy(parse_angle(parts[0]), parse_angle(parts[1]));
    }
    if (parts.size() != 3)
        throw InvalidParameter("strategy '" + text +
                               "' must be C, D, Q or theta,phi,psi under the 3p convention");
    return ThreeParamStrategy(parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2]));
}

json strategy_json(const Strategy& s) {
    json j;
    j["label"] = strategy_label(s);
    j["convention"] = to_string(convention_of(s));
    if (const auto* two = std::get_if<TwoParamStrategy>(&s)) {
        j["theta"] = two->theta;
        j["phi"] = two->phi;
    } else {
        const auto& three = std::get<ThreeParamStrategy>(s);
        j["theta"] = three.theta;
        j["phi"] = three.phi;
        j["psi"] = three.psi;
    }
    return j;
}

void emit(const json& document, bool json_output, const std::string& human) {
    if (json_output)
        std::cout << document.dump(2) << "\n";
    else
        std::cout << human;
}

json top_level(const Config& cfg, const std::string& command) {
    json j;
    j["schema_version"] = 1;
    j["config"] = cfg.to_json(command);
    j["results"] = json::array();
    return j;
}

// ---- payoff ----------------------------------------------------------

int cmd_payoff(const Config& cfg, const std::string& alice_text, const std::string& bob_text) {
    const Convention conv = cfg.convention();
    const double mu = cfg.mu();
    const double delta = cfg.delta();
    const ClassicalPayoffs payoffs = cfg.payoffs();
    const Strategy alice = parse_strategy(alice_text, conv);
    const Strategy bob = parse_strategy(bob_text, conv);

    const PayoffPair p = game_payoffs(mu, strategy_unitary(alice), strategy_unitary(bob),
                                      MeasurementBasis(delta), payoffs);

    struct FormResult {
        std::string family;
        PayoffPair value;
    };
    std::vector<FormResult> forms;
    if (conv == Convention::TwoParam) {
        const auto& a = std::get<TwoParamStrategy>(alice);
        const auto& b = std::get<TwoParamStrategy>(bob);
        forms.push_back({"2p_general", closed_form_2p_general(a, b, mu, delta)});
        if (std::abs(delta - kPi / 2.0) < 1e-12)
            forms.push_back({"2p_entangled", closed_form_2p_entangled(a, b, mu)});
        if (delta < 1e-12) forms.push_back({"product", closed_form_product(a, b, mu)});
    } else {
        forms.push_back({"3p", closed_form_3p(std::get<ThreeParamStrategy>(alice),
                                              std::get<ThreeParamStrategy>(bob), mu, delta)});
    }

    json doc = top_level(cfg, "payoff");
    json result;
    result["alice"] = strategy_json(alice);
    result["bob"] = strategy_json(bob);
    result["payoff_a"] = p.alice;
    result["payoff_b"] = p.bob;
    result["closed_forms"] = json::array();
    for (const auto& f : forms)
        result["closed_forms"].push_back({{"family", f.family},
                                          {"payoff_a", f.value.alice},
                                          {"payoff_b", f.value.bob},
                                          {"dev_a", std::abs(f.value.alice - p.alice)},
                                          {"dev_b", std::abs(f.value.bob - p.bob)}});
    doc["results"].push_back(result);

    std::ostringstream human;
    human << "profile (" << strategy_label(alice) << ", " << strategy_label(bob) << ")  mu = "
          << format_number(mu) << "  delta = " << format_number(delta) << "\n"
          << "payoff_a = " << format_number(p.alice) << "\n"
          << "payoff_b = " << format_number(p.bob) << "\n";
    for (const auto& f : forms)
        human << "closed_form[" << f.family << "] a = " << format_number(f.value.alice)
              << " (dev " << format_number(std::abs(f.value.alice - p.alice)) << ")  b = "
              << format_number(f.value.bob) << " (dev "
              << format_number(std::abs(f.value.bob - p.bob)) << ")\n";
    emit(doc, cfg.json_output, human.str());
    return 0;
}

// ---- sweep -----------------------------------------------------------

int cmd_sweep(const Config& cfg, const std::string& param, const std::string& start_text,
              const std::string& stop_text, const std::string& step_text,
              const std::string& alice_text, const std::string& bob_text,
              const std::string& out_path) {
    const Convention conv = cfg.convention();
    const ClassicalPayoffs payoffs = cfg.payoffs();
    const double start = parse_angle(start_text);
    const double stop = parse_angle(stop_text);
    const double step = parse_angle(step_text);

    if (param != "mu" && param != "delta" && param != "gamma_t")
        throw InvalidParameter("param = '" + param + "' outside legal set {mu, delta, gamma_t}");
    if (!(step > 0.0)) throw InvalidParameter("step must be > 0");
    if (start > stop) throw InvalidParameter("start must be <= stop");
    if ((stop - start) / step > 1e6)
        throw InvalidParameter("(stop-start)/step exceeds the 1e6 row limit");

    // Range checks up front, before any computation.
    if (param == "mu") {
        DecoherenceParam::from_mu(start);
        DecoherenceParam::from_mu(stop);
    } else if (param == "delta") {
        (void)MeasurementBasis(start);
        (void)MeasurementBasis(stop);
    } else {
        DecoherenceParam::from_gamma_t(start);
        DecoherenceParam::from_gamma_t(stop);
    }
    double fixed_mu = 0.0;
    double fixed_delta = 0.0;
    if (param != "mu" && param != "gamma_t") fixed_mu = cfg.mu();
    if (param != "delta") fixed_delta = cfg.delta();

    const Strategy alice = parse_strategy(alice_text, conv);
    const Strategy bob = parse_strategy(bob_text, conv);
    const Mat2 uA = strategy_unitary(alice);
    const Mat2 uB = strategy_unitary(bob);

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output path '" << out_path << "' for writing\n";
            return 3;
        }
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    const auto angle_columns = [&](const Strategy& s) {
        if (const auto* two = std::get_if<TwoParamStrategy>(&s))
            return format_number(two->theta) + "," + format_number(two->phi) + ",";
        const auto& three = std::get<ThreeParamStrategy>(s);
        return format_number(three.theta) + "," + format_number(three.phi) + "," +
               format_number(three.psi);
    };

    out << "param,value,theta_a,phi_a,psi_a,theta_b,phi_b,psi_b,payoff_a,payoff_b\n";
    const long rows = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < rows; ++i) {
        const double value = start + static_cast<double>(i) * step;
        double mu = fixed_mu;
        double delta = fixed_delta;
        if (param == "mu") mu = std::min(value, 1.0);
        if (param == "gamma_t") mu = DecoherenceParam::from_gamma_t(value).mu;
        if (param == "delta") delta = std::min(value, kPi / 2.0);
        const PayoffPair p = game_payoffs(mu, uA, uB, MeasurementBasis(delta), payoffs);
        out << param << ',' << format_number(value) << ',' << angle_columns(alice) << ','
            << angle_columns(bob) << ',' << format_number(p.alice) << ','
            << format_number(p.bob) << '\n';
    }
    out.flush();
    if (!out_path.empty() && !file.good()) {
        std::cerr << "error: write to '" << out_path << "' failed\n";
        return 3;
    }
    return 0;
}

// ---- find-ne ---------------------------------------------------------

json report_json(const EquilibriumReport& r) {
    json j;
    j["alice"] = strategy_json(r.profile.first);
    j["bob"] = strategy_json(r.profile.second);
    j["is_ne"] = r.is_ne;
    j["payoff_a"] = r.payoffs.alice;
    j["payoff_b"] = r.payoffs.bob;
    j["worst_deviation_gain"] = r.worst_deviation_gain;
    j["witness_player"] = to_string(r.witness_player);
    j["witness"] = strategy_json(r.witness);
    j["tolerance"] = r.tolerance;
    return j;
}

int cmd_find_ne(const Config& cfg, bool all_grid) {
    const Convention conv = cfg.convention();
    const double mu = cfg.mu();
    const double delta = cfg.delta();
    const StrategyGrid grid = cfg.grid(conv);
    const ClassicalPayoffs payoffs = cfg.payoffs();

    json doc = top_level(cfg, "find-ne");
    std::ostringstream human;

    if (all_grid) {
        const auto hits = enumerate_grid_ne(mu, delta, grid, cfg.tolerance, conv, payoffs);
        human << hits.size() << " grid equilibria (full " << grid_point_count(grid, conv)
              << "-point grid)\n";
        for (const auto& h : hits) {
            json j;
            j["alice"] = strategy_json(h.profile.first);
            j["bob"] = strategy_json(h.profile.second);
            j["payoff_a"] = h.payoffs.alice;
            j["payoff_b"] = h.payoffs.bob;
            doc["results"].push_back(j);
            human << "  (" << strategy_label(h.profile.first) << ", "
                  << strategy_label(h.profile.second) << ")  payoffs ("
                  << format_number(h.payoffs.alice) << ", " << format_number(h.payoffs.bob)
                  << ")\n";
        }
    } else {
        const auto reports =
            enumerate_pure_ne(mu, delta, grid, named_candidates(conv), cfg.tolerance, conv, payoffs);
        int ne_count = 0;
        for (const auto& r : reports) {
            doc["results"].push_back(report_json(r));
            if (r.is_ne) ++ne_count;
            human << "  (" << strategy_label(r.profile.first) << ", "
                  << strategy_label(r.profile.second) << ")  "
                  << (r.is_ne ? "NE      " : "not NE  ") << "payoffs ("
                  << format_number(r.payoffs.alice) << ", " << format_number(r.payoffs.bob)
                  << ")  worst gain " << format_number(r.worst_deviation_gain) << " by "
                  << to_string(r.witness_player) << " -> " << strategy_label(r.witness) << "\n";
        }
        std::ostringstream head;
        head << "mu = " << format_number(mu) << "  delta = " << format_number(delta) << "  "
             << ne_count << " NE among " << reports.size() << " candidates\n";
        human.str(head.str() + human.str());
    }
    emit(doc, cfg.json_output, human.str());
    return 0;
}

// ---- threshold -------------------------------------------------------

int cmd_threshold(const Config& cfg, const std::string& alice_text, const std::string& bob_text,
                  const std::string& direction_text) {
    const Convention conv = cfg.convention();
    const double delta = cfg.delta();
    const StrategyGrid grid = cfg.grid(conv);
    const Profile profile{parse_strategy(alice_text, conv), parse_strategy(bob_text, conv)};

    std::optional<ThresholdDirection> expected;
    if (direction_text == "above")
        expected = ThresholdDirection::NeAbove;
    else if (direction_text == "below")
        expected = ThresholdDirection::NeBelow;
    else if (direction_text != "auto")
        throw InvalidParameter("direction = '" + direction_text +
                               "' outside legal set {above, below, auto}");

    const ThresholdResult t = ne_threshold(profile, delta, grid, expected,
                                           tol::kThresholdBisection, conv, cfg.tolerance,
                                           cfg.payoffs());

    json doc = top_level(cfg, "threshold");
    json j;
    j["alice"] = strategy_json(profile.first);
    j["bob"] = strategy_json(profile.second);
    j["region"] = to_string(t.region);
    j["mu_star"] = t.mu_star;
    std::ostringstream human;
    human << "profile (" << strategy_label(profile.first) << ", "
          << strategy_label(profile.second) << ")  delta = " << format_number(delta) << "\n";
    if (t.region == ThresholdRegion::Boundary) {
        const double gamma_t_star = -0.5 * std::log(t.mu_star);
        j["gamma_t_star"] = gamma_t_star;
        j["direction"] = to_string(t.direction);
        human << "mu* = " << format_number(t.mu_star) << "  (gamma*t)* = "
              << format_number(gamma_t_star) << "  NE "
              << (t.direction == ThresholdDirection::NeAbove ? "for mu >= mu*" : "for mu <= mu*")
              << "\n";
    } else if (t.region == ThresholdRegion::AlwaysNe) {
        human << "always NE (holds for every mu in [0, 1])\n";
    } else {
        human << "never NE for any mu in [0, 1]\n";
    }
    doc["results"].push_back(j);
    emit(doc, cfg.json_output, human.str());
    return 0;
}

// ---- oracle-check ----------------------------------------------------

int cmd_oracle_check(const Config& cfg, const std::vector<std::string>& gamma_t_texts, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidParameter("dt must be finite and > 0");
    std::vector<double> gamma_ts;
    for (const auto& text : gamma_t_texts) {
        const double gt = parse_angle(text);
        DecoherenceParam::from_gamma_t(gt);  // range check before any work
        gamma_ts.push_back(gt);
    }
    json doc = top_level(cfg, "oracle-check");
    std::ostringstream human;
    const DensityMatrix4 rho0 = initial_state(DecoherenceParam::from_mu(1.0));
    for (const double gt : gamma_ts) {
        const DensityMatrix4 closed = initial_state(DecoherenceParam::from_gamma_t(gt));
        const DensityMatrix4 integrated =
            gt == 0.0 ? rho0 : integrate_master_equation(rho0, 1.0, gt, std::min(dt, gt));
        const double dist = frobenius_distance(integrated.mat(), closed.mat());
        doc["results"].push_back({{"gamma_t", gt}, {"dt", dt}, {"frobenius_distance", dist}});
        human << "gamma*t = " << format_number(gt) << "  frobenius_distance = "
              << format_number(dist) << "\n";
    }
    emit(doc, cfg.json_output, human.str());
    return 0;
}

// ---- mixed-ne --------------------------------------------------------

int cmd_mixed_ne(const Config& cfg, const std::string& psi_text, const std::string& phi_text) {
    const double mu = cfg.mu();
    const double delta = cfg.delta();
    const double psi = parse_angle(psi_text);
    const double phi = parse_angle(phi_text);
    const StrategyGrid grid = cfg.grid(Convention::ThreeParam);
    const auto [mix_a, mix_b] = mixed_ne_profile(psi, phi);
    const MixedEquilibriumReport r = verify_mixed_ne(mix_a, mix_b, mu, delta, grid, cfg.tolerance,
                                                     Convention::ThreeParam, cfg.payoffs());

    json doc = top_level(cfg, "mixed-ne");
    json j;
    j["psi"] = psi;
    j["phi"] = phi;
    j["average_a"] = r.average.alice;
    j["average_b"] = r.average.bob;
    j["is_ne"] = r.is_ne;
    j["worst_deviation_gain"] = r.worst_deviation_gain;
    j["witness_player"] = to_string(r.witness_player);
    j["witness"] = strategy_json(r.witness);
    j["components"] = json::array();

    std::ostringstream human;
    human << "equal-weight mix, psi = " << format_number(psi) << ", phi = " << format_number(phi)
          << ", mu = " << format_number(mu) << ", delta = " << format_number(delta) << "\n";
    const char* names[] = {"(A1,B1)", "(A1,B2)", "(A2,B1)", "(A2,B2)"};
    for (size_t k = 0; k < r.components.size(); ++k) {
        j["components"].push_back({{"pair", names[k % 4]},
                                   {"payoff_a", r.components[k].alice},
                                   {"payoff_b", r.components[k].bob}});
        human << "  " << names[k % 4] << "  payoff_a = " << format_number(r.components[k].alice)
              << "  payoff_b = " << format_number(r.components[k].bob) << "\n";
    }
    human << "average_a = " << format_number(r.average.alice) << "\naverage_b = "
          << format_number(r.average.bob) << "\nverdict: " << (r.is_ne ? "NE" : "not NE")
          << " (worst deviation gain " << format_number(r.worst_deviation_gain) << " by "
          << to_string(r.witness_player) << ")\n";
    doc["results"].push_back(j);
    emit(doc, cfg.json_output, human.str());
    return 0;
}

// ---- verify ---------------------------------------------------------

int cmd_verify(const Config& cfg, const std::string& report_path) {
    AcceptanceOptions options;
    options.report_path = report_path;
    const auto results = run_acceptance_suite(options);
    if (cfg.json_output) {
        json doc = top_level(cfg, "verify");
        for (const auto& r : results)
            doc["results"].push_back({{"id", r.id},
                                      {"name", r.name},
                                      {"passed", r.passed},
                                      {"seconds", r.seconds},
                                      {"budget_seconds", r.budget_seconds},
                                      {"detail", r.detail}});
        std::cout << doc.dump(2) << "\n";
    } else {
        print_criteria(results, std::cout);
        std::cout << (all_passed(results) ? "all criteria passed\n" : "FAILURES present\n");
    }
    return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdilemma: quantized Prisoners' Dilemma under collective dephasing"};
    app.require_subcommand(1);

    Config cfg;

    auto* payoff = app.add_subcommand("payoff", "evaluate one strategy profile");
    std::string alice_text, bob_text;
    add_config_options(payoff, cfg);
    payoff->add_option("--alice", alice_text, "Alice's move: C, D, Q or angles")->required();
    payoff->add_option("--bob", bob_text, "Bob's move: C, D, Q or angles")->required();

    auto* sweep = app.add_subcommand("sweep", "sweep a parameter, write CSV");
    std::string sweep_param, sweep_start, sweep_stop, sweep_step, sweep_out;
    add_config_options(sweep, cfg);
    sweep->add_option("--param", sweep_param, "swept parameter: mu, delta or gamma_t")->required();
    sweep->add_option("--start", sweep_start)->required();
    sweep->add_option("--stop", sweep_stop)->required();
    sweep->add_option("--step", sweep_step)->required();
    sweep->add_option("--alice", alice_text)->required();
    sweep->add_option("--bob", bob_text)->required();
    sweep->add_option("--out", sweep_out, "output CSV path (stdout if omitted)");

    auto* find_ne = app.add_subcommand("find-ne", "enumerate Nash equilibria");
    bool all_grid = false;
    add_config_options(find_ne, cfg);
    find_ne->add_flag("--all-grid", all_grid,
                      "test every grid profile instead of the named candidates (O(grid^2))");

    auto* threshold = app.add_subcommand("threshold", "bisect the NE decoherence boundary");
    std::string direction_text = "auto";
    add_config_options(threshold, cfg, /*with_mu=*/false);
    threshold->add_option("--alice", alice_text)->required();
    threshold->add_option("--bob", bob_text)->required();
    threshold->add_option("--direction", direction_text, "expected NE side: above, below or auto");

    auto* oracle = app.add_subcommand("oracle-check", "RK4 integrator vs closed form");
    std::vector<std::string> gamma_t_texts;
    double dt = tol::kDefaultRk4Dt;
    add_config_options(oracle, cfg, /*with_mu=*/false);
    oracle->add_option("--gamma-t", gamma_t_texts, "gamma*t values (repeatable)")->required();
    oracle->add_option("--dt", dt, "RK4 step (default 1e-4)");

    auto* mixed = app.add_subcommand("mixed-ne", "verify the three-parameter mixed equilibrium");
    std::string psi_text = "0", phi_text = "0";
    add_config_options(mixed, cfg);
    mixed->add_option("--psi", psi_text, "free psi of Alice's mixed operators");
    mixed->add_option("--phi", phi_text, "free phi of Bob's mixed operators");

    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    std::string report_path = "discrepancy_report.json";
    add_config_options(verify, cfg, /*with_mu=*/false);
    verify->add_option("--report-path", report_path,
                       "where the formula discrepancy report is archived");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (payoff->parsed()) return cmd_payoff(cfg, alice_text, bob_text);
        if (sweep->parsed())
            return cmd_sweep(cfg, sweep_param, sweep_start, sweep_stop, sweep_step, alice_text,
                             bob_text, sweep_out);
        if (find_ne->parsed()) return cmd_find_ne(cfg, all_grid);
        if (threshold->parsed()) return cmd_threshold(cfg, alice_text, bob_text, direction_text);
        if (oracle->parsed()) return cmd_oracle_check(cfg, gamma_t_texts, dt);
        if (mixed->parsed()) return cmd_mixed_ne(cfg, psi_text, phi_text);
        if (verify->parsed()) return cmd_verify(cfg, report_path);
    } catch (const NotMonotone& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
