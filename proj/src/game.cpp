#include "qdilemma/game.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdilemma/errors.hpp"
#include "qdilemma/rng.hpp"

namespace qdilemma {

namespace {

constexpr double kPi = std::numbers::pi;

void check_range(const char* name, double v, double lo, double hi) {
    if (!std::isfinite(v) || v < lo || v > hi) {
        std::ostringstream msg;
        msg << name << " = " << v << " outside legal range [" << lo << ", " << hi << "]";
        throw InvalidParameter(msg.str());
    }
}

}  // namespace

TwoParamStrategy::TwoParamStrategy(double theta_, double phi_) : theta(theta_), phi(phi_) {
    check_range("theta", theta, 0.0, kPi);
    check_range("phi", phi, 0.0, kPi / 2.0);
}

TwoParamStrategy TwoParamStrategy::defect() { return {kPi, 0.0}; }

TwoParamStrategy TwoParamStrategy::quantum() { return {0.0, kPi / 2.0}; }

ThreeParamStrategy::ThreeParamStrategy(double theta_, double phi_, double psi_)
    : theta(theta_), phi(phi_), psi(psi_) {
    check_range("theta", theta, 0.0, kPi);
    check_range("phi", phi, -kPi, kPi);
    check_range("psi", psi, -kPi, kPi);
}

std::string to_string(Convention c) { return c == Convention::TwoParam ? "2p" : "3p"; }

MeasurementBasis::MeasurementBasis(double delta_) : delta(delta_) {
    check_range("delta", delta, 0.0, kPi / 2.0);
}

ClassicalPayoffs ClassicalPayoffs::make(double reward, double sucker, double temptation,
                                        double punishment) {
    for (double v : {reward, sucker, temptation, punishment})
        if (!std::isfinite(v)) throw InvalidParameter("payoff entries must be finite");
    return {reward, sucker, temptation, punishment};
}

double ClassicalPayoffs::min_entry() const {
    return std::min(std::min(reward, sucker), std::min(temptation, punishment));
}

double ClassicalPayoffs::max_entry() const {
    return std::max(std::max(reward, sucker), std::max(temptation, punishment));
}

Mat2 unitary_2p(const TwoParamStrategy& s) {
    const double c = std::cos(s.theta / 2.0);
    const double n = std::sin(s.theta / 2.0);
    Mat2 u;
    u(0, 0) = c * std::polar(1.0, s.phi);
    u(0, 1) = n;
    u(1, 0) = -n;
    u(1, 1) = c * std::polar(1.0, -s.phi);
    return u;
}

Mat2 unitary_3p(const ThreeParamStrategy& s) {
    const double c = std::cos(s.theta / 2.0);
    const double n = std::sin(s.theta / 2.0);
    Mat2 u;
    u(0, 0) = c * std::polar(1.0, s.phi);
    u(0, 1) = n * (cx{0.0, 1.0} * std::polar(1.0, s.psi));
    u(1, 0) = n * (cx{0.0, 1.0} * std::polar(1.0, -s.psi));
    u(1, 1) = c * std::polar(1.0, -s.phi);
    return u;
}

ProjectorSet measurement_projectors(const MeasurementBasis& b) {
    const double c = std::cos(b.delta / 2.0);
    const double s = std::sin(b.delta / 2.0);
    const cx is{0.0, s};

    auto rank1 = [](const std::array<cx, 4>& v) {
        Mat4 p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                p(i, j) = v[static_cast<size_t>(i)] * std::conj(v[static_cast<size_t>(j)]);
        return p;
    };

    ProjectorSet ps;
    ps.p00 = rank1({cx{c}, 0.0, 0.0, is});
    ps.p11 = rank1({is, 0.0, 0.0, cx{c}});
    ps.p10 = rank1({0.0, -is, cx{c}, 0.0});
    ps.p01 = rank1({0.0, cx{c}, -is, 0.0});
    return ps;
}

PayoffOperators payoff_operators(const MeasurementBasis& b, const ClassicalPayoffs& c) {
    const ProjectorSet ps = measurement_projectors(b);
    PayoffOperators ops;
    ops.alice = cx{c.reward} * ps.p00 + cx{c.punishment} * ps.p11 + cx{c.temptation} * ps.p10 +
                cx{c.sucker} * ps.p01;
    ops.bob = cx{c.reward} * ps.p00 + cx{c.punishment} * ps.p11 + cx{c.sucker} * ps.p10 +
              cx{c.temptation} * ps.p01;
    return ops;
}

DensityMatrix4 apply_strategies(const DensityMatrix4& rho, const Mat2& uA, const Mat2& uB) {
    const double devA = unitary_deviation(uA);
    const double devB = unitary_deviation(uB);
    if (devA > tol::kUnitaryPrecondition || devB > tol::kUnitaryPrecondition) {
        std::ostringstream msg;
        msg << "apply_strategies: unitarity deviation (A " << devA << ", B " << devB
            << ") exceeds " << tol::kUnitaryPrecondition;
        throw NotUnitary(msg.str());
    }
    const Mat4 u = tensor_product(uA, uB);
    return DensityMatrix4::validated(u * rho.mat() * adjoint(u));
}

PayoffPair trace_payoffs(const DensityMatrix4& rho_f, const MeasurementBasis& b,
                         const ClassicalPayoffs& c) {
    const PayoffOperators ops = payoff_operators(b, c);
    const cx ta = trace(ops.alice * rho_f.mat());
    const cx tb = trace(ops.bob * rho_f.mat());
    if (std::abs(ta.imag()) > tol::kTraceImagError || std::abs(tb.imag()) > tol::kTraceImagError) {
        std::ostringstream msg;
        msg << "trace payoff has imaginary part beyond " << tol::kTraceImagError << " (A "
            << ta.imag() << ", B " << tb.imag() << ")";
        throw NumericalInconsistency(msg.str());
    }
    const double lo = c.min_entry() - tol::kPayoffHullSlack;
    const double hi = c.max_entry() + tol::kPayoffHullSlack;
    for (double v : {ta.real(), tb.real()})
        if (v < lo || v > hi) {
            std::ostringstream msg;
            msg << "payoff " << v << " escapes the classical hull [" << c.min_entry() << ", "
                << c.max_entry() << "]";
            throw NumericalInconsistency(msg.str());
        }
    return {ta.real(), tb.real()};
}

PayoffPair game_payoffs(double mu, const Mat2& uA, const Mat2& uB, const MeasurementBasis& b,
                        const ClassicalPayoffs& c) {
    const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(mu));
    return trace_payoffs(apply_strategies(rho, uA, uB), b, c);
}

PayoffPair closed_form_2p_general(const TwoParamStrategy& a, const TwoParamStrategy& b, double mu,
                                  double delta) {
    const double ca2 = std::cos(a.theta / 2) * std::cos(a.theta / 2);
    const double cb2 = std::cos(b.theta / 2) * std::cos(b.theta / 2);
    const double sa2 = 1.0 - ca2;
    const double sb2 = 1.0 - cb2;
    const double sd = std::sin(delta);
    const double cross = std::sin(a.theta) * std::sin(b.theta);

    const double common = (2.0 + mu * std::cos(2.0 * (a.phi + b.phi)) * sd) * ca2 * cb2 +
                          (2.0 - mu * sd) * sa2 * sb2 -
                          0.25 * (mu + 2.0 * sd) * cross * std::sin(a.phi + b.phi) -
                          1.25 * cross * std::sin(a.phi - b.phi) * sd;
    const double pa = common + 2.5 * (1.0 - mu * std::cos(2.0 * a.phi) * sd) * ca2 * sb2 +
                      2.5 * (1.0 + mu * std::cos(2.0 * b.phi) * sd) * sa2 * cb2;
    // The printed Bob expression repeats Alice's sign on the
    // sin(phi_A - phi_B) term; it is evaluated as printed and the
    // discrepancy against the trace pipeline is quantified by
    // cross_validate rather than silently corrected.
    const double pb = common + 2.5 * (1.0 + mu * std::cos(2.0 * a.phi) * sd) * ca2 * sb2 +
                      2.5 * (1.0 - mu * std::cos(2.0 * b.phi) * sd) * sa2 * cb2;
    return {pa, pb};
}

PayoffPair closed_form_2p_entangled(const TwoParamStrategy& a, const TwoParamStrategy& b,
                                    double mu) {
    const double ca2 = std::cos(a.theta / 2) * std::cos(a.theta / 2);
    const double cb2 = std::cos(b.theta / 2) * std::cos(b.theta / 2);
    const double sa2 = 1.0 - ca2;
    const double sb2 = 1.0 - cb2;
    const double cross = std::sin(a.theta) * std::sin(b.theta);

    const double common = (2.0 + mu * std::cos(2.0 * (a.phi + b.phi))) * ca2 * cb2 +
                          (2.0 - mu) * sa2 * sb2 -
                          0.25 * (2.0 + mu) * cross * std::sin(a.phi + b.phi) -
                          1.25 * cross * std::sin(a.phi - b.phi);
    const double pa = common + 2.5 * (1.0 - mu * std::cos(2.0 * a.phi)) * ca2 * sb2 +
                      2.5 * (1.0 + mu * std::cos(2.0 * b.phi)) * sa2 * cb2;
    const double pb = common + 2.5 * (1.0 + mu * std::cos(2.0 * a.phi)) * ca2 * sb2 +
                      2.5 * (1.0 - mu * std::cos(2.0 * b.phi)) * sa2 * cb2;
    return {pa, pb};
}

PayoffPair closed_form_product(const TwoParamStrategy& a, const TwoParamStrategy& b, double mu) {
    const double ca2 = std::cos(a.theta / 2) * std::cos(a.theta / 2);
    const double cb2 = std::cos(b.theta / 2) * std::cos(b.theta / 2);
    const double v = 2.0 - ca2 * cb2 + 0.5 * cb2 + 0.5 * ca2 -
                     0.25 * mu * std::sin(a.theta) * std::sin(b.theta) * std::sin(a.phi + b.phi);
    return {v, v};
}

PayoffPair closed_form_3p(const ThreeParamStrategy& a, const ThreeParamStrategy& b, double mu,
                          double delta) {
    const double ca2 = std::cos(a.theta / 2) * std::cos(a.theta / 2);
    const double cb2 = std::cos(b.theta / 2) * std::cos(b.theta / 2);
    const double sa2 = 1.0 - ca2;
    const double sb2 = 1.0 - cb2;
    const double sd = std::sin(delta);
    const double cross = std::sin(a.theta) * std::sin(b.theta);

    const double common =
        (2.0 + mu * std::cos(2.0 * (a.phi + b.phi)) * sd) * ca2 * cb2 +
        (2.0 - mu * std::cos(2.0 * (a.psi + b.psi)) * sd) * sa2 * sb2 +
        0.25 * cross * mu * std::sin(a.phi + b.phi - a.psi - b.psi) +
        0.25 * cross * sd * 2.0 * std::sin(a.phi + b.phi + a.psi + b.psi);
    const double odd = 0.25 * cross * sd * 5.0 * std::sin(a.phi - b.phi + a.psi - b.psi);
    const double pa = common + 2.5 * (1.0 - mu * std::cos(2.0 * (a.phi - b.psi)) * sd) * ca2 * sb2 +
                      2.5 * (1.0 + mu * std::cos(2.0 * (b.phi - a.psi)) * sd) * sa2 * cb2 - odd;
    const double pb = common + 2.5 * (1.0 + mu * std::cos(2.0 * (a.phi - b.psi)) * sd) * ca2 * sb2 +
                      2.5 * (1.0 - mu * std::cos(2.0 * (b.phi - a.psi)) * sd) * sa2 * cb2 + odd;
    return {pa, pb};
}

std::string to_string(FormulaFamily f) {
    switch (f) {
        case FormulaFamily::TwoParamGeneral: return "2p_general";
        case FormulaFamily::TwoParamEntangled: return "2p_entangled";
        case FormulaFamily::Product: return "product";
        case FormulaFamily::ThreeParam: return "3p";
    }
    return "?";
}

std::string to_string(SampleRestriction r) {
    switch (r) {
        case SampleRestriction::None: return "none";
        case SampleRestriction::EqualPhi: return "equal_phi";
        case SampleRestriction::ThetaZero: return "theta_zero";
    }
    return "?";
}

DiscrepancyReport cross_validate(FormulaFamily family, int n_samples, uint64_t seed,
                                 SampleRestriction restriction) {
    if (n_samples < 1) throw InvalidParameter("n_samples must be >= 1");
    Rng rng(seed);

    DiscrepancyReport rep{};
    rep.family = family;
    rep.restriction = restriction;
    rep.n_samples = n_samples;
    rep.seed = seed;

    const MeasurementBasis entangled(kPi / 2.0);
    const MeasurementBasis product(0.0);
    double sum_a = 0.0, sum_b = 0.0;

    for (int i = 0; i < n_samples; ++i) {
        const double theta_a = restriction == SampleRestriction::ThetaZero ? 0.0
                                                                           : rng.uniform(0.0, kPi);
        const double theta_b = restriction == SampleRestriction::ThetaZero ? 0.0
                                                                           : rng.uniform(0.0, kPi);
        const double mu = rng.uniform(0.0, 1.0);

        PayoffPair formula{}, pipeline{};
        WorstSample sample{};
        sample.theta_a = theta_a;
        sample.theta_b = theta_b;
        sample.mu = mu;

        if (family == FormulaFamily::ThreeParam) {
            const double phi_a = rng.uniform(-kPi, kPi);
            const double phi_b = restriction == SampleRestriction::EqualPhi
                                     ? phi_a
                                     : rng.uniform(-kPi, kPi);
            const double psi_a = rng.uniform(-kPi, kPi);
            const double psi_b = rng.uniform(-kPi, kPi);
            const double delta = rng.uniform(0.0, kPi / 2.0);
            const ThreeParamStrategy sa(theta_a, phi_a, psi_a);
            const ThreeParamStrategy sb(theta_b, phi_b, psi_b);
            formula = closed_form_3p(sa, sb, mu, delta);
            pipeline = game_payoffs(mu, unitary_3p(sa), unitary_3p(sb), MeasurementBasis(delta));
            sample.phi_a = phi_a;
            sample.phi_b = phi_b;
            sample.psi_a = psi_a;
            sample.psi_b = psi_b;
            sample.delta = delta;
        } else {
            const double phi_a = rng.uniform(0.0, kPi / 2.0);
            const double phi_b = restriction == SampleRestriction::EqualPhi
                                     ? phi_a
                                     : rng.uniform(0.0, kPi / 2.0);
            const TwoParamStrategy sa(theta_a, phi_a);
            const TwoParamStrategy sb(theta_b, phi_b);
            sample.phi_a = phi_a;
            sample.phi_b = phi_b;
            switch (family) {
                case FormulaFamily::TwoParamGeneral: {
                    const double delta = rng.uniform(0.0, kPi / 2.0);
                    formula = closed_form_2p_general(sa, sb, mu, delta);
                    pipeline =
                        game_payoffs(mu, unitary_2p(sa), unitary_2p(sb), MeasurementBasis(delta));
                    sample.delta = delta;
                    break;
                }
                case FormulaFamily::TwoParamEntangled:
                    formula = closed_form_2p_entangled(sa, sb, mu);
                    pipeline = game_payoffs(mu, unitary_2p(sa), unitary_2p(sb), entangled);
                    sample.delta = kPi / 2.0;
                    break;
                case FormulaFamily::Product:
                    formula = closed_form_product(sa, sb, mu);
                    pipeline = game_payoffs(mu, unitary_2p(sa), unitary_2p(sb), product);
                    sample.delta = 0.0;
                    break;
                case FormulaFamily::ThreeParam: break;  // unreachable
            }
        }

        const double dev_a = std::abs(formula.alice - pipeline.alice);
        const double dev_b = std::abs(formula.bob - pipeline.bob);
        sum_a += dev_a;
        sum_b += dev_b;
        if (dev_a > rep.max_dev_alice) {
            rep.max_dev_alice = dev_a;
            rep.worst_alice = sample;
        }
        if (dev_b > rep.max_dev_bob) {
            rep.max_dev_bob = dev_b;
            rep.worst_bob = sample;
        }
    }

    rep.mean_dev_alice = sum_a / n_samples;
    rep.mean_dev_bob = sum_b / n_samples;
    return rep;
}

}  // namespace qdilemma
