#pragma once

#include <cstdint>
#include <string>

#include "qdilemma/channel.hpp"
#include "qdilemma/complex_mat.hpp"

// Strategy unitaries (two conventions), delta-parameterized measurement
// projectors and payoff operators, the canonical trace payoff pipeline, the
// published closed-form payoff expressions, and cross-validation between
// the two routes.
//
// The trace pipeline is the single source of truth. The closed forms are
// evaluated literally as printed and treated as claims to verify: the
// two-parameter formula for Bob and both three-parameter formulas carry
// sign inconsistencies that cross_validate quantifies.

namespace qdilemma {

/// Two-parameter strategy: U = cos(theta/2) R(phi) + sin(theta/2) C with
/// R = diag(e^{i phi}, e^{-i phi}) and C|0> = -|1>, C|1> = |0>.
/// Named points: C = (0, 0), D = (pi, 0), Q = (0, pi/2).
struct TwoParamStrategy {
    double theta;  // [0, pi]
    double phi;    // [0, pi/2]

    TwoParamStrategy(double theta_, double phi_);

    static TwoParamStrategy cooperate() { return {0.0, 0.0}; }
    static TwoParamStrategy defect();
    static TwoParamStrategy quantum();
};

/// Three-parameter strategy:
/// U = [[e^{i phi} cos(theta/2), i e^{i psi} sin(theta/2)],
///      [i e^{-i psi} sin(theta/2), e^{-i phi} cos(theta/2)]].
/// Note unitary_3p(theta, phi, 0) != unitary_2p(theta, phi): the
/// off-diagonal phases differ between the conventions, so the two types are
/// deliberately kept distinct.
struct ThreeParamStrategy {
    double theta;  // [0, pi]
    double phi;    // [-pi, pi]
    double psi;    // [-pi, pi]

    ThreeParamStrategy(double theta_, double phi_, double psi_);
};

enum class Convention { TwoParam, ThreeParam };

std::string to_string(Convention c);

struct MeasurementBasis {
    double delta;  // [0, pi/2]; 0 = product basis, pi/2 = maximally entangled

    explicit MeasurementBasis(double delta_);
};

struct ClassicalPayoffs {
    double reward = 3.0;      // CC
    double sucker = 0.0;      // CD, cooperator's share
    double temptation = 5.0;  // DC, defector's share
    double punishment = 1.0;  // DD

    static ClassicalPayoffs defaults() { return {}; }
    static ClassicalPayoffs make(double reward, double sucker, double temptation,
                                 double punishment);

    double min_entry() const;
    double max_entry() const;
};

struct PayoffPair {
    double alice;
    double bob;
};

Mat2 unitary_2p(const TwoParamStrategy& s);
Mat2 unitary_3p(const ThreeParamStrategy& s);

struct ProjectorSet {
    Mat4 p00, p11, p10, p01;
};

/// Rank-1 projectors onto
///   |psi00> = cos(d/2)|00> + i sin(d/2)|11>,
///   |psi11> = cos(d/2)|11> + i sin(d/2)|00>,
///   |psi10> = cos(d/2)|10> - i sin(d/2)|01>,
///   |psi01> = cos(d/2)|01> - i sin(d/2)|10>.
ProjectorSet measurement_projectors(const MeasurementBasis& b);

struct PayoffOperators {
    Mat4 alice;
    Mat4 bob;
};

/// P_A = reward P00 + punishment P11 + temptation P10 + sucker P01;
/// P_B swaps the roles of P10 and P01. Reduces to the Eisert-scheme
/// operators at delta = pi/2 and to product-basis operators at delta = 0.
PayoffOperators payoff_operators(const MeasurementBasis& b, const ClassicalPayoffs& c);

/// rho_f = (uA (x) uB) rho (uA (x) uB)^dagger. Throws NotUnitary when
/// either factor deviates from unitarity beyond the precondition.
DensityMatrix4 apply_strategies(const DensityMatrix4& rho, const Mat2& uA, const Mat2& uB);

/// ($_A, $_B) = (Tr(P_A rho_f), Tr(P_B rho_f)). Imaginary parts are
/// discarded; beyond tol::kTraceImagError they raise
/// NumericalInconsistency, as does a payoff escaping the classical hull.
PayoffPair trace_payoffs(const DensityMatrix4& rho_f, const MeasurementBasis& b,
                         const ClassicalPayoffs& c);

/// Full pipeline: decohered initial state, strategies, measurement.
PayoffPair game_payoffs(double mu, const Mat2& uA, const Mat2& uB, const MeasurementBasis& b,
                        const ClassicalPayoffs& c = ClassicalPayoffs::defaults());

// Closed-form payoff expressions, evaluated literally as printed.
PayoffPair closed_form_2p_general(const TwoParamStrategy& a, const TwoParamStrategy& b, double mu,
                                  double delta);
PayoffPair closed_form_2p_entangled(const TwoParamStrategy& a, const TwoParamStrategy& b,
                                    double mu);
PayoffPair closed_form_product(const TwoParamStrategy& a, const TwoParamStrategy& b, double mu);
PayoffPair closed_form_3p(const ThreeParamStrategy& a, const ThreeParamStrategy& b, double mu,
                          double delta);

enum class FormulaFamily { TwoParamGeneral, TwoParamEntangled, Product, ThreeParam };

std::string to_string(FormulaFamily f);

/// Optional restriction of the sampled parameter tuples; the restricted
/// subspaces avoid the formula terms under suspicion.
enum class SampleRestriction { None, EqualPhi, ThetaZero };

std::string to_string(SampleRestriction r);

struct WorstSample {
    double theta_a = 0, phi_a = 0, psi_a = 0;
    double theta_b = 0, phi_b = 0, psi_b = 0;
    double mu = 0, delta = 0;
};

struct DiscrepancyReport {
    FormulaFamily family;
    SampleRestriction restriction;
    int n_samples;
    uint64_t seed;
    double max_dev_alice, mean_dev_alice;
    double max_dev_bob, mean_dev_bob;
    WorstSample worst_alice;
    WorstSample worst_bob;
};

/// Draws n_samples deterministic parameter tuples and compares the printed
/// closed form against the trace pipeline in the matching convention.
DiscrepancyReport cross_validate(FormulaFamily family, int n_samples, uint64_t seed,
                                 SampleRestriction restriction = SampleRestriction::None);

}  // namespace qdilemma
