#pragma once

// All numerical tolerances live here so tests and modules agree on one set
// of constants.

namespace qdilemma::tol {

// Density-matrix invariants.
inline constexpr double kHermitian = 1e-12;      // max |m_jk - conj(m_kj)|
inline constexpr double kUnitTrace = 1e-12;      // |Tr - 1|
inline constexpr double kPsdMinEigenvalue = 1e-10;  // min eigenvalue >= -this

// Hermitian eigensolver (cyclic Jacobi).
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kHermitianPrecondition = 1e-10;

// Unitarity.
inline constexpr double kUnitary = 1e-12;           // post-condition on built unitaries
inline constexpr double kUnitaryPrecondition = 1e-10;  // accepted by apply_strategies

// Trace payoffs: imaginary parts below the first value are discarded,
// anything above the second is an error.
inline constexpr double kTraceImagDiscard = 1e-10;
inline constexpr double kTraceImagError = 1e-8;
inline constexpr double kPayoffHullSlack = 1e-8;

// Channel.
inline constexpr double kDecayFromGammaT = 1e-15;   // mu = exp(-2 gamma t) accuracy
inline constexpr double kIntegratorValidation = 1e-8;
inline constexpr double kChannelOracle = 1e-6;
inline constexpr double kDefaultRk4Dt = 1e-4;

// Equilibrium search.
inline constexpr double kNeGain = 1e-9;          // default NE tolerance (payoff units)
inline constexpr double kThresholdBisection = 1e-6;
inline constexpr double kMixedProbabilitySum = 1e-12;

// Generic oracle/identity comparisons in tests.
inline constexpr double kMatch = 1e-12;

}  // namespace qdilemma::tol
