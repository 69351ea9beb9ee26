#pragma once

#include "qdilemma/complex_mat.hpp"
#include "qdilemma/game.hpp"

// Grid scan kernels for best-response search. The per-point payoff is a
// quadratic form in the responder's unitary, precomputed once per scan, so
// the inner loop is a handful of trig calls and 16 complex multiplies.
//
// Two implementations share the same per-point evaluation: a serial
// reference and an OpenMP kernel. They return bit-identical results (the
// argmax merge breaks ties toward the lowest flat index, i.e. lowest theta,
// then phi, then psi). tools/bench_scan.cpp compares their throughput.

namespace qdilemma {

/// Counts of evenly spaced samples over the strategy parameter ranges,
/// endpoints included. Odd n_theta and n_phi keep the named points C, D, Q
/// exactly on every two-parameter grid.
struct StrategyGrid {
    int n_theta;
    int n_phi;
    int n_psi;

    StrategyGrid(int n_theta_, int n_phi_, int n_psi_ = 1);

    static StrategyGrid two_param_default() { return {181, 91, 1}; }
    static StrategyGrid three_param_default() { return {61, 61, 61}; }
};

struct GridPoint {
    double theta;
    double phi;
    double psi;  // 0 under the two-parameter convention
};

long grid_point_count(const StrategyGrid& g, Convention c);

/// Flat index -> angles. Index order is theta-major, then phi, then psi,
/// so ascending flat index is lexicographic in (theta, phi, psi).
GridPoint grid_point(const StrategyGrid& g, Convention c, long index);

Mat2 grid_unitary(Convention c, const GridPoint& p);

struct ScanProblem {
    Mat4 rho_fixed;   // state with the opponent (or opponent mixture) applied
    Mat4 payoff_op;   // responding player's payoff operator
    bool responder_is_alice;  // responder acts on the left tensor slot
    StrategyGrid grid;
    Convention convention;
};

struct ScanResult {
    double best_payoff;
    long best_index;
};

/// Responder payoff at one grid point; the quantity both kernels maximize.
double scan_eval_point(const ScanProblem& p, long index);

ScanResult scan_best_payoff_serial(const ScanProblem& p);
ScanResult scan_best_payoff_parallel(const ScanProblem& p);

/// Dispatches to the OpenMP kernel when available, honoring the
/// QDILEMMA_THREADS cap (0 or unset = auto).
ScanResult scan_best_payoff(const ScanProblem& p);

/// Fills `out` (grid_point_count entries) with the responder payoff at
/// every grid point. Used by the full-grid equilibrium enumeration.
void scan_all_payoffs(const ScanProblem& p, double* out);

/// Parsed QDILEMMA_THREADS value; 0 means no cap.
int thread_cap();

}  // namespace qdilemma
