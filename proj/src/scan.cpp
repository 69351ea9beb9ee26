#include "qdilemma/scan.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdilemma/errors.hpp"

namespace qdilemma {

namespace {

constexpr double kPi = std::numbers::pi;

// value(k) = lo + (hi-lo) * k/(count-1); k/(count-1) hits 0, exact dyadic
// fractions, and 1, so the range endpoints and the named points land on
// exact grid values.
double grid_value(double lo, double hi, int k, int count) {
    if (count == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(count - 1));
}

// Responder payoff as a quadratic form: payoff(U) = Re sum over
// (i,j),(k,l) of U(i,j) conj(U(k,l)) t[i][j][k][l], with the coefficients
// contracted from the payoff operator and the fixed state once per scan.
struct PayoffQuadratic {
    cx t[2][2][2][2]{};

    static PayoffQuadratic build(const Mat4& payoff_op, const Mat4& rho_fixed,
                                 bool responder_is_alice) {
        PayoffQuadratic q;
        const auto idx = [&](int own, int other) {
            return responder_is_alice ? 2 * own + other : 2 * other + own;
        };
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) {
                        cx s = 0.0;
                        for (int b = 0; b < 2; ++b)
                            for (int d = 0; d < 2; ++d)
                                s += payoff_op(idx(k, d), idx(i, b)) * rho_fixed(idx(j, b), idx(l, d));
                        q.t[i][j][k][l] = s;
                    }
        return q;
    }

    double eval(const Mat2& u) const {
        cx acc = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const cx uij = u(i, j);
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) acc += uij * std::conj(u(k, l)) * t[i][j][k][l];
            }
        return acc.real();
    }
};

// (payoff desc, index asc) total order; makes the parallel merge agree
// with the serial scan.
bool better(double value, long index, const ScanResult& than) {
    return value > than.best_payoff || (value == than.best_payoff && index < than.best_index);
}

}  // namespace

StrategyGrid::StrategyGrid(int n_theta_, int n_phi_, int n_psi_)
    : n_theta(n_theta_), n_phi(n_phi_), n_psi(n_psi_) {
    if (n_theta < 3 || n_theta % 2 == 0)
        throw InvalidParameter("n_theta must be odd and >= 3 so theta in {0, pi/2, pi} are sampled");
    if (n_phi < 3 || n_phi % 2 == 0)
        throw InvalidParameter("n_phi must be odd and >= 3 so the named phi values are sampled");
    if (n_psi < 1) throw InvalidParameter("n_psi must be >= 1");
}

long grid_point_count(const StrategyGrid& g, Convention c) {
    const long base = static_cast<long>(g.n_theta) * g.n_phi;
    return c == Convention::TwoParam ? base : base * g.n_psi;
}

GridPoint grid_point(const StrategyGrid& g, Convention c, long index) {
    GridPoint p{};
    if (c == Convention::TwoParam) {
        const int ip = static_cast<int>(index % g.n_phi);
        const int it = static_cast<int>(index / g.n_phi);
        p.theta = grid_value(0.0, kPi, it, g.n_theta);
        p.phi = grid_value(0.0, kPi / 2.0, ip, g.n_phi);
    } else {
        const int is = static_cast<int>(index % g.n_psi);
        const long rest = index / g.n_psi;
        const int ip = static_cast<int>(rest % g.n_phi);
        const int it = static_cast<int>(rest / g.n_phi);
        p.theta = grid_value(0.0, kPi, it, g.n_theta);
        p.phi = grid_value(-kPi, kPi, ip, g.n_phi);
        p.psi = grid_value(-kPi, kPi, is, g.n_psi);
    }
    return p;
}

Mat2 grid_unitary(Convention c, const GridPoint& p) {
    if (c == Convention::TwoParam) return unitary_2p(TwoParamStrategy(p.theta, p.phi));
    return unitary_3p(ThreeParamStrategy(p.theta, p.phi, p.psi));
}

double scan_eval_point(const ScanProblem& p, long index) {
    const PayoffQuadratic q = PayoffQuadratic::build(p.payoff_op, p.rho_fixed, p.responder_is_alice);
    return q.eval(grid_unitary(p.convention, grid_point(p.grid, p.convention, index)));
}

ScanResult scan_best_payoff_serial(const ScanProblem& p) {
    const long n = grid_point_count(p.grid, p.convention);
    const PayoffQuadratic q = PayoffQuadratic::build(p.payoff_op, p.rho_fixed, p.responder_is_alice);
    ScanResult best{-std::numeric_limits<double>::infinity(), n};
    for (long i = 0; i < n; ++i) {
        const double v = q.eval(grid_unitary(p.convention, grid_point(p.grid, p.convention, i)));
        if (better(v, i, best)) best = {v, i};
    }
    return best;
}

ScanResult scan_best_payoff_parallel(const ScanProblem& p) {
#ifndef _OPENMP
    return scan_best_payoff_serial(p);
#else
    const long n = grid_point_count(p.grid, p.convention);
    const PayoffQuadratic q = PayoffQuadratic::build(p.payoff_op, p.rho_fixed, p.responder_is_alice);
    ScanResult best{-std::numeric_limits<double>::infinity(), n};

    const int cap = thread_cap();
    const int threads = cap > 0 ? std::min(cap, omp_get_max_threads()) : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
    {
        ScanResult local{-std::numeric_limits<double>::infinity(), n};
#pragma omp for schedule(static) nowait
        for (long i = 0; i < n; ++i) {
            const double v = q.eval(grid_unitary(p.convention, grid_point(p.grid, p.convention, i)));
            if (better(v, i, local)) local = {v, i};
        }
#pragma omp critical
        {
            if (better(local.best_payoff, local.best_index, best)) best = local;
        }
    }
    return best;
#endif
}

ScanResult scan_best_payoff(const ScanProblem& p) { return scan_best_payoff_parallel(p); }

void scan_all_payoffs(const ScanProblem& p, double* out) {
    const long n = grid_point_count(p.grid, p.convention);
    const PayoffQuadratic q = PayoffQuadratic::build(p.payoff_op, p.rho_fixed, p.responder_is_alice);
#ifdef _OPENMP
    const int cap = thread_cap();
    const int threads = cap > 0 ? std::min(cap, omp_get_max_threads()) : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (long i = 0; i < n; ++i)
        out[i] = q.eval(grid_unitary(p.convention, grid_point(p.grid, p.convention, i)));
}

int thread_cap() {
    const char* env = std::getenv("QDILEMMA_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) {
        std::ostringstream msg;
        msg << "QDILEMMA_THREADS = \"" << env << "\" outside legal range [0, inf) of integers";
        throw InvalidParameter(msg.str());
    }
    return static_cast<int>(v);
}

}  // namespace qdilemma
