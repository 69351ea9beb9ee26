// Benchmark: serial reference kernel vs the OpenMP kernel on the
// best-response scans that dominate equilibrium search. Also checks that
// both kernels return identical results.

#include <cstdio>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdilemma/channel.hpp"
#include "qdilemma/equilibrium.hpp"
#include "qdilemma/scan.hpp"

using namespace qdilemma;

namespace {

double now_seconds() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

ScanProblem make_problem(Convention conv, const StrategyGrid& grid) {
    const double mu = 0.35;
    const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(mu));
    const Mat2 opponent = strategy_unitary(named_strategy('D', conv));
    const Mat4 fixed = tensor_product(Mat2::identity(), opponent) * rho.mat() *
                       adjoint(tensor_product(Mat2::identity(), opponent));
    const PayoffOperators ops =
        payoff_operators(MeasurementBasis(std::numbers::pi / 2.0), ClassicalPayoffs::defaults());
    return ScanProblem{fixed, ops.alice, true, grid, conv};
}

void bench(const char* label, const ScanProblem& problem, int repeats) {
    const long points = grid_point_count(problem.grid, problem.convention);

    double t0 = now_seconds();
    ScanResult serial{};
    for (int r = 0; r < repeats; ++r) serial = scan_best_payoff_serial(problem);
    const double serial_s = (now_seconds() - t0) / repeats;

    t0 = now_seconds();
    ScanResult parallel{};
    for (int r = 0; r < repeats; ++r) parallel = scan_best_payoff_parallel(problem);
    const double parallel_s = (now_seconds() - t0) / repeats;

    const bool identical =
        serial.best_index == parallel.best_index && serial.best_payoff == parallel.best_payoff;
    std::printf("%-14s %9ld points  serial %8.2f ms  openmp %8.2f ms  speedup %5.2fx  %s\n",
                label, points, serial_s * 1e3, parallel_s * 1e3,
                parallel_s > 0 ? serial_s / parallel_s : 0.0,
                identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("omp_get_max_threads() = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both kernels run serially\n");
#endif
    bench("2p default", make_problem(Convention::TwoParam, StrategyGrid::two_param_default()), 20);
    bench("3p default", make_problem(Convention::ThreeParam, StrategyGrid::three_param_default()),
          3);
    bench("3p fine", make_problem(Convention::ThreeParam, StrategyGrid(121, 121, 121)), 1);
    return 0;
}
