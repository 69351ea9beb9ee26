#pragma once

#include "qdilemma/complex_mat.hpp"

// Collective dephasing of the two-qubit initial state. The closed form is
// the canonical path; the RK4 master-equation integrator is an independent
// numerical oracle kept for testing.

namespace qdilemma {

/// Decoherence level mu = e^{-2 gamma t} in [0, 1]. Every result of the
/// game depends on gamma and t only through this product, so the engine is
/// parameterized by mu directly; mu = 0 realizes the infinite-time limit
/// exactly.
struct DecoherenceParam {
    double mu;

    static DecoherenceParam from_mu(double mu);
    static DecoherenceParam from_gamma_t(double gamma_t);
};

/// Collective spin operator J_z = (sigma_z (x) I + I (x) sigma_z) / 2,
/// diagonal (1, 0, 0, -1) in the fixed basis order.
Mat4 collective_jz();

/// The shared state after dephasing for time t:
///   rho = (1-mu)/2 (|00><00| + |11><11|) + mu |phi+><phi+|
/// with |phi+> = (|00> + i|11>)/sqrt(2). The diagonal is (1/2, 0, 0, 1/2)
/// for every mu and <00|rho|11> = -i mu / 2.
DensityMatrix4 initial_state(DecoherenceParam p);

/// Classical RK4 integration of
///   d rho / dt = (gamma/2) (2 Jz rho Jz - Jz^2 rho - rho Jz^2).
/// The result is re-Hermitized (averaged with its adjoint) and validated.
/// t = 0 returns rho0 unchanged without stepping.
DensityMatrix4 integrate_master_equation(const DensityMatrix4& rho0, double gamma, double t,
                                         double dt);

}  // namespace qdilemma
