#include "qdilemma/channel.hpp"

#include <cmath>
#include <sstream>

#include "qdilemma/errors.hpp"

namespace qdilemma {

DecoherenceParam DecoherenceParam::from_mu(double mu) {
    if (!std::isfinite(mu) || mu < 0.0 || mu > 1.0) {
        std::ostringstream msg;
        msg << "mu = " << mu << " outside legal range [0, 1]";
        throw InvalidParameter(msg.str());
    }
    return {mu};
}

DecoherenceParam DecoherenceParam::from_gamma_t(double gamma_t) {
    if (!std::isfinite(gamma_t) || gamma_t < 0.0) {
        std::ostringstream msg;
        msg << "gamma_t = " << gamma_t << " outside legal range [0, inf)";
        throw InvalidParameter(msg.str());
    }
    return {std::exp(-2.0 * gamma_t)};  // underflows to 0 for huge gamma_t, accepted
}

Mat4 collective_jz() { return Mat4::diagonal(1.0, 0.0, 0.0, -1.0); }

DensityMatrix4 initial_state(DecoherenceParam p) {
    if (!std::isfinite(p.mu) || p.mu < 0.0 || p.mu > 1.0) {
        std::ostringstream msg;
        msg << "mu = " << p.mu << " outside legal range [0, 1]";
        throw InvalidParameter(msg.str());
    }
    Mat4 m;
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    m(0, 3) = cx{0.0, -0.5 * p.mu};
    m(3, 0) = cx{0.0, 0.5 * p.mu};
    return DensityMatrix4::validated(m);
}

namespace {

Mat4 dephasing_rhs(const Mat4& rho, double gamma, const Mat4& jz, const Mat4& jz2) {
    Mat4 d = cx{2.0} * (jz * rho * jz) - jz2 * rho - rho * jz2;
    return cx{0.5 * gamma} * d;
}

Mat4 rk4_step(const Mat4& rho, double gamma, double h, const Mat4& jz, const Mat4& jz2) {
    const Mat4 k1 = dephasing_rhs(rho, gamma, jz, jz2);
    const Mat4 k2 = dephasing_rhs(rho + cx{0.5 * h} * k1, gamma, jz, jz2);
    const Mat4 k3 = dephasing_rhs(rho + cx{0.5 * h} * k2, gamma, jz, jz2);
    const Mat4 k4 = dephasing_rhs(rho + cx{h} * k3, gamma, jz, jz2);
    return rho + cx{h / 6.0} * (k1 + cx{2.0} * k2 + cx{2.0} * k3 + k4);
}

}  // namespace

DensityMatrix4 integrate_master_equation(const DensityMatrix4& rho0, double gamma, double t,
                                         double dt) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw InvalidParameter("gamma must be finite and >= 0");
    if (!std::isfinite(t) || t < 0.0) throw InvalidParameter("t must be finite and >= 0");
    if (!std::isfinite(dt) || dt <= 0.0) throw InvalidParameter("dt must be finite and > 0");
    if (t == 0.0) return rho0;
    if (dt > t) throw InvalidParameter("dt must not exceed t");

    const Mat4 jz = collective_jz();
    const Mat4 jz2 = jz * jz;
    Mat4 rho = rho0.mat();

    const long n_full = static_cast<long>(std::floor(t / dt + 1e-12));
    for (long i = 0; i < n_full; ++i) rho = rk4_step(rho, gamma, dt, jz, jz2);
    const double rem = t - static_cast<double>(n_full) * dt;
    if (rem > 1e-15) rho = rk4_step(rho, gamma, rem, jz, jz2);

    rho = cx{0.5} * (rho + adjoint(rho));

    DensityTolerances relaxed;
    relaxed.hermitian = tol::kIntegratorValidation;
    relaxed.unit_trace = tol::kIntegratorValidation;
    relaxed.psd_min_eigenvalue = tol::kIntegratorValidation;
    return DensityMatrix4::validated(rho, relaxed);
}

}  // namespace qdilemma
