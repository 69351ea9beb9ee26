#include "qdilemma/complex_mat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdilemma/errors.hpp"

namespace qdilemma {

Mat2 Mat2::identity() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    return m;
}

Mat2 Mat2::zero() { return Mat2{}; }

Mat4 Mat4::identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Mat4 Mat4::zero() { return Mat4{}; }

Mat4 Mat4::diagonal(cx d0, cx d1, cx d2, cx d3) {
    Mat4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cx s = 0.0;
            for (int k = 0; k < 2; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cx s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Mat2 operator*(cx s, const Mat2& m) {
    Mat2 r;
    for (size_t i = 0; i < 4; ++i) r.e[i] = s * m.e[i];
    return r;
}

Mat4 operator*(cx s, const Mat4& m) {
    Mat4 r;
    for (size_t i = 0; i < 16; ++i) r.e[i] = s * m.e[i];
    return r;
}

Mat2 adjoint(const Mat2& m) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

Mat4 adjoint(const Mat4& m) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

cx trace(const Mat2& m) { return m(0, 0) + m(1, 1); }

cx trace(const Mat4& m) { return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3); }

Mat4 tensor_product(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

double frobenius_distance(const Mat2& a, const Mat2& b) {
    double s = 0.0;
    for (size_t i = 0; i < 4; ++i) s += std::norm(a.e[i] - b.e[i]);
    return std::sqrt(s);
}

double frobenius_distance(const Mat4& a, const Mat4& b) {
    double s = 0.0;
    for (size_t i = 0; i < 16; ++i) s += std::norm(a.e[i] - b.e[i]);
    return std::sqrt(s);
}

bool all_finite(const Mat2& m) {
    for (const cx& v : m.e)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool all_finite(const Mat4& m) {
    for (const cx& v : m.e)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double hermitian_deviation(const Mat4& m) {
    double dev = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev;
}

double unitary_deviation(const Mat2& u) {
    Mat2 p = adjoint(u) * u;
    double dev = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) dev = std::max(dev, std::abs(p(i, j) - (i == j ? cx{1.0} : cx{0.0})));
    return dev;
}

namespace {

double off_diagonal_norm(const Mat4& m) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// One two-sided rotation zeroing the (p, q) entry of a Hermitian matrix.
// The rotation is J with J(p,p)=c, J(q,q)=c, J(p,q)=s e^{i phase},
// J(q,p)=-s e^{-i phase}; a <- J^dagger a J.
void jacobi_rotate(Mat4& a, int p, int q) {
    const cx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cx phase = apq / r;  // unit modulus
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Columns: col_p <- c*col_p - s*conj(phase)*col_q ; col_q <- s*phase*col_p + c*col_q
    for (int i = 0; i < 4; ++i) {
        const cx aip = a(i, p);
        const cx aiq = a(i, q);
        a(i, p) = c * aip - s * std::conj(phase) * aiq;
        a(i, q) = s * phase * aip + c * aiq;
    }
    // Rows (J^dagger from the left).
    for (int j = 0; j < 4; ++j) {
        const cx apj = a(p, j);
        const cx aqj = a(q, j);
        a(p, j) = c * apj - s * phase * aqj;
        a(q, j) = s * std::conj(phase) * apj + c * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
}

}  // namespace

std::array<double, 4> hermitian_eigenvalues(const Mat4& m) {
    if (!all_finite(m)) throw NotHermitian("hermitian_eigenvalues: matrix has non-finite entries");
    const double dev = hermitian_deviation(m);
    if (dev > tol::kHermitianPrecondition) {
        std::ostringstream msg;
        msg << "hermitian_eigenvalues: Hermitian deviation " << dev << " exceeds "
            << tol::kHermitianPrecondition;
        throw NotHermitian(msg.str());
    }

    // Work on the Hermitian part.
    Mat4 a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= tol::kJacobiOffDiagonal) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) jacobi_rotate(a, p, q);
    }

    std::array<double, 4> ev{a(0, 0).real(), a(1, 1).real(), a(2, 2).real(), a(3, 3).real()};
    std::sort(ev.begin(), ev.end());
    return ev;
}

DensityMatrix4 DensityMatrix4::validated(const Mat4& m, const DensityTolerances& t) {
    if (!all_finite(m)) throw ValidationFailed("density matrix has non-finite entries");
    const double herm = hermitian_deviation(m);
    if (herm > t.hermitian) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian: deviation " << herm << " > " << t.hermitian;
        throw ValidationFailed(msg.str());
    }
    const cx tr = trace(m);
    if (std::abs(tr - cx{1.0}) > t.unit_trace) {
        std::ostringstream msg;
        msg << "density matrix trace " << tr.real() << (tr.imag() < 0 ? "-" : "+")
            << std::abs(tr.imag()) << "i differs from 1 beyond " << t.unit_trace;
        throw ValidationFailed(msg.str());
    }
    const auto ev = hermitian_eigenvalues(m);
    if (ev[0] < -t.psd_min_eigenvalue) {
        std::ostringstream msg;
        msg << "density matrix not PSD: min eigenvalue " << ev[0] << " < -" << t.psd_min_eigenvalue;
        throw ValidationFailed(msg.str());
    }
    return DensityMatrix4(m);
}

}  // namespace qdilemma
