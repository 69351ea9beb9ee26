#pragma once

#include <array>
#include <complex>

#include "qdilemma/tolerances.hpp"

// Exact small dense complex linear algebra for the two-qubit game.
// Basis order is fixed globally as |00>, |01>, |10>, |11>; every matrix in
// the project uses it.

namespace qdilemma {

using cx = std::complex<double>;

struct Mat2 {
    std::array<cx, 4> e{};

    cx& operator()(int r, int c) { return e[static_cast<size_t>(2 * r + c)]; }
    const cx& operator()(int r, int c) const { return e[static_cast<size_t>(2 * r + c)]; }

    static Mat2 identity();
    static Mat2 zero();
};

struct Mat4 {
    std::array<cx, 16> e{};

    cx& operator()(int r, int c) { return e[static_cast<size_t>(4 * r + c)]; }
    const cx& operator()(int r, int c) const { return e[static_cast<size_t>(4 * r + c)]; }

    static Mat4 identity();
    static Mat4 zero();
    static Mat4 diagonal(cx d0, cx d1, cx d2, cx d3);
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat4 operator+(const Mat4& a, const Mat4& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat2 operator*(cx s, const Mat2& m);
Mat4 operator*(cx s, const Mat4& m);

Mat2 adjoint(const Mat2& m);
Mat4 adjoint(const Mat4& m);

cx trace(const Mat2& m);
cx trace(const Mat4& m);

/// Kronecker product in basis order |00>, |01>, |10>, |11|: the left factor
/// acts on Alice's qubit, the right factor on Bob's.
Mat4 tensor_product(const Mat2& a, const Mat2& b);

double frobenius_distance(const Mat2& a, const Mat2& b);
double frobenius_distance(const Mat4& a, const Mat4& b);

bool all_finite(const Mat2& m);
bool all_finite(const Mat4& m);

/// max_jk |m_jk - conj(m_kj)|
double hermitian_deviation(const Mat4& m);

/// max entry magnitude of u^dagger u - I
double unitary_deviation(const Mat2& u);

/// Eigenvalues of the Hermitian part of m, ascending. Cyclic Jacobi
/// rotations; the dimension is fixed so no external solver is needed.
/// Throws NotHermitian if m deviates from Hermitian beyond the
/// precondition tolerance.
std::array<double, 4> hermitian_eigenvalues(const Mat4& m);

struct DensityTolerances {
    double hermitian = tol::kHermitian;
    double unit_trace = tol::kUnitTrace;
    double psd_min_eigenvalue = tol::kPsdMinEigenvalue;
};

/// A validated two-qubit state: Hermitian, unit trace, positive
/// semidefinite. Immutable after construction.
class DensityMatrix4 {
  public:
    /// Validates the invariants and throws ValidationFailed on violation.
    static DensityMatrix4 validated(const Mat4& m, const DensityTolerances& t = {});

    const Mat4& mat() const { return mat_; }

  private:
    explicit DensityMatrix4(const Mat4& m) : mat_(m) {}
    Mat4 mat_;
};

}  // namespace qdilemma
