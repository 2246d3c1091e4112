#pragma once

// Small dense complex linear algebra: fixed 2x2 matrices and a cyclic Jacobi
// eigensolver for Hermitian matrices of modest dimension (everything in this
// project is <= 2*steps+1 wide, so no blocking or pivoting heuristics).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace nhwalk {

using cplx = std::complex<double>;

struct Mat2 {
  // row-major: a[0]=m00 a[1]=m01 a[2]=m10 a[3]=m11
  std::array<cplx, 4> a{};

  static Mat2 identity() { return Mat2{{cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)}}; }

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }

  Mat2 operator*(const Mat2& o) const {
    Mat2 r;
    r.a[0] = a[0] * o.a[0] + a[1] * o.a[2];
    r.a[1] = a[0] * o.a[1] + a[1] * o.a[3];
    r.a[2] = a[2] * o.a[0] + a[3] * o.a[2];
    r.a[3] = a[2] * o.a[1] + a[3] * o.a[3];
    return r;
  }
};

inline cplx det(const Mat2& m) { return m.a[0] * m.a[3] - m.a[1] * m.a[2]; }

inline Mat2 inverse(const Mat2& m) {
  const cplx d = det(m);
  if (std::abs(d) == 0.0) throw std::runtime_error("Mat2 inverse: singular matrix");
  return Mat2{{m.a[3] / d, -m.a[1] / d, -m.a[2] / d, m.a[0] / d}};
}

inline double max_abs_diff(const Mat2& x, const Mat2& y) {
  double m = 0.0;
  for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(x.a[static_cast<std::size_t>(k)] - y.a[static_cast<std::size_t>(k)]));
  return m;
}

// sin(z)/z with the removable singularity handled by series; needed when a
// 2x2 generator becomes defective (coalescing eigenvalues).
inline cplx sinc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// Eigenvalues of a Hermitian n x n matrix (row-major), ascending.
//
// Cyclic Jacobi with complex plane rotations: each (p,q) pair is phase-rotated
// to a real 2x2 symmetric subproblem and annihilated by the classic rotation
// with |tan theta| <= 1. Iterates until the off-diagonal Frobenius norm drops
// below 1e-14 * max(1, ||A||_F); for the matrices handled here that is well
// under the 1e-13 budget every caller assumes.
inline std::vector<double> hermitian_eigenvalues(std::vector<cplx> m, int n) {
  if (n <= 0 || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != m.size())
    throw std::invalid_argument("hermitian_eigenvalues: bad dimension");
  auto at = [&](int i, int j) -> cplx& { return m[static_cast<std::size_t>(i) * n + j]; };

  if (n == 1) return {at(0, 0).real()};

  double frob2 = 0.0;
  for (const cplx& v : m) frob2 += std::norm(v);
  const double tol = 1e-14 * std::max(1.0, std::sqrt(frob2));

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off2 += std::norm(at(p, q));
    if (std::sqrt(2.0 * off2) < tol) {
      std::vector<double> ev(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = at(i, i).real();
      std::sort(ev.begin(), ev.end());
      return ev;
    }

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = at(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const cplx phase = apq / r;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // unitary: columns (p,q) mix via diag(phase,1) * [[c,s],[-s,c]]
        const cplx upp = c * phase, upq = s * phase;
        const double uqp = -s, uqq = c;

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = at(k, p), akq = at(k, q);
          at(k, p) = akp * upp + akq * uqp;
          at(k, q) = akp * upq + akq * uqq;
          at(p, k) = std::conj(at(k, p));
          at(q, k) = std::conj(at(k, q));
        }
        const double npp = c * c * app - 2.0 * s * c * r + s * s * aqq;
        const double nqq = s * s * app + 2.0 * s * c * r + c * c * aqq;
        at(p, p) = npp;
        at(q, q) = nqq;
        at(p, q) = at(q, p) = 0.0;
      }
    }
  }
  throw std::runtime_error("hermitian_eigenvalues: Jacobi sweep limit reached");
}

}  // namespace nhwalk
