#pragma once

// Dense reference implementations used only by the tests. Nothing here calls
// into the library's structured evaluators.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char p) {
  Mat m(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker product of Pauli letters, leftmost letter = most significant factor.
inline Mat pauli_string(const std::string& s) {
  Mat m = Mat::Identity(1, 1);
  for (char c : s) m = kron(m, pauli(c));
  return m;
}

inline Mat site_operator(int n, int site, const Mat& op) {
  const int d = static_cast<int>(op.rows());
  Mat m = Mat::Identity(1, 1);
  for (int s = 0; s < n; ++s) m = kron(m, s == site ? op : Mat::Identity(d, d));
  return m;
}

inline double expect(const Vec& psi, const Mat& op) { return (psi.adjoint() * op * psi)(0, 0).real(); }

/// rho_A for the split (d_a, d_b) of a vector of length d_a * d_b.
inline Mat reduced_left(const Vec& psi, int d_a, int d_b) {
  Mat rho = Mat::Zero(d_a, d_a);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_a; ++j)
      for (int k = 0; k < d_b; ++k) rho(i, j) += psi(i * d_b + k) * std::conj(psi(j * d_b + k));
  return rho;
}

/// Single-site reduced density matrix by explicit marginalization.
inline Mat reduced_site(const Vec& psi, int n, int d, int site) {
  Mat rho = Mat::Zero(d, d);
  const Eigen::Index N = psi.size();
  long right = 1;
  for (int s = site + 1; s < n; ++s) right *= d;
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b) {
      // a and b must agree on every site except `site`.
      bool same = true;
      long x = a, y = b;
      for (int s = n - 1; s >= 0 && same; --s, x /= d, y /= d)
        if (s != site && x % d != y % d) same = false;
      if (!same) continue;
      const int sa = static_cast<int>((a / right) % d), sb = static_cast<int>((b / right) % d);
      rho(sa, sb) += psi(a) * std::conj(psi(b));
    }
  return rho;
}

/// Average normalized single-site purity (d tr rho^2 - 1)/(d - 1).
inline double local_purity(const Vec& psi, int n, int d) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const Mat r = reduced_site(psi, n, d, i);
    const double tr2 = (r * r).trace().real();
    s += (d * tr2 - 1.0) / (d - 1.0);
  }
  return s / n;
}

/// Projector onto basis indices listed in `keep`, as an N x N_S isometry.
inline Eigen::MatrixXd isometry(long N, const std::vector<long>& keep) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(N, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) v(keep[c], static_cast<Eigen::Index>(c)) = 1.0;
  return v;
}

inline int popcount(long v) { return __builtin_popcountl(static_cast<unsigned long>(v)); }

}  // namespace oracle
