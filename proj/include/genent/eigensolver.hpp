#pragma once

// Dense real-symmetric eigendecomposition. Uses LAPACK's divide-and-conquer
// driver when available, otherwise Eigen's self-adjoint solver.

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "genent/error.hpp"

#ifdef GENENT_HAVE_LAPACKE
#include <lapacke.h>
extern "C" void openblas_set_num_threads(int);
#endif

namespace genent {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

namespace detail {

inline SymmetricEigen eigen_selfadjoint(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  require(es.info() == Eigen::Success, ErrorKind::Numerical, "self-adjoint eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

#ifdef GENENT_HAVE_LAPACKE
inline SymmetricEigen lapacke_dsyevd(Eigen::MatrixXd a) {
  const auto n = a.rows();
  SymmetricEigen out;
  out.values.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n), a.data(),
                                         static_cast<lapack_int>(n), out.values.data());
  require(info == 0, ErrorKind::Numerical, "dsyevd failed with info = " + std::to_string(info));
  out.vectors = std::move(a);
  return out;
}

/// Some OpenBLAS builds pick a kernel that returns wrong eigenvectors on this
/// CPU (fixable with OPENBLAS_CORETYPE). Solve a fixed test matrix once and
/// fall back to Eigen if the result is off.
inline bool lapacke_usable() {
  static const bool ok = [] {
    openblas_set_num_threads(1);
    const Eigen::Index n = 160;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = std::sin(0.37 * static_cast<double>(i * n + j) + 1.0);
    const auto e = lapacke_dsyevd(a);
    const double res = (a * e.vectors - e.vectors * e.values.asDiagonal()).cwiseAbs().maxCoeff();
    const double orth = (e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    return res < 1e-10 * n && orth < 1e-10;
  }();
  return ok;
}
#endif

}  // namespace detail

inline const char* eigensolver_backend() {
#ifdef GENENT_HAVE_LAPACKE
  return detail::lapacke_usable() ? "lapacke-dsyevd" : "eigen-selfadjoint (lapacke failed self-check)";
#else
  return "eigen-selfadjoint";
#endif
}

inline SymmetricEigen symmetric_eigen(Eigen::MatrixXd a) {
  require(a.cols() == a.rows(), ErrorKind::DimensionMismatch, "symmetric_eigen needs a square matrix");
#ifdef GENENT_HAVE_LAPACKE
  // BLAS runs single-threaded so results do not depend on how many
  // realizations run concurrently.
  if (detail::lapacke_usable()) return detail::lapacke_dsyevd(std::move(a));
#endif
  return detail::eigen_selfadjoint(a);
}

}  // namespace genent
