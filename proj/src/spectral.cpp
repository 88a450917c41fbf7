#include "biscore/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include <Eigen/SVD>
#include <lapacke.h>

#include "biscore/error.hpp"

// Present only when linked against OpenBLAS.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace biscore {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// A threaded BLAS may reduce in a thread-count dependent order; one thread
// keeps results bitwise stable however many callers run concurrently.
void pin_blas_threads() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (openblas_set_num_threads != nullptr) openblas_set_num_threads(1);
  });
}

// Modified Gram-Schmidt (two passes) over the columns of q, in order.
// Columns flagged in `replace`, or that collapse during projection, are
// swapped for the first canonical basis vector that is far enough from the
// span of the previous columns.
void orthonormalize(Eigen::MatrixXd& q, const std::vector<bool>& replace) {
  const Index rows = q.rows();
  Index next_basis = 0;
  for (Index k = 0; k < q.cols(); ++k) {
    auto project_out = [&](Eigen::VectorXd v) {
      for (int pass = 0; pass < 2; ++pass) {
        for (Index j = 0; j < k; ++j) v -= q.col(j).dot(v) * q.col(j);
      }
      return v;
    };
    Eigen::VectorXd v = q.col(k);
    bool ok = !replace[static_cast<std::size_t>(k)];
    if (ok) {
      const double before = v.norm();
      v = project_out(std::move(v));
      ok = before > 0.0 && v.norm() > 0.5 * before;
    }
    while (!ok) {
      if (next_basis >= rows) throw NumericalError("cannot complete orthonormal basis");
      v = project_out(Eigen::VectorXd::Unit(rows, next_basis++));
      ok = v.norm() > 0.5;
    }
    q.col(k) = v / v.norm();
  }
}

SpectralEmbedding dense_route(const Eigen::MatrixXd& a, Index kappa) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SpectralEmbedding e;
  e.kappa = kappa;
  e.U = svd.matrixU().leftCols(kappa);
  e.V = svd.matrixV().leftCols(kappa);
  e.sigma = svd.singularValues().head(kappa);
  const double tol = static_cast<double>(std::max(a.rows(), a.cols())) * kEps * e.sigma(0);
  e.rank_deficient = e.sigma(kappa - 1) <= tol;
  return e;
}

SpectralEmbedding gram_route(const Eigen::MatrixXd& a, Index kappa) {
  pin_blas_threads();
  const bool rows_smaller = a.rows() <= a.cols();
  const Index p = rows_smaller ? a.rows() : a.cols();

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p, p);
  if (rows_smaller) {
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a);
  } else {
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a.transpose());
  }

  // dsyevr with range 'I' returns eigenpairs il..iu in ascending order.
  std::vector<double> values(static_cast<std::size_t>(p));
  Eigen::MatrixXd vectors(p, kappa);
  std::vector<lapack_int> support(static_cast<std::size_t>(2 * kappa));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(p), gram.data(),
      static_cast<lapack_int>(p), 0.0, 0.0, static_cast<lapack_int>(p - kappa + 1),
      static_cast<lapack_int>(p), 0.0, &found, values.data(), vectors.data(),
      static_cast<lapack_int>(p), support.data());
  if (info != 0 || found != kappa) {
    throw NumericalError("symmetric eigensolver failed (info " + std::to_string(info) + ")");
  }

  SpectralEmbedding e;
  e.kappa = kappa;
  e.sigma.resize(kappa);
  Eigen::MatrixXd small_side(p, kappa);
  for (Index k = 0; k < kappa; ++k) {
    const Index src = kappa - 1 - k;
    e.sigma(k) = std::sqrt(std::max(values[static_cast<std::size_t>(src)], 0.0));
    small_side.col(k) = vectors.col(src);
  }

  // Eigenvalues of the Gram matrix resolve singular values only down to
  // about sqrt(eps) * sigma_1.
  const double tol = std::sqrt(static_cast<double>(p) * kEps) * e.sigma(0);
  std::vector<bool> degenerate(static_cast<std::size_t>(kappa));
  Eigen::MatrixXd large_side = rows_smaller ? Eigen::MatrixXd(a.transpose() * small_side)
                                            : Eigen::MatrixXd(a * small_side);
  for (Index k = 0; k < kappa; ++k) {
    degenerate[static_cast<std::size_t>(k)] = e.sigma(k) <= tol;
    if (!degenerate[static_cast<std::size_t>(k)]) large_side.col(k) /= e.sigma(k);
  }
  e.rank_deficient = degenerate.back();
  orthonormalize(large_side, degenerate);

  if (rows_smaller) {
    e.U = std::move(small_side);
    e.V = std::move(large_side);
  } else {
    e.U = std::move(large_side);
    e.V = std::move(small_side);
  }
  return e;
}

void flip(SpectralEmbedding& e, Index k) {
  e.U.col(k) *= -1.0;
  e.V.col(k) *= -1.0;
}

bool largest_entry_negative(const Eigen::MatrixXd& u, Index k) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < u.rows(); ++i) {
    const double v = std::abs(u(i, k));
    if (v > best_abs) {
      best_abs = v;
      best = i;
    }
  }
  return u(best, k) < 0.0;
}

}  // namespace

Eigen::MatrixXd SpectralEmbedding::reconstruct() const {
  return U * sigma.asDiagonal() * V.transpose();
}

SpectralEmbedding truncated_svd(const Eigen::MatrixXd& a, Index kappa) {
  const Index p = std::min(a.rows(), a.cols());
  if (kappa < 1 || kappa > p) {
    throw DataError("kappa " + std::to_string(kappa) + " outside 1.." + std::to_string(p));
  }
  if (!a.allFinite()) throw DataError("matrix has non-finite entries");
  if (a.cwiseAbs().maxCoeff() == 0.0) {
    throw NumericalError("zero matrix has no leading singular direction");
  }
  SpectralEmbedding e = p <= kDenseSvdLimit ? dense_route(a, kappa) : gram_route(a, kappa);
  return canonicalize_signs(std::move(e));
}

SpectralEmbedding truncated_svd(const BipartiteAdjacency& a, Index kappa) {
  return truncated_svd(a.weights(), kappa);
}

SpectralEmbedding canonicalize_signs(SpectralEmbedding e) {
  for (Index k = 0; k < e.U.cols(); ++k) {
    if (k == 0) {
      const double sum = e.U.col(0).sum();
      if (sum < 0.0 || (sum == 0.0 && largest_entry_negative(e.U, 0))) flip(e, 0);
    } else if (largest_entry_negative(e.U, k)) {
      flip(e, k);
    }
  }
  return e;
}

}  // namespace biscore
