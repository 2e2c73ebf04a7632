#include "pfapipe/pca.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace pfapipe {

double PcaTransform::orthonormality_error() const {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 4; ++k) dot += a[k][i] * a[k][j];
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

PcaTransform compute_pca_transform(const std::array<Plane, 4>& channels) {
  for (int c = 1; c < 4; ++c) {
    require_same_size(channels[0], channels[c], "compute_pca_transform");
  }
  const std::size_t n = channels[0].size();
  if (n == 0) {
    throw ContractError("compute_pca_transform: empty planes");
  }

  PcaTransform t{};
  for (int c = 0; c < 4; ++c) {
    double sum = 0.0;
    const double* s = channels[c].data();
    for (std::size_t i = 0; i < n; ++i) sum += s[i];
    t.mean[c] = sum / static_cast<double>(n);
  }

  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const double* a = channels[i].data();
      const double* b = channels[j].data();
      double mi = t.mean[i], mj = t.mean[j];
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += (a[k] - mi) * (b[k] - mj);
      cov(i, j) = cov(j, i) = acc / static_cast<double>(n);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw ContractError("compute_pca_transform: eigendecomposition failed");
  }

  // Eigen sorts ascending; we want descending.
  std::array<Eigen::Vector4d, 4> rows;
  for (int i = 0; i < 4; ++i) {
    t.eigenvalues[i] = solver.eigenvalues()(3 - i);
    rows[i] = solver.eigenvectors().col(3 - i);
  }

  // Re-span degenerate eigenvalue groups from canonical basis vectors so ties
  // and null spaces come out the same on every run. Group members project the
  // canonical vectors onto the group subspace and orthogonalize in order.
  // The absolute floor groups the numerically-zero eigenvalues of (near-)
  // constant channels, whose covariance entries are pure rounding residue.
  const double tie_tol = std::max(1e-9 * std::abs(t.eigenvalues[0]), 1e-18);
  int start = 0;
  while (start < 4) {
    int end = start + 1;
    while (end < 4 && t.eigenvalues[end - 1] - t.eigenvalues[end] <= tie_tol) ++end;
    if (end - start > 1) {
      Eigen::Matrix4d projector = Eigen::Matrix4d::Zero();
      for (int i = start; i < end; ++i) projector += rows[i] * rows[i].transpose();
      int filled = start;
      for (int k = 0; k < 4 && filled < end; ++k) {
        Eigen::Vector4d v = projector * Eigen::Vector4d::Unit(k);
        for (int i = start; i < filled; ++i) v -= rows[i].dot(v) * rows[i];
        double norm = v.norm();
        if (norm > 1e-6) {
          rows[filled++] = v / norm;
        }
      }
      if (filled != end) {
        throw ContractError("compute_pca_transform: degenerate subspace re-span failed");
      }
    }
    start = end;
  }

  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (std::abs(rows[i](j)) > 1e-9) {
        if (rows[i](j) < 0.0) rows[i] = -rows[i];
        break;
      }
    }
    for (int j = 0; j < 4; ++j) t.a[i][j] = rows[i](j);
  }
  return t;
}

std::array<double, 4> propagate_noise_sigma(const PcaTransform& t,
                                            const std::array<double, 4>& sigma) {
  for (double s : sigma) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ContractError("propagate_noise_sigma: sigmas must be finite and >= 0");
    }
  }
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    double var = 0.0;
    for (int j = 0; j < 4; ++j) {
      var += t.a[i][j] * t.a[i][j] * sigma[j] * sigma[j];
    }
    out[i] = std::sqrt(var);
  }
  return out;
}

std::array<Plane, 4> pca_forward(const PcaTransform& t, const std::array<Plane, 4>& channels) {
  for (int c = 1; c < 4; ++c) {
    require_same_size(channels[0], channels[c], "pca_forward");
  }
  int w = channels[0].width(), h = channels[0].height();
  std::array<Plane, 4> out = {Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
  const std::size_t n = channels[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    double x0 = channels[0].data()[k] - t.mean[0];
    double x1 = channels[1].data()[k] - t.mean[1];
    double x2 = channels[2].data()[k] - t.mean[2];
    double x3 = channels[3].data()[k] - t.mean[3];
    for (int i = 0; i < 4; ++i) {
      out[i].data()[k] = t.a[i][0] * x0 + t.a[i][1] * x1 + t.a[i][2] * x2 + t.a[i][3] * x3;
    }
  }
  return out;
}

std::array<Plane, 4> pca_inverse(const PcaTransform& t, const std::array<Plane, 4>& components) {
  for (int c = 1; c < 4; ++c) {
    require_same_size(components[0], components[c], "pca_inverse");
  }
  int w = components[0].width(), h = components[0].height();
  std::array<Plane, 4> out = {Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
  const std::size_t n = components[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    double p0 = components[0].data()[k];
    double p1 = components[1].data()[k];
    double p2 = components[2].data()[k];
    double p3 = components[3].data()[k];
    for (int j = 0; j < 4; ++j) {
      out[j].data()[k] =
          t.a[0][j] * p0 + t.a[1][j] * p1 + t.a[2][j] * p2 + t.a[3][j] * p3 + t.mean[j];
    }
  }
  return out;
}

}  // namespace pfapipe
