#pragma once

#include <cmath>
#include <vector>

#include "hirenet/cluster.hpp"  // Points
#include "hirenet/error.hpp"

namespace hirenet::procrustes {

using grouping::Points;

/// d x d orthogonal factorization M = U diag(s) V^T via one-sided Jacobi.
/// Sized for latent-space dimensions (d is a handful at most).
struct SmallSvd {
  int d = 0;
  std::vector<double> u, v;  // row-major d x d
  std::vector<double> s;
};

inline SmallSvd jacobi_svd(std::vector<double> m, int d) {
  SmallSvd r;
  r.d = d;
  r.v.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) r.v[static_cast<std::size_t>(i) * d + i] = 1.0;

  auto col_dot = [&](const std::vector<double>& a, int p, int q) {
    double s = 0;
    for (int i = 0; i < d; ++i)
      s += a[static_cast<std::size_t>(i) * d + p] * a[static_cast<std::size_t>(i) * d + q];
    return s;
  };
  auto rotate_cols = [&](std::vector<double>& a, int p, int q, double c, double sn) {
    for (int i = 0; i < d; ++i) {
      double ap = a[static_cast<std::size_t>(i) * d + p];
      double aq = a[static_cast<std::size_t>(i) * d + q];
      a[static_cast<std::size_t>(i) * d + p] = c * ap - sn * aq;
      a[static_cast<std::size_t>(i) * d + q] = sn * ap + c * aq;
    }
  };

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int p = 0; p < d - 1; ++p)
      for (int q = p + 1; q < d; ++q) {
        double apq = col_dot(m, p, q);
        double app = col_dot(m, p, p);
        double aqq = col_dot(m, q, q);
        off += std::abs(apq);
        if (std::abs(apq) < 1e-15 * std::sqrt(app * aqq) + 1e-300) continue;
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0 ? 1.0 : -1.0) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double sn = c * t;
        rotate_cols(m, p, q, c, sn);
        rotate_cols(r.v, p, q, c, sn);
      }
    if (off < 1e-14) break;
  }

  r.s.assign(d, 0.0);
  r.u.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (int j = 0; j < d; ++j) {
    double norm = std::sqrt(col_dot(m, j, j));
    r.s[j] = norm;
    for (int i = 0; i < d; ++i)
      r.u[static_cast<std::size_t>(i) * d + j] =
          norm > 1e-300 ? m[static_cast<std::size_t>(i) * d + j] / norm
                        : (i == j ? 1.0 : 0.0);
  }
  return r;
}

/// Rigid motion (translation + rotation + reflection, no scaling) mapping a
/// configuration onto a reference.
struct RigidTransform {
  int d = 0;
  std::vector<double> from_center, to_center;  // length d
  std::vector<double> rot;                     // row-major d x d

  void apply(const double* in, double* out) const {
    std::vector<double> c(d);
    for (int k = 0; k < d; ++k) c[k] = in[k] - from_center[k];
    for (int k = 0; k < d; ++k) {
      double s = 0;
      for (int l = 0; l < d; ++l) s += c[l] * rot[static_cast<std::size_t>(l) * d + k];
      out[k] = s + to_center[k];
    }
  }
};

/// Orthogonal Procrustes fit of `sample` onto `reference` (same shape).
inline RigidTransform fit_transform(const Points& reference, const Points& sample) {
  int n = sample.n, d = sample.d;
  RigidTransform t;
  t.d = d;
  t.from_center.assign(d, 0.0);
  t.to_center.assign(d, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) {
      t.from_center[k] += sample.coord(i, k) / n;
      t.to_center[k] += reference.coord(i, k) / n;
    }
  // cross-covariance C = (sample - c)^T (reference - c'); R = U V^T
  std::vector<double> c(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        c[static_cast<std::size_t>(a) * d + b] +=
            (sample.coord(i, a) - t.from_center[a]) *
            (reference.coord(i, b) - t.to_center[b]);
  SmallSvd svd = jacobi_svd(c, d);
  t.rot.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double s = 0;
      for (int k = 0; k < d; ++k)
        s += svd.u[static_cast<std::size_t>(a) * d + k] *
             svd.v[static_cast<std::size_t>(b) * d + k];
      t.rot[static_cast<std::size_t>(a) * d + b] = s;
    }
  return t;
}

inline Points align(const Points& reference, const Points& sample) {
  RigidTransform t = fit_transform(reference, sample);
  Points out = sample;
  std::vector<double> tmp(sample.d);
  for (int i = 0; i < sample.n; ++i) {
    t.apply(&sample.x[static_cast<std::size_t>(i) * sample.d], tmp.data());
    for (int k = 0; k < sample.d; ++k)
      out.x[static_cast<std::size_t>(i) * sample.d + k] = tmp[k];
  }
  return out;
}

}  // namespace hirenet::procrustes
