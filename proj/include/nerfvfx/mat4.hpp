// Copyright 2026 The nerfvfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "nerfvfx/error.hpp"

namespace nerfvfx {

/// Determinant magnitude of the upper-left 3x3 block at or below which a
/// transform is treated as singular.
inline constexpr double kSingularDeterminant = 1e-12;

/// Relative spread of column norms above which a scale is non-uniform.
inline constexpr double kUniformScaleTolerance = 1e-4;

/// A 4x4 worldspace transform acting on column vectors, stored row-major.
///
/// Translation lives in the last column. Transforms built from interchange
/// data are affine (bottom row exactly 0 0 0 1) and invertible.
class Mat4 {
 public:
  constexpr Mat4() : m_{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1} {}

  static constexpr Mat4 identity() { return Mat4(); }

  static constexpr Mat4 from_row_major(const std::array<double, 16>& values) {
    Mat4 out;
    out.m_ = values;
    return out;
  }

  static Mat4 from_row_major(std::span<const double, 16> values) {
    Mat4 out;
    std::copy(values.begin(), values.end(), out.m_.begin());
    return out;
  }

  static constexpr Mat4 translation(double x, double y, double z) {
    Mat4 out;
    out(0, 3) = x;
    out(1, 3) = y;
    out(2, 3) = z;
    return out;
  }

  static constexpr Mat4 scale(double x, double y, double z) {
    Mat4 out;
    out(0, 0) = x;
    out(1, 1) = y;
    out(2, 2) = z;
    return out;
  }

  constexpr double operator()(std::size_t row, std::size_t col) const {
    return m_[row * 4 + col];
  }
  constexpr double& operator()(std::size_t row, std::size_t col) {
    return m_[row * 4 + col];
  }

  constexpr const std::array<double, 16>& row_major() const { return m_; }

  constexpr std::array<double, 3> translation_part() const {
    return {m_[3], m_[7], m_[11]};
  }

  constexpr bool is_affine() const {
    return m_[12] == 0.0 && m_[13] == 0.0 && m_[14] == 0.0 && m_[15] == 1.0;
  }

  /// Determinant of the upper-left 3x3 (rotation/scale) block.
  constexpr double linear_determinant() const {
    const auto& a = m_;
    return a[0] * (a[5] * a[10] - a[6] * a[9]) -
           a[1] * (a[4] * a[10] - a[6] * a[8]) +
           a[2] * (a[4] * a[9] - a[5] * a[8]);
  }

  bool is_invertible() const {
    return std::abs(linear_determinant()) > kSingularDeterminant;
  }

  friend constexpr bool operator==(const Mat4&, const Mat4&) = default;

 private:
  std::array<double, 16> m_;
};

inline Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 out;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c) +
                  a(r, 3) * b(3, c);
    }
  }
  return out;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) { return multiply(a, b); }

/// Inverts an affine transform: the 3x3 block by its adjugate, the
/// translation by back-substitution. The result has an exact 0 0 0 1 row.
inline Mat4 invert(const Mat4& m) {
  const double det = m.linear_determinant();
  if (!(std::abs(det) > kSingularDeterminant)) {
    throw Error(ErrorCode::SingularMatrix,
                "3x3 determinant magnitude is at or below 1e-12");
  }
  const double inv_det = 1.0 / det;

  Mat4 out;
  out(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) * inv_det;
  out(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) * inv_det;
  out(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) * inv_det;
  out(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) * inv_det;
  out(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) * inv_det;
  out(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) * inv_det;
  out(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) * inv_det;
  out(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) * inv_det;
  out(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) * inv_det;

  const double tx = m(0, 3), ty = m(1, 3), tz = m(2, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    out(r, 3) = -(out(r, 0) * tx + out(r, 1) * ty + out(r, 2) * tz);
  }
  return out;
}

/// Expresses a camera's world transform in the local frame of the NeRF
/// proxy: inverse(nerf_world) * camera_world.
inline Mat4 align_camera(const Mat4& camera_world, const Mat4& nerf_world) {
  return multiply(invert(nerf_world), camera_world);
}

struct ScaleAnalysis {
  std::array<double, 3> column_norms{};
  bool uniform = true;

  friend bool operator==(const ScaleAnalysis&, const ScaleAnalysis&) = default;
};

inline ScaleAnalysis analyze_scale(const Mat4& m) {
  ScaleAnalysis out;
  for (std::size_t c = 0; c < 3; ++c) {
    out.column_norms[c] = std::hypot(m(0, c), m(1, c), m(2, c));
  }
  // Relative difference of each pair against the larger of the two.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double a = out.column_norms[i], b = out.column_norms[j];
      const double largest = std::max(a, b);
      if (largest > 0.0 && std::abs(a - b) / largest > kUniformScaleTolerance) {
        out.uniform = false;
      }
    }
  }
  return out;
}

/// Largest absolute elementwise difference.
inline double max_abs_difference(const Mat4& a, const Mat4& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    worst = std::max(worst, std::abs(a.row_major()[i] - b.row_major()[i]));
  }
  return worst;
}

}  // namespace nerfvfx
