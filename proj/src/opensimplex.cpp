// Copyright 2026 The traversim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "traversim/opensimplex.hpp"

#include <algorithm>
#include <cmath>

namespace traversim
{

namespace
{

constexpr double kStretch = -0.211324865405187;  // (1/sqrt(2+1)-1)/2
constexpr double kSquish = 0.366025403784439;    // (sqrt(2+1)-1)/2
constexpr double kNorm = 47.0;

// Directions to the vertices of an octagon.
constexpr std::array<int, 16> kGradients = {
  5, 2, 2, 5,
  -5, 2, -2, 5,
  5, -2, 2, -5,
  -5, -2, -2, -5,
};

constexpr std::uint64_t kLcgMul = 6364136223846793005ULL;
constexpr std::uint64_t kLcgInc = 1442695040888963407ULL;

int fast_floor(double x)
{
  int xi = static_cast<int>(x);
  return x < xi ? xi - 1 : xi;
}

}  // namespace

NoiseSource::NoiseSource(std::int64_t seed)
: seed_(seed)
{
  std::array<std::int16_t, 256> source{};
  for (int i = 0; i < 256; ++i) source[i] = static_cast<std::int16_t>(i);

  // Unsigned arithmetic gives the two's-complement wraparound the reference relies on.
  auto state = static_cast<std::uint64_t>(seed);
  for (int k = 0; k < 3; ++k) state = state * kLcgMul + kLcgInc;
  for (int i = 255; i >= 0; --i) {
    state = state * kLcgMul + kLcgInc;
    auto shifted = static_cast<std::int64_t>(state + 31);
    auto r = static_cast<int>(shifted % (i + 1));
    if (r < 0) r += i + 1;
    perm_[i] = source[r];
    source[r] = source[i];
  }
}

double NoiseSource::extrapolate(int xsb, int ysb, double dx, double dy) const
{
  int index = perm_[(perm_[xsb & 0xFF] + ysb) & 0xFF] & 0x0E;
  return kGradients[index] * dx + kGradients[index + 1] * dy;
}

double NoiseSource::noise2d(double x, double y) const
{
  // Place input coordinates onto the stretched lattice.
  double stretch_offset = (x + y) * kStretch;
  double xs = x + stretch_offset;
  double ys = y + stretch_offset;

  int xsb = fast_floor(xs);
  int ysb = fast_floor(ys);

  double squish_offset = (xsb + ysb) * kSquish;
  double xb = xsb + squish_offset;
  double yb = ysb + squish_offset;

  double xins = xs - xsb;
  double yins = ys - ysb;
  double in_sum = xins + yins;

  double dx0 = x - xb;
  double dy0 = y - yb;

  double dx_ext, dy_ext;
  int xsv_ext, ysv_ext;

  double value = 0.0;

  // Contribution (1,0)
  double dx1 = dx0 - 1 - kSquish;
  double dy1 = dy0 - 0 - kSquish;
  double attn1 = 2 - dx1 * dx1 - dy1 * dy1;
  if (attn1 > 0) {
    attn1 *= attn1;
    value += attn1 * attn1 * extrapolate(xsb + 1, ysb + 0, dx1, dy1);
  }

  // Contribution (0,1)
  double dx2 = dx0 - 0 - kSquish;
  double dy2 = dy0 - 1 - kSquish;
  double attn2 = 2 - dx2 * dx2 - dy2 * dy2;
  if (attn2 > 0) {
    attn2 *= attn2;
    value += attn2 * attn2 * extrapolate(xsb + 0, ysb + 1, dx2, dy2);
  }

  if (in_sum <= 1) {
    // Inside the triangle at (0,0).
    double zins = 1 - in_sum;
    if (zins > xins || zins > yins) {
      if (xins > yins) {
        xsv_ext = xsb + 1;
        ysv_ext = ysb - 1;
        dx_ext = dx0 - 1;
        dy_ext = dy0 + 1;
      } else {
        xsv_ext = xsb - 1;
        ysv_ext = ysb + 1;
        dx_ext = dx0 + 1;
        dy_ext = dy0 - 1;
      }
    } else {
      xsv_ext = xsb + 1;
      ysv_ext = ysb + 1;
      dx_ext = dx0 - 1 - 2 * kSquish;
      dy_ext = dy0 - 1 - 2 * kSquish;
    }
  } else {
    // Inside the triangle at (1,1).
    double zins = 2 - in_sum;
    if (zins < xins || zins < yins) {
      if (xins > yins) {
        xsv_ext = xsb + 2;
        ysv_ext = ysb + 0;
        dx_ext = dx0 - 2 - 2 * kSquish;
        dy_ext = dy0 + 0 - 2 * kSquish;
      } else {
        xsv_ext = xsb + 0;
        ysv_ext = ysb + 2;
        dx_ext = dx0 + 0 - 2 * kSquish;
        dy_ext = dy0 - 2 - 2 * kSquish;
      }
    } else {
      dx_ext = dx0;
      dy_ext = dy0;
      xsv_ext = xsb;
      ysv_ext = ysb;
    }
    xsb += 1;
    ysb += 1;
    dx0 = dx0 - 1 - 2 * kSquish;
    dy0 = dy0 - 1 - 2 * kSquish;
  }

  // Contribution (0,0) or (1,1)
  double attn0 = 2 - dx0 * dx0 - dy0 * dy0;
  if (attn0 > 0) {
    attn0 *= attn0;
    value += attn0 * attn0 * extrapolate(xsb, ysb, dx0, dy0);
  }

  // Extra vertex
  double attn_ext = 2 - dx_ext * dx_ext - dy_ext * dy_ext;
  if (attn_ext > 0) {
    attn_ext *= attn_ext;
    value += attn_ext * attn_ext * extrapolate(xsv_ext, ysv_ext, dx_ext, dy_ext);
  }

  // The normalized sum stays well inside [-1, 1]; the clamp makes the bound unconditional.
  return std::clamp(value / kNorm, -1.0, 1.0);
}

}  // namespace traversim
