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

#pragma once

#include <array>
#include <cstdint>

namespace traversim
{

/// Seeded 2D OpenSimplex gradient noise.
///
/// Uses the original stretch/squish lattice formulation with the 8-direction
/// gradient set and the LCG-driven permutation shuffle, so a given seed
/// reproduces the widely used reference implementations. Immutable after
/// construction; `noise2d` is safe to call from any number of threads.
class NoiseSource
{
public:
  explicit NoiseSource(std::int64_t seed);

  std::int64_t seed() const { return seed_; }

  /// Value in [-1, 1]; pure function of (seed, x, y).
  double noise2d(double x, double y) const;

private:
  double extrapolate(int xsb, int ysb, double dx, double dy) const;

  std::int64_t seed_;
  std::array<std::int16_t, 256> perm_{};
};

}  // namespace traversim
