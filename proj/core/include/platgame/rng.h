// Copyright 2026 The platgame Authors.
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

#ifndef PLATGAME_RNG_H_
#define PLATGAME_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace platgame {

// Seeded generator with distribution code fixed here rather than in the
// standard library, so runs are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  std::size_t Index(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace platgame

#endif  // PLATGAME_RNG_H_
