// Copyright 2026 The Coalition Forge Authors
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

// Portable random streams for the simulator.
//
// Every draw is defined by the algorithms below, not by the standard
// library's distributions (whose output is implementation-defined), so a
// given (seed, stream) produces the same values on any platform:
//
//   seeding     SplitMix64 started at seed ^ (0x9E3779B97F4A7C15 * (stream + 1));
//               its first four outputs form the xoshiro256** state.
//   engine      xoshiro256** (Blackman & Vigna, 2018).
//   uniform     (x >> 11) * 2^-53 on [0, 1); (x >> 11) + 0.5 scaled for (0, 1).
//   below(n)    rejection: draw x until x >= (2^64 - n) mod n, return x mod n.
//   normal      Marsaglia polar method, second variate discarded.
//   gamma(a)    Marsaglia-Tsang squeeze; a < 1 via gamma(a + 1) * U^(1/a).

#ifndef COALITION_FORGE_RANDOM_HPP_
#define COALITION_FORGE_RANDOM_HPP_

#include <array>
#include <cstdint>

namespace coalition_forge {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

class Rng {
 public:
  // Independent stream `stream` of the run seeded with `seed`.
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1)
  std::uint64_t below(std::uint64_t n);
  double normal();
  double gamma(double shape);

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace coalition_forge

#endif  // COALITION_FORGE_RANDOM_HPP_
