// Copyright 2026 The wstate authors
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

#include <array>
#include <cstdint>

namespace wstate {

// splitmix64 step (Vigna, public domain). Used for state seeding and for
// deriving substream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * @brief Seedable xoshiro256++ generator with deterministic substreams.
 *
 * `substream(i)` depends only on this generator's seed and on `i`, never on
 * how many values were drawn, so per-shot substreams can be consumed in any
 * order (including concurrently) and still reproduce bit-identical results.
 * All floating-point draws are derived from raw 64-bit output, avoiding the
 * implementation-defined behaviour of <random> distributions.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            word = splitmix64_next(s);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire multiply-shift; bias-free enough
    /// for the tiny bounds used here (Pauli choice, outcome sampling).
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Independent generator identified by (seed, stream) alone.
    Rng substream(std::uint64_t stream) const {
        std::uint64_t s = seed_;
        const std::uint64_t a = splitmix64_next(s);
        s ^= (stream + 0x9e3779b97f4a7c15ULL) * 0xff51afd7ed558ccdULL;
        const std::uint64_t b = splitmix64_next(s);
        return Rng(a ^ rotl(b, 32));
    }

    std::uint64_t seed() const { return seed_; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

} // namespace wstate
