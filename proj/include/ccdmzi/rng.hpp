// Copyright 2026 The ccdmzi Authors
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

// SplitMix64 streams with Box-Muller normals.
//
// Trial t of a run seeded with s draws from the stream whose initial state is
// mix(s) ^ mix(t + 1), where mix is the SplitMix64 finalizer. Streams depend
// only on (seed, trial), so results do not depend on scheduling.

#include <cmath>
#include <cstdint>

namespace ccdmzi {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
        return SplitMix64(splitmix64_mix(seed) ^ splitmix64_mix(trial + 1));
    }

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform in (0, 1], 53-bit resolution.
    double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal draw.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
        const double theta = kTwoPi * uniform_open0();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ccdmzi
