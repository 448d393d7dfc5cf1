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

// Random circuit ASTs for round-trip fuzzing.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ccdmzi/circuit.hpp"

namespace testgen {

using namespace ccdmzi::circuit;

inline Stmt stmt(auto node) { return Stmt{node}; }

// Doubles drawn so that a handful are awkward for printing: tiny, huge, negative, integral.
inline double awkward_double(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    switch (pick(rng)) {
        case 0:
            return std::ldexp(u(rng), std::uniform_int_distribution<int>(-900, 900)(rng));
        case 1:
            return std::round(u(rng));
        case 2:
            return 1.0;
        default:
            return u(rng);
    }
}

inline PhaseExpr random_phase(std::mt19937_64& rng) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
            return SweepVar{awkward_double(rng)};
        case 1:
            return Literal{awkward_double(rng)};
        default:
            return LiteralPi{awkward_double(rng)};
    }
}

inline std::vector<Stmt> random_block(std::mt19937_64& rng, int depth) {
    std::vector<Stmt> out;
    const int len = std::uniform_int_distribution<int>(0, depth == 0 ? 8 : 4)(rng);
    for (int i = 0; i < len; ++i) {
        const int kind = std::uniform_int_distribution<int>(0, depth < 3 ? 6 : 5)(rng);
        switch (kind) {
            case 0:
                out.push_back(stmt(Bs{}));
                break;
            case 1:
                out.push_back(stmt(Ps{std::uniform_int_distribution<int>(0, 1)(rng) ? Arm::Upper : Arm::Lower,
                                    random_phase(rng)}));
                break;
            case 2: {
                double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
                if (t == 0.0 || std::uniform_int_distribution<int>(0, 7)(rng) == 0) {
                    t = 1.0;
                }
                out.push_back(stmt(Loss{t}));
                break;
            }
            case 3:
                out.push_back(stmt(D{}));
                break;
            case 4:
                out.push_back(stmt(DPrime{}));
                break;
            case 5:
                out.push_back(stmt(Ccd{}));
                break;
            default:
                out.push_back(stmt(Repeat{std::uniform_int_distribution<std::uint64_t>(1, 1000)(rng),
                                        random_block(rng, depth + 1)}));
                break;
        }
    }
    return out;
}

}  // namespace testgen
