// Copyright 2026 The superlind Authors
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

#include <random>

#include "superlind/error.hpp"
#include "superlind/linalg.hpp"

#define CHECK_KIND(expr, k)                                      \
    do {                                                         \
        bool thrown_ = false;                                    \
        try {                                                    \
            (void)(expr);                                        \
        } catch (const superlind::Error& e_) {                   \
            thrown_ = true;                                      \
            CHECK_MESSAGE(e_.kind() == (k), e_.what());          \
        }                                                        \
        CHECK_MESSAGE(thrown_, "expected superlind::Error");     \
    } while (0)

namespace testing {

inline superlind::DensityMatrix random_density(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    superlind::Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = superlind::Complex(g(rng), g(rng));
    }
    superlind::Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

} // namespace testing
