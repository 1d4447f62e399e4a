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

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "superlind/generator.hpp"
#include "superlind/linalg.hpp"
#include "superlind/model.hpp"

namespace superlind {

struct IntegratorConfig {
    enum class Method {
        // Adaptive for closed evolution; grid-aligned RK4 (step 2h, every
        // stage on a frame node) for generator-driven evolution.
        Auto,
        Rk4,
        Adaptive,  // Dormand-Prince 5(4)
    };

    Method method{Method::Auto};
    double rel_tol{1e-8};
    double abs_tol{1e-10};
    // Upper bound on the adaptive step; generator-driven runs also cap it at
    // half the frame grid step.
    double max_step{0.0};
    // RK4 step; 0 means 2h of the frame grid (or max_step for closed runs).
    double fixed_step{0.0};

    void validate() const;
};

struct TrajectoryConfig {
    std::size_t count{1};
    std::uint64_t seed{0};
    bool record_jumps{false};
    unsigned threads{0};

    void validate() const;
};

using StateObserver = std::function<void(double, const StateVector&)>;
using DensityObserver = std::function<void(double, const DensityMatrix&)>;

// Integrates i d/dt psi = H(t) psi with renormalization after each step.
StateVector evolve_unitary(const TimeDependentHamiltonian& h, const StateVector& psi0, double t0, double t1,
                           const IntegratorConfig& cfg = {}, const StateObserver& observer = {});

struct LindbladResult {
    DensityMatrix rho;
    double max_trace_error{0.0};
    double max_hermiticity_error{0.0};
    double min_eigenvalue{1.0};
    std::size_t steps{0};
};

// Integrates the master equation. After each accepted step rho is
// re-Hermitized and its trace renormalized; positivity is monitored and a
// smallest eigenvalue below -1e-5 raises a Positivity error.
LindbladResult evolve_lindblad(const LindbladGenerator& gen, const DensityMatrix& rho0, double t0, double t1,
                               const IntegratorConfig& cfg = {}, const DensityObserver& observer = {});

struct JumpRecord {
    double time{0.0};
    bool dephasing{false};
    Eigen::Index to{0};
    Eigen::Index from{0};
};

struct TrajectoryResult {
    DensityMatrix rho;                           // (1/M) sum |psi_m><psi_m|
    std::vector<std::vector<JumpRecord>> jumps;  // per trajectory, if recorded
    std::vector<double> final_populations;       // per trajectory <e|psi_m> weight of state `probe`
};

// Quantum-jump unraveling of the generator. Jump times are located by
// bisection on the decaying norm to 1e-3 of the step. Trajectory m draws from
// a stream seeded by (seed, m), so results do not depend on scheduling.
// `probe`, when given, is a vector whose population is recorded per
// trajectory in final_populations.
TrajectoryResult evolve_trajectories(const LindbladGenerator& gen, const StateVector& psi0, double t0, double t1,
                                     const TrajectoryConfig& tcfg, const IntegratorConfig& cfg = {},
                                     const StateVector* probe = nullptr);

// (x, y, z) = (2 Re rho01, 2 Im rho10, rho00 - rho11). N = 2 only.
std::array<double, 3> bloch_vector(const DensityMatrix& rho);

// Throws StateIntegrity unless rho is Hermitian (1e-10), unit trace (1e-8)
// and has smallest eigenvalue >= -1e-7.
void validate_density_matrix(const DensityMatrix& rho);

} // namespace superlind
