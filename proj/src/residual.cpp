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

#include <algorithm>
#include <cmath>

#include "superlind/error.hpp"
#include "superlind/frames.hpp"
#include "superlind/propagation.hpp"

namespace superlind {

double residual_oscillation(const TimeDependentHamiltonian& h, const FrameTrajectory& traj,
                            const OscillationWindow& window) {
    const TimeGrid& grid = traj.grid();
    const double begin = window.begin.value_or(grid.start);
    const double end = window.end.value_or(grid.stop());
    double worst = 0.0;
    const auto leaked = [&](double t, const StateVector& psi) {
        if (t < begin - 1e-9 * grid.step || t > end + 1e-9 * grid.step) return;
        const auto u = traj.basis(grid.nearest(t));
        const Vector c = u.adjoint() * psi;
        // Sum the excited weights directly; 1 - |c0|^2 loses everything below 1e-16.
        const double p = c.tail(c.size() - 1).squaredNorm() / c.squaredNorm();
        worst = std::max(worst, p);
    };
    IntegratorConfig cfg;
    cfg.method = IntegratorConfig::Method::Rk4;
    cfg.fixed_step = 2.0 * grid.step;
    const StateVector psi0 = traj.basis(0).col(0);
    evolve_unitary(h, psi0, grid.start, grid.stop(), cfg, leaked);
    return std::sqrt(worst);
}

std::vector<double> residual_oscillation_scan(const TimeDependentHamiltonian& h, const TimeGrid& grid,
                                              int max_order, const OscillationWindow& window,
                                              const FrameOptions& options) {
    if (max_order < 0) {
        throw Error(ErrorKind::ParameterDomain, "max_order must be >= 0");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_order) + 1);
    for (int j = 0; j <= max_order; ++j) {
        out.push_back(residual_oscillation(h, superadiabatic_frames(h, j, grid, options), window));
    }
    return out;
}

} // namespace superlind
