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

#include <cstddef>
#include <optional>
#include <vector>

#include "superlind/linalg.hpp"
#include "superlind/model.hpp"

namespace superlind {

inline constexpr int kMaxSuperadiabaticOrder = 12;

// Uniform grid t_k = start + k * step, k = 0 .. count-1.
struct TimeGrid {
    double start{0.0};
    double step{0.0};
    std::size_t count{0};

    static TimeGrid spanning(double t0, double t1, std::size_t intervals);

    double at(std::size_t k) const noexcept { return start + static_cast<double>(k) * step; }
    double stop() const noexcept { return at(count - 1); }
    bool contains(double t) const noexcept;
    // Nearest node; throws OutOfGrid when t lies more than step/2 outside.
    std::size_t nearest(double t) const;
    void validate() const;
};

// Picks a step so that neighbouring Hamiltonians differ by at most
// 0.01 * min gap, a step times the spectral spread stays below 0.04, and
// adjacent eigenvectors overlap by more than 0.999. The interval count is
// kept even so fixed-step RK4 with step 2h lands every stage on a node.
TimeGrid auto_grid(const TimeDependentHamiltonian& h, double t0, double t1);

struct FrameOptions {
    // Node stride for the five-point derivative stencil; 0 picks one from the
    // time scale min gap / max |dH/dt|.
    std::size_t derivative_stride{0};
    // Degeneracy threshold relative to the largest spectral spread on the grid.
    double relative_gap_tolerance{1e-9};
};

// A gauge-fixed basis at one time. Columns of `basis` are |phi_alpha>,
// ordered by ascending quasi-energy E_alpha = <phi_alpha|H|phi_alpha>.
struct Frame {
    double time{0.0};
    int order{0};
    Matrix basis;
    RealVector energies;
};

// Makes <prev_alpha|cur_alpha> real positive column by column. Throws
// GridTooCoarse when any overlap magnitude is below 0.5.
Frame smooth_gauge(const Frame& prev, const Frame& cur);

// Gauge-fixed frames on a uniform grid, stored contiguously.
class FrameTrajectory {
public:
    FrameTrajectory(TimeDependentHamiltonian h, TimeGrid grid, int order, std::size_t derivative_stride,
                    std::vector<Complex> bases, std::vector<double> energies);

    const TimeGrid& grid() const noexcept { return grid_; }
    int order() const noexcept { return order_; }
    Eigen::Index dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return grid_.count; }
    std::size_t derivative_stride() const noexcept { return stride_; }
    const TimeDependentHamiltonian& hamiltonian() const noexcept { return h_; }

    Eigen::Map<const Matrix> basis(std::size_t k) const {
        return Eigen::Map<const Matrix>(bases_.data() + k * dim_ * dim_, dim_, dim_);
    }
    Eigen::Map<const RealVector> energies(std::size_t k) const {
        return Eigen::Map<const RealVector>(energies_.data() + k * dim_, dim_);
    }
    Frame frame(std::size_t k) const;

    const std::vector<Complex>& raw_bases() const noexcept { return bases_; }
    const std::vector<double>& raw_energies() const noexcept { return energies_; }

    // Same trajectory with each basis column multiplied by the given phases
    // (size() * dimension() entries, node-major). Used for gauge tests.
    FrameTrajectory with_phases(const std::vector<double>& phases) const;

private:
    TimeDependentHamiltonian h_;
    TimeGrid grid_;
    int order_;
    Eigen::Index dim_;
    std::size_t stride_;
    std::vector<Complex> bases_;
    std::vector<double> energies_;
};

// Sorted eigenframes of H(t_k) with the gauge swept forward from a k = 0
// convention of "largest-magnitude component real positive".
FrameTrajectory instantaneous_frames(const TimeDependentHamiltonian& h, const TimeGrid& grid,
                                     const FrameOptions& options = {});

// j-th order super-adiabatic frames. Level l+1 diagonalizes the level-l
// moving-frame Hamiltonian diag(D_l) - i W_l^dagger dW_l/dt (diagonal of the
// coupling removed, i.e. parallel transport); the accumulated rotation is
// mapped back to the lab frame and the gauge is swept again.
FrameTrajectory superadiabatic_frames(const TimeDependentHamiltonian& h, int order, const TimeGrid& grid,
                                      const FrameOptions& options = {});

// K_{ab} = <phi_a|d/dt phi_b> at node k (five-point stencil, one-sided at the
// ends).
Matrix frame_couplings(const FrameTrajectory& traj, std::size_t k);

// max_{a != b} |K_ab| / |E_a - E_b| at node k. Meaningful on order-0 frames.
double adiabatic_parameter(const FrameTrajectory& traj, std::size_t k);

struct AdiabaticReport {
    std::vector<double> samples;
    double global{0.0};
    std::size_t argmax{0};
    // round(1 / global) clamped to [0, max_order]; 0 when global is 0.
    int recommended_order{0};
};

AdiabaticReport adiabatic_report(const FrameTrajectory& traj, int max_order = kMaxSuperadiabaticOrder);

struct OscillationWindow {
    std::optional<double> begin;
    std::optional<double> end;
};

// Evolves the trajectory's ground state at the first node under the exact
// closed dynamics (RK4, step 2h) and returns sqrt(max_t leaked population),
// where the leaked population is the weight outside the trajectory's own
// ground state. Samples outside `window` are ignored.
double residual_oscillation(const TimeDependentHamiltonian& h, const FrameTrajectory& traj,
                            const OscillationWindow& window = {});

// residual_oscillation for orders 0..max_order on one grid.
std::vector<double> residual_oscillation_scan(const TimeDependentHamiltonian& h, const TimeGrid& grid,
                                              int max_order, const OscillationWindow& window = {},
                                              const FrameOptions& options = {});

} // namespace superlind
