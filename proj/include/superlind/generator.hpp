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

#include <memory>
#include <vector>

#include "superlind/frames.hpp"
#include "superlind/linalg.hpp"
#include "superlind/model.hpp"

namespace superlind {

// Rank-one Lindblad operator sqrt(gamma(w)) <phi_to|A|phi_from> |phi_to><phi_from|.
struct Transition {
    Eigen::Index to{0};
    Eigen::Index from{0};
    double frequency{0.0};  // E_from - E_to
    double rate{0.0};       // gamma(frequency) |<phi_to|A|phi_from>|^2
    Matrix op;
};

struct LindbladOps {
    double time{0.0};
    Matrix dephasing;                    // L_0, diagonal in the frame basis
    std::vector<Transition> transitions; // every ordered pair to != from
    Matrix lamb_shift;                   // H_LS, zero unless enabled
};

// Time-dependent secular Lindblad generator in a gauge-fixed frame
// trajectory. Between grid nodes the frame snaps to the nearest node.
class LindbladGenerator {
public:
    LindbladGenerator(TimeDependentHamiltonian h, std::shared_ptr<const FrameTrajectory> frames,
                      CouplingOperator coupling, BathSpectrum spectrum, bool lamb_shift = false);

    const TimeDependentHamiltonian& hamiltonian() const noexcept { return h_; }
    const FrameTrajectory& frames() const noexcept { return *frames_; }
    std::shared_ptr<const FrameTrajectory> frames_ptr() const noexcept { return frames_; }
    const CouplingOperator& coupling() const noexcept { return coupling_; }
    const BathSpectrum& spectrum() const noexcept { return spectrum_; }
    bool lamb_shift_enabled() const noexcept { return lamb_shift_; }
    Eigen::Index dimension() const noexcept { return h_.dimension(); }

    LindbladOps lindblad_ops(double t) const;

    // Full right-hand side -i[H + H_LS, rho] + sum_L (L rho L^+ - {L^+ L, rho}/2).
    // Throws StateIntegrity for inputs that are non-Hermitian beyond 1e-8.
    Matrix me_rhs(const Matrix& rho, double t) const;

    // Same generator with order-0 (instantaneous eigenstate) frames.
    LindbladGenerator instantaneous_mode() const;

    // Precomputed frame-basis data at one grid node.
    struct NodeData {
        Eigen::Map<const Matrix> basis;
        const double* dephasing;   // sqrt(gamma(0)) <phi_a|A|phi_a>, length N
        const double* rates;       // rates[to * N + from], zero on the diagonal
        const double* outflow;     // sum_to rates[to, from], length N
        const double* lamb;        // H_LS eigenvalues in the frame basis, length N
    };
    NodeData node(std::size_t k) const;
    std::size_t node_index(double t) const { return frames_->grid().nearest(t); }

    // Unchecked right-hand side used by the integrators; `h` is H(t) and
    // `work` is scratch of the same shape as rho.
    void rhs_into(const Matrix& rho, const Matrix& h, std::size_t node, Matrix& out, Matrix& work) const;

    // Non-Hermitian drift -(i/2) sum L^+ L plus H_LS, in the lab basis.
    Matrix effective_correction(std::size_t node) const;

private:
    void precompute();

    TimeDependentHamiltonian h_;
    std::shared_ptr<const FrameTrajectory> frames_;
    CouplingOperator coupling_;
    BathSpectrum spectrum_;
    bool lamb_shift_;

    std::vector<double> dephasing_;
    std::vector<double> rates_;
    std::vector<double> outflow_;
    std::vector<double> lamb_;
    bool any_lamb_{false};
};

} // namespace superlind
