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

#include "superlind/generator.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "superlind/error.hpp"

namespace superlind {

LindbladGenerator::LindbladGenerator(TimeDependentHamiltonian h, std::shared_ptr<const FrameTrajectory> frames,
                                     CouplingOperator coupling, BathSpectrum spectrum, bool lamb_shift)
    : h_(std::move(h)),
      frames_(std::move(frames)),
      coupling_(std::move(coupling)),
      spectrum_(std::move(spectrum)),
      lamb_shift_(lamb_shift) {
    if (!frames_) {
        throw Error(ErrorKind::ParameterDomain, "generator needs a frame trajectory");
    }
    if (frames_->dimension() != h_.dimension() || coupling_.dimension() != h_.dimension()) {
        throw Error(ErrorKind::Dimension, "generator: Hamiltonian, frames and coupling dimensions differ");
    }
    precompute();
}

void LindbladGenerator::precompute() {
    const Eigen::Index n = dimension();
    const auto ns = static_cast<std::size_t>(n);
    const std::size_t count = frames_->size();
    dephasing_.assign(count * ns, 0.0);
    rates_.assign(count * ns * ns, 0.0);
    outflow_.assign(count * ns, 0.0);
    lamb_.assign(count * ns, 0.0);
    const double sqrt_g0 = std::sqrt(spectrum_.rate(0.0));
    const Matrix& a = coupling_.matrix();
    for (std::size_t k = 0; k < count; ++k) {
        const auto u = frames_->basis(k);
        const auto e = frames_->energies(k);
        const Matrix af = u.adjoint() * a * u;
        for (Eigen::Index i = 0; i < n; ++i) {
            dephasing_[k * ns + static_cast<std::size_t>(i)] = sqrt_g0 * af(i, i).real();
        }
        for (Eigen::Index to = 0; to < n; ++to) {
            for (Eigen::Index from = 0; from < n; ++from) {
                const double w = e(from) - e(to);
                const double weight = std::norm(af(to, from));
                if (lamb_shift_) {
                    // sum_{ab} S(w_ab) |A_ab|^2 |phi_b><phi_b|
                    const double s = spectrum_.shift(w) * weight;
                    lamb_[k * ns + static_cast<std::size_t>(from)] += s;
                    if (s != 0.0) any_lamb_ = true;
                }
                if (to == from) continue;
                const double r = spectrum_.rate(w) * weight;
                rates_[(k * ns + static_cast<std::size_t>(to)) * ns + static_cast<std::size_t>(from)] = r;
                outflow_[k * ns + static_cast<std::size_t>(from)] += r;
            }
        }
    }
}

LindbladGenerator::NodeData LindbladGenerator::node(std::size_t k) const {
    const auto ns = static_cast<std::size_t>(dimension());
    return NodeData{frames_->basis(k), dephasing_.data() + k * ns, rates_.data() + k * ns * ns,
                    outflow_.data() + k * ns, lamb_.data() + k * ns};
}

LindbladOps LindbladGenerator::lindblad_ops(double t) const {
    const std::size_t k = node_index(t);
    const Eigen::Index n = dimension();
    const auto u = frames_->basis(k);
    const auto e = frames_->energies(k);
    const Matrix af = u.adjoint() * coupling_.matrix() * u;
    const double sqrt_g0 = std::sqrt(spectrum_.rate(0.0));

    LindbladOps ops;
    ops.time = t;
    ops.dephasing = Matrix::Zero(n, n);
    ops.lamb_shift = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        ops.dephasing += sqrt_g0 * af(a, a) * u.col(a) * u.col(a).adjoint();
    }
    for (Eigen::Index to = 0; to < n; ++to) {
        for (Eigen::Index from = 0; from < n; ++from) {
            const double w = e(from) - e(to);
            if (lamb_shift_) {
                ops.lamb_shift += spectrum_.shift(w) * std::norm(af(to, from)) * u.col(from) * u.col(from).adjoint();
            }
            if (to == from) continue;
            Transition tr;
            tr.to = to;
            tr.from = from;
            tr.frequency = w;
            const double g = spectrum_.rate(w);
            tr.rate = g * std::norm(af(to, from));
            tr.op = std::sqrt(g) * af(to, from) * u.col(to) * u.col(from).adjoint();
            ops.transitions.push_back(std::move(tr));
        }
    }
    return ops;
}

void LindbladGenerator::rhs_into(const Matrix& rho, const Matrix& h, std::size_t k, Matrix& out,
                                 Matrix& work) const {
    const Eigen::Index n = dimension();
    const NodeData d = node(k);
    // Dissipator in the frame basis, then rotated back.
    work.noalias() = d.basis.adjoint() * rho * d.basis;
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const double lr = d.dephasing[r];
            const double lc = d.dephasing[c];
            const double decay = 0.5 * (lr - lc) * (lr - lc) + 0.5 * (d.outflow[r] + d.outflow[c]);
            out(r, c) = -decay * work(r, c);
        }
    }
    for (Eigen::Index to = 0; to < n; ++to) {
        double gain = 0.0;
        for (Eigen::Index from = 0; from < n; ++from) {
            gain += d.rates[to * n + from] * work(from, from).real();
        }
        out(to, to) += gain;
    }
    if (any_lamb_) {
        // -i[H_LS, rho] is diagonal-weighted in the frame basis.
        for (Eigen::Index c = 0; c < n; ++c) {
            for (Eigen::Index r = 0; r < n; ++r) {
                out(r, c) += -kI * (d.lamb[r] - d.lamb[c]) * work(r, c);
            }
        }
    }
    work.noalias() = d.basis * out;
    out.noalias() = work * d.basis.adjoint();
    work.noalias() = h * rho;
    out += -kI * work;
    out += kI * work.adjoint();
}

Matrix LindbladGenerator::me_rhs(const Matrix& rho, double t) const {
    const Eigen::Index n = dimension();
    if (rho.rows() != n || rho.cols() != n) {
        throw Error(ErrorKind::Dimension, "me_rhs: density matrix has the wrong shape");
    }
    const double herm = hermiticity_error(rho);
    if (herm > 1e-8) {
        std::ostringstream os;
        os << "me_rhs: density matrix is not Hermitian (error " << herm << ")";
        throw Error(ErrorKind::StateIntegrity, os.str());
    }
    Matrix out(n, n);
    Matrix work(n, n);
    rhs_into(rho, h_(t), node_index(t), out, work);
    return out;
}

Matrix LindbladGenerator::effective_correction(std::size_t k) const {
    const Eigen::Index n = dimension();
    const NodeData d = node(k);
    Vector diag(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        diag(a) = Complex(d.lamb[a], -0.5 * (d.dephasing[a] * d.dephasing[a] + d.outflow[a]));
    }
    return d.basis * diag.asDiagonal() * d.basis.adjoint();
}

LindbladGenerator LindbladGenerator::instantaneous_mode() const {
    std::shared_ptr<const FrameTrajectory> f = frames_;
    if (f->order() != 0) {
        FrameOptions opts;
        opts.derivative_stride = f->derivative_stride();
        f = std::make_shared<const FrameTrajectory>(instantaneous_frames(h_, f->grid(), opts));
    }
    return LindbladGenerator(h_, std::move(f), coupling_, spectrum_, lamb_shift_);
}

} // namespace superlind
