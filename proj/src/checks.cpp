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

#include <cmath>
#include <cstdio>
#include <random>

#include "superlind/experiments.hpp"
#include "superlind/propagation.hpp"

namespace superlind {

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

DensityMatrix random_density(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

std::shared_ptr<const FrameTrajectory> lz_frames(int order) {
    const auto h = lz_hamiltonian({1.0, 1.0});
    const TimeGrid grid = TimeGrid::spanning(-5.0, 5.0, 2000);
    if (order == 0) return std::make_shared<const FrameTrajectory>(instantaneous_frames(h, grid));
    return std::make_shared<const FrameTrajectory>(superadiabatic_frames(h, order, grid));
}

Matrix assembled_rhs(const LindbladGenerator& gen, const Matrix& rho, double t) {
    const LindbladOps ops = gen.lindblad_ops(t);
    const Matrix h = gen.hamiltonian()(t) + ops.lamb_shift;
    Matrix out = -kI * (h * rho - rho * h);
    const auto dissipate = [&](const Matrix& l) {
        const Matrix ll = l.adjoint() * l;
        out += l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll);
    };
    dissipate(ops.dephasing);
    for (const auto& tr : ops.transitions) dissipate(tr.op);
    return out;
}

} // namespace

std::vector<CheckResult> run_invariant_checks() {
    std::vector<CheckResult> out;
    const auto add = [&](std::string name, bool ok, std::string detail) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };

    {
        const LzSetup s = prepare_lz(1.0, 1.0, 0, 25.0);
        PointSpec p;
        p.mode = BasisMode::Closed;
        const double got = run_lz_point(s, p).p_ge;
        const double want = closed_lz_oracle(1.0, 1.0);
        const double rel = std::abs(got - want) / want;
        add("closed Landau-Zener probability", rel < 0.01,
            "P = " + sci(got) + ", exp(-pi/2) = " + sci(want) + ", rel err " + sci(rel));
    }

    const auto sa = lz_frames(3);
    const LindbladGenerator ohmic(lz_hamiltonian({1.0, 1.0}), sa, CouplingOperator::sigma_z(),
                                  ohmic_spectrum(0.05, 5.0, 0.3));
    std::mt19937_64 rng(7);
    {
        double worst_trace = 0.0;
        double worst_herm = 0.0;
        for (int i = 0; i < 100; ++i) {
            const DensityMatrix rho = random_density(rng, 2);
            const double t = -4.0 + 8.0 * static_cast<double>(i) / 99.0;
            const Matrix d = ohmic.me_rhs(rho, t);
            worst_trace = std::max(worst_trace, std::abs(d.trace()));
            worst_herm = std::max(worst_herm, hermiticity_error(d));
        }
        add("generator is trace-annihilating", worst_trace < 1e-12, "max |tr L(rho)| = " + sci(worst_trace));
        add("generator preserves hermiticity", worst_herm < 1e-12, "max ||L(rho) - L(rho)^+|| = " + sci(worst_herm));
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const DensityMatrix rho = random_density(rng, 2);
            const double t = -3.0 + 0.3 * i;
            worst = std::max(worst, (ohmic.me_rhs(rho, t) - assembled_rhs(ohmic, rho, t)).norm());
        }
        add("fast path matches explicit jump operators", worst < 1e-12, "max deviation " + sci(worst));
    }
    {
        std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
        std::vector<double> phases(sa->size() * 2);
        for (auto& x : phases) x = u(rng);
        const auto rephased = std::make_shared<const FrameTrajectory>(sa->with_phases(phases));
        const LindbladGenerator other(ohmic.hamiltonian(), rephased, ohmic.coupling(), ohmic.spectrum());
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const DensityMatrix rho = random_density(rng, 2);
            const double t = -3.0 + 0.3 * i;
            worst = std::max(worst, (ohmic.me_rhs(rho, t) - other.me_rhs(rho, t)).norm());
        }
        add("generator is gauge invariant", worst < 1e-12, "max deviation " + sci(worst));
    }
    {
        const auto sym = ohmic_spectrum(0.05, 5.0, 0.3, CutoffConvention::Symmetric);
        const auto lit = ohmic_spectrum(0.05, 5.0, 0.3, CutoffConvention::Literal);
        double worst_sym = 0.0;
        double worst_lit = 0.0;
        for (double w : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            worst_sym = std::max(worst_sym, std::abs(std::log(sym.rate(w) / sym.rate(-w)) - w / 0.3));
            // the literal cutoff e^{-w/wc} tilts the ratio by e^{-2w/wc}
            worst_lit = std::max(worst_lit, std::abs(std::log(lit.rate(w) / lit.rate(-w)) - w / 0.3 + 2.0 * w / 5.0));
        }
        add("symmetric cutoff satisfies detailed balance", worst_sym < 1e-9, "max log deviation " + sci(worst_sym));
        add("literal cutoff tilts detailed balance by exp(-2w/wc)", worst_lit < 1e-9,
            "max log deviation " + sci(worst_lit));
    }
    {
        const LindbladGenerator deph(lz_hamiltonian({1.0, 1.0}), sa, CouplingOperator::sigma_z(),
                                     dephasing_spectrum(0.1));
        const StateVector psi0 = sa->basis(0).col(0);
        const LindbladResult r = evolve_lindblad(deph, psi0 * psi0.adjoint(), sa->grid().start, sa->grid().stop());
        const bool ok = r.min_eigenvalue > -1e-10 && r.max_trace_error < 1e-10 && r.max_hermiticity_error < 1e-10;
        add("dephasing evolution stays a density matrix", ok,
            "min eigenvalue " + sci(r.min_eigenvalue) + ", trace error " + sci(r.max_trace_error));
    }
    return out;
}

} // namespace superlind
