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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "superlind/propagation.hpp"
#include "support.hpp"

using namespace superlind;

namespace {

// H = (w/2) sigma_z: frame 0 is |1> (ground), frame 1 is |0>.
struct StaticQubit {
    TimeDependentHamiltonian h;
    std::shared_ptr<const FrameTrajectory> frames;

    StaticQubit(double w, double t1, std::size_t intervals)
        : h(TimeDependentHamiltonian::constant(0.5 * w * sigma_z())),
          frames(std::make_shared<const FrameTrajectory>(
              instantaneous_frames(h, TimeGrid::spanning(0.0, t1, intervals)))) {}
};

StateVector ket(Complex a, Complex b) {
    StateVector v(2);
    v << a, b;
    return v.normalized();
}

} // namespace

TEST_CASE("rabi half period") {
    const double gap = 1.3;
    const auto h = TimeDependentHamiltonian::constant(0.5 * gap * sigma_x());
    const StateVector up = ket(1.0, 0.0);
    const double t = M_PI / gap;
    const StateVector a = evolve_unitary(h, up, 0.0, t);
    CHECK(std::abs(a(0)) < 1e-7);
    CHECK(std::abs(a(1) - Complex(0.0, -1.0)) < 1e-7);
    IntegratorConfig rk;
    rk.method = IntegratorConfig::Method::Rk4;
    rk.fixed_step = t / 2000.0;
    const StateVector b = evolve_unitary(h, up, 0.0, t, rk);
    CHECK(std::abs(b(1) - Complex(0.0, -1.0)) < 1e-10);
}

TEST_CASE("unitary observer sees every accepted step") {
    const auto h = TimeDependentHamiltonian::constant(sigma_x());
    IntegratorConfig rk;
    rk.method = IntegratorConfig::Method::Rk4;
    rk.fixed_step = 0.1;
    int calls = 0;
    double last = 0.0;
    evolve_unitary(h, ket(1.0, 0.0), 0.0, 1.0, rk, [&](double t, const StateVector& psi) {
        ++calls;
        last = t;
        CHECK(psi.norm() == doctest::Approx(1.0));
    });
    CHECK(calls >= 10);
    CHECK(last == doctest::Approx(1.0));
}

TEST_CASE("closed landau-zener sweep matches the asymptotic formula") {
    for (double inv_v : {2.0, 6.0}) {
        const double v = 1.0 / inv_v;
        const auto h = lz_hamiltonian({v, 1.0});
        const double tf = 25.0 / v;
        const auto f0 = instantaneous_frames(h, auto_grid(h, -tf, tf));
        const StateVector psi = evolve_unitary(h, f0.basis(0).col(0), -tf, tf);
        const double p = std::norm(f0.basis(f0.size() - 1).col(1).dot(psi));
        const double want = std::exp(-M_PI * inv_v / 2.0);
        CHECK(p == doctest::Approx(want).epsilon(0.01));
    }
}

TEST_CASE("pure dephasing damps coherences at twice gamma(0)") {
    const StaticQubit q(1.0, 10.0, 1000);
    const LindbladGenerator gen(q.h, q.frames, CouplingOperator::sigma_z(), dephasing_spectrum(0.01));
    const StateVector plus = ket(1.0, 1.0);
    const LindbladResult r = evolve_lindblad(gen, plus * plus.adjoint(), 0.0, 10.0);
    CHECK(std::abs(r.rho(0, 1)) == doctest::Approx(0.5 * 0.818730753078).epsilon(1e-8));
    CHECK(r.rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.max_trace_error < 1e-12);
}

TEST_CASE("zero temperature ohmic bath relaxes at gamma(w)") {
    const double w = 1.0;
    const StaticQubit q(w, 10.0, 1000);
    const LindbladGenerator gen(q.h, q.frames, CouplingOperator(sigma_x()), ohmic_spectrum(0.1, 5.0, 0.0));
    const StateVector up = ket(1.0, 0.0);
    const LindbladResult r = evolve_lindblad(gen, up * up.adjoint(), 0.0, 10.0);
    const double rate = 0.1 * w * std::exp(-w / 5.0);
    CHECK(r.rho(0, 0).real() == doctest::Approx(std::exp(-rate * 10.0)).epsilon(1e-8));
}

TEST_CASE("thermal fixed point") {
    const double w = 1.0;
    const double T = 0.5;
    const StaticQubit q(w, 300.0, 15000);
    for (auto conv : {CutoffConvention::Symmetric, CutoffConvention::Literal}) {
        const LindbladGenerator gen(q.h, q.frames, CouplingOperator(sigma_x()), ohmic_spectrum(0.1, 5.0, T, conv));
        const StateVector up = ket(1.0, 0.0);
        const LindbladResult r = evolve_lindblad(gen, up * up.adjoint(), 0.0, 300.0);
        const double ratio = r.rho(0, 0).real() / r.rho(1, 1).real();
        const double tilt = conv == CutoffConvention::Symmetric ? 0.0 : 2.0 * w / 5.0;
        CHECK(ratio == doctest::Approx(std::exp(-w / T + tilt)).epsilon(1e-6));
    }
}

TEST_CASE("adaptive and grid rk4 agree on a driven problem") {
    const auto h = lz_hamiltonian({0.5, 1.0});
    const auto f = std::make_shared<const FrameTrajectory>(
        superadiabatic_frames(h, 2, TimeGrid::spanning(-20.0, 20.0, 16000)));
    const LindbladGenerator gen(h, f, CouplingOperator::sigma_z(), ohmic_spectrum(0.05, 5.0, 0.5));
    const StateVector g = f->basis(0).col(0);
    IntegratorConfig ad;
    ad.method = IntegratorConfig::Method::Adaptive;
    const LindbladResult a = evolve_lindblad(gen, g * g.adjoint(), -20.0, 20.0);
    const LindbladResult b = evolve_lindblad(gen, g * g.adjoint(), -20.0, 20.0, ad);
    CHECK((a.rho - b.rho).norm() < 1e-6);
    CHECK(a.min_eigenvalue > -1e-12);
    CHECK(b.max_trace_error < 1e-8);
}

TEST_CASE("integrity monitors") {
    const StaticQubit q(1.0, 1.0, 100);
    const LindbladGenerator gen(q.h, q.frames, CouplingOperator::sigma_z(), dephasing_spectrum(0.1));
    CHECK_KIND(evolve_lindblad(gen, 2.0 * Matrix::Identity(2, 2), 0.0, 1.0), ErrorKind::StateIntegrity);
    Matrix neg(2, 2);
    neg << 1.2, 0.0, 0.0, -0.2;
    CHECK_KIND(evolve_lindblad(gen, neg, 0.0, 1.0), ErrorKind::StateIntegrity);
    CHECK_KIND(evolve_lindblad(gen, Matrix::Identity(2, 2) / 2.0, 0.0, 5.0), ErrorKind::OutOfGrid);
    CHECK_KIND(evolve_lindblad(gen, Matrix::Identity(3, 3) / 3.0, 0.0, 1.0), ErrorKind::Dimension);
    CHECK_KIND(evolve_unitary(q.h, ket(1.0, 0.0), 1.0, 0.0), ErrorKind::ParameterDomain);
    CHECK_KIND(evolve_unitary(q.h, StateVector::Ones(2), 0.0, 1.0), ErrorKind::StateIntegrity);
    IntegratorConfig rk;
    rk.method = IntegratorConfig::Method::Rk4;
    CHECK_KIND(evolve_unitary(q.h, ket(1.0, 0.0), 0.0, 1.0, rk), ErrorKind::ParameterDomain);
    const auto stiff = TimeDependentHamiltonian::constant(1e15 * sigma_z());
    CHECK_KIND(evolve_unitary(stiff, ket(1.0, 1.0), 0.0, 1.0), ErrorKind::Stiffness);
}

TEST_CASE("bloch vector convention") {
    const auto b = [](const StateVector& s) { return bloch_vector(s * s.adjoint()); };
    CHECK(b(ket(1.0, 0.0))[2] == doctest::Approx(1.0));
    CHECK(b(ket(1.0, 1.0))[0] == doctest::Approx(1.0));
    CHECK(b(ket(1.0, Complex(0.0, 1.0)))[1] == doctest::Approx(1.0));
    CHECK_KIND(bloch_vector(Matrix::Identity(3, 3)), ErrorKind::Dimension);
}

TEST_CASE("jump unraveling reproduces amplitude damping") {
    const double w = 1.0;
    const StaticQubit q(w, 10.0, 1000);
    const LindbladGenerator gen(q.h, q.frames, CouplingOperator(sigma_x()), ohmic_spectrum(0.1, 5.0, 0.0));
    TrajectoryConfig tc;
    tc.count = 2000;
    tc.seed = 42;
    tc.record_jumps = true;
    const StateVector up = ket(1.0, 0.0);
    const TrajectoryResult r = evolve_trajectories(gen, up, 0.0, 10.0, tc, {}, &up);
    const double p = std::exp(-0.1 * w * std::exp(-w / 5.0) * 10.0);
    const double sigma = std::sqrt(p * (1.0 - p) / 2000.0);
    CHECK(std::abs(r.rho(0, 0).real() - p) < 4.0 * sigma);
    REQUIRE(r.jumps.size() == 2000);
    REQUIRE(r.final_populations.size() == 2000);
    for (std::size_t m = 0; m < 2000; ++m) {
        CHECK(r.jumps[m].size() <= 1);
        for (const auto& j : r.jumps[m]) {
            CHECK_FALSE(j.dephasing);
            CHECK(j.to == 0);
            CHECK(j.from == 1);
        }
        CHECK(r.final_populations[m] == doctest::Approx(r.jumps[m].empty() ? 1.0 : 0.0).epsilon(1e-9));
    }
}

TEST_CASE("jump unraveling reproduces pure dephasing") {
    const StaticQubit q(1.0, 10.0, 1000);
    const LindbladGenerator gen(q.h, q.frames, CouplingOperator::sigma_z(), dephasing_spectrum(0.05));
    TrajectoryConfig tc;
    tc.count = 3000;
    tc.seed = 9;
    const TrajectoryResult r = evolve_trajectories(gen, ket(1.0, 1.0), 0.0, 10.0, tc);
    // each trajectory keeps |rho01| = 1/2; the average decays as exp(-2 gamma t)
    CHECK(std::abs(r.rho(0, 1)) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(0.05));
    CHECK(r.rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("trajectories are reproducible and independent of thread count") {
    const auto h = lz_hamiltonian({0.5, 1.0});
    const auto f = std::make_shared<const FrameTrajectory>(
        superadiabatic_frames(h, 2, TimeGrid::spanning(-10.0, 10.0, 4000)));
    const LindbladGenerator gen(h, f, CouplingOperator::sigma_z(), ohmic_spectrum(0.1, 5.0, 0.5));
    TrajectoryConfig tc;
    tc.count = 64;
    tc.seed = 7;
    tc.threads = 1;
    const StateVector g = f->basis(0).col(0);
    const TrajectoryResult a = evolve_trajectories(gen, g, -10.0, 10.0, tc);
    tc.threads = 3;
    const TrajectoryResult b = evolve_trajectories(gen, g, -10.0, 10.0, tc);
    CHECK(a.rho == b.rho);
    tc.seed = 8;
    const TrajectoryResult c = evolve_trajectories(gen, g, -10.0, 10.0, tc);
    CHECK(a.rho != c.rho);
    tc.count = 0;
    CHECK_KIND(evolve_trajectories(gen, g, -10.0, 10.0, tc), ErrorKind::ParameterDomain);
}
