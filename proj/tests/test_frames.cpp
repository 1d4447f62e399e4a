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

#include "superlind/frames.hpp"
#include "superlind/propagation.hpp"
#include "support.hpp"

using namespace superlind;

namespace {

// Mixing-angle rate of the LZ eigenbasis, |<n_0|d/dt n_1>| = v gap / (2 (v^2 t^2 + gap^2)).
double lz_coupling(double v, double gap, double t) {
    return v * gap / (2.0 * (v * v * t * t + gap * gap));
}

double bloch_angle(const Vector& a, const Vector& b) {
    const auto x = bloch_vector(a * a.adjoint());
    const auto y = bloch_vector(b * b.adjoint());
    const double c = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double leak(const Vector& a, const Vector& b) { return 1.0 - std::norm(a.dot(b)); }

} // namespace

TEST_CASE("time grid basics") {
    const TimeGrid g = TimeGrid::spanning(-1.0, 1.0, 8);
    CHECK(g.count == 9);
    CHECK(g.step == doctest::Approx(0.25));
    CHECK(g.stop() == doctest::Approx(1.0));
    CHECK(g.nearest(0.13) == 5);
    CHECK(g.nearest(-1.1) == 0);
    CHECK_KIND(g.nearest(1.2), ErrorKind::OutOfGrid);
    CHECK_KIND(TimeGrid::spanning(1.0, 0.0, 4), ErrorKind::ParameterDomain);
    CHECK_KIND(TimeGrid::spanning(0.0, 1.0, 5).validate(), ErrorKind::ParameterDomain);
}

TEST_CASE("auto grid respects the step rules") {
    const double v = 0.25;
    const auto h = lz_hamiltonian({v, 1.0});
    const TimeGrid g = auto_grid(h, -100.0, 100.0);
    CHECK((g.count - 1) % 2 == 0);
    // |dH/dt| = v/2 per entry, spread at the edges is sqrt(v^2 t^2 + 1)
    CHECK(g.step * std::sqrt(v * v * 1e4 + 1.0) <= 0.04 + 1e-12);
    CHECK(g.step * (v / 2.0) <= 0.01 * 1.0 + 1e-12);
}

TEST_CASE("instantaneous frames of the LZ problem") {
    const double v = 0.5;
    const auto h = lz_hamiltonian({v, 1.0});
    const TimeGrid g = TimeGrid::spanning(-10.0, 10.0, 4000);
    const FrameTrajectory f = instantaneous_frames(h, g);
    CHECK(f.order() == 0);
    CHECK(f.size() == g.count);
    double worst_unitary = 0.0;
    double worst_energy = 0.0;
    double worst_coupling = 0.0;
    for (std::size_t k = 0; k < f.size(); k += 37) {
        const double t = g.at(k);
        const Matrix u = f.basis(k);
        worst_unitary = std::max(worst_unitary, (u.adjoint() * u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff());
        const double half = 0.5 * std::sqrt(v * v * t * t + 1.0);
        worst_energy = std::max(worst_energy, std::abs(f.energies(k)(0) + half) + std::abs(f.energies(k)(1) - half));
        if (k >= 8 && k + 8 < f.size()) {
            worst_coupling = std::max(worst_coupling, std::abs(std::abs(frame_couplings(f, k)(0, 1)) -
                                                               lz_coupling(v, 1.0, t)));
        }
    }
    CHECK(worst_unitary < 1e-10);
    CHECK(worst_energy < 1e-12);
    CHECK(worst_coupling < 1e-6);
}

TEST_CASE("adjacent frames are phase aligned") {
    const auto h = lz_hamiltonian({1.0, 1.0});
    const FrameTrajectory f = superadiabatic_frames(h, 2, TimeGrid::spanning(-8.0, 8.0, 3200));
    for (std::size_t k = 1; k < f.size(); ++k) {
        for (Eigen::Index a = 0; a < 2; ++a) {
            const Complex o = f.basis(k - 1).col(a).dot(f.basis(k).col(a));
            CHECK(o.real() > 0.99);
            CHECK(std::abs(o.imag()) < 1e-2 * o.real());
        }
    }
}

TEST_CASE("adiabatic parameter of the LZ problem") {
    for (double v : {0.1, 0.25, 0.5}) {
        const auto h = lz_hamiltonian({v, 1.0});
        const FrameTrajectory f = instantaneous_frames(h, TimeGrid::spanning(-5.0, 5.0, 2000));
        const AdiabaticReport r = adiabatic_report(f);
        CHECK(r.global == doctest::Approx(v / 2.0).epsilon(1e-6));
        CHECK(f.grid().at(r.argmax) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(r.recommended_order == std::min(kMaxSuperadiabaticOrder, static_cast<int>(std::round(2.0 / v))));
    }
}

TEST_CASE("order zero equals the instantaneous frames") {
    const auto h = lz_hamiltonian({0.3, 1.0});
    const TimeGrid g = TimeGrid::spanning(-4.0, 4.0, 800);
    const FrameTrajectory a = instantaneous_frames(h, g);
    const FrameTrajectory b = superadiabatic_frames(h, 0, g);
    CHECK(a.raw_bases() == b.raw_bases());
    CHECK(a.raw_energies() == b.raw_energies());
}

TEST_CASE("first order frame tilt") {
    // In the adiabatic frame the first-order Hamiltonian is (g sigma_z + theta_dot sigma_y) / 2,
    // so its ground state is tilted by atan(theta_dot / g) on the Bloch sphere.
    const double v = 0.2;
    const auto h = lz_hamiltonian({v, 1.0});
    const TimeGrid g = TimeGrid::spanning(-20.0, 20.0, 8000);
    const FrameTrajectory f0 = instantaneous_frames(h, g);
    const FrameTrajectory f1 = superadiabatic_frames(h, 1, g);
    for (double t : {-6.0, -2.0, 0.0, 1.0, 5.0}) {
        const std::size_t k = g.nearest(t);
        const double tk = g.at(k);
        const double gap = std::sqrt(v * v * tk * tk + 1.0);
        const double want = std::atan(2.0 * lz_coupling(v, 1.0, tk) / gap);
        CHECK(bloch_angle(f0.basis(k).col(0), f1.basis(k).col(0)) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("super-adiabatic frames approach the eigenframes as v shrinks") {
    const TimeGrid g = TimeGrid::spanning(-4.0, 4.0, 1600);
    std::vector<double> d;
    for (double v : {0.2, 0.1, 0.05}) {
        const auto h = lz_hamiltonian({v, 1.0});
        const FrameTrajectory f0 = instantaneous_frames(h, g);
        const FrameTrajectory f1 = superadiabatic_frames(h, 1, g);
        const std::size_t k = g.nearest(0.0);
        d.push_back(leak(f0.basis(k).col(0), f1.basis(k).col(0)));
    }
    CHECK(d[0] / d[1] == doctest::Approx(4.0).epsilon(0.05));
    CHECK(d[1] / d[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("frames are unitary with consistent quasi-energies at every order") {
    const auto h = lz_hamiltonian({0.25, 1.0});
    const TimeGrid g = TimeGrid::spanning(-30.0, 30.0, 12000);
    for (int j : {1, 3, 5}) {
        const FrameTrajectory f = superadiabatic_frames(h, j, g);
        CHECK(f.order() == j);
        double worst_u = 0.0;
        double worst_e = 0.0;
        for (std::size_t k = 0; k < f.size(); k += 101) {
            const Matrix u = f.basis(k);
            worst_u = std::max(worst_u, (u.adjoint() * u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff());
            const Matrix hk = h(g.at(k));
            for (Eigen::Index a = 0; a < 2; ++a) {
                worst_e = std::max(worst_e, std::abs(u.col(a).dot(hk * u.col(a)).real() - f.energies(k)(a)));
            }
            CHECK(f.energies(k)(0) <= f.energies(k)(1));
        }
        CHECK(worst_u < 1e-10);
        CHECK(worst_e < 1e-10);
    }
}

TEST_CASE("time-independent hamiltonian gives the eigenbasis at any order") {
    Matrix m(2, 2);
    m << 0.3, Complex(0.2, -0.1), Complex(0.2, 0.1), -0.4;
    const auto h = TimeDependentHamiltonian::constant(m);
    const TimeGrid g = TimeGrid::spanning(0.0, 1.0, 64);
    const FrameTrajectory f0 = instantaneous_frames(h, g);
    const FrameTrajectory f4 = superadiabatic_frames(h, 4, g);
    for (std::size_t k = 0; k < g.count; ++k) {
        for (Eigen::Index a = 0; a < 2; ++a) {
            CHECK(leak(f0.basis(k).col(a), f4.basis(k).col(a)) < 1e-13);
            const Vector u = f4.basis(k).col(a);
            CHECK((m * u - f4.energies(k)(a) * u).norm() < 1e-10);
        }
    }
    // amplitude, so roundoff in the leaked population shows up squared-rooted
    CHECK(residual_oscillation(h, f4) < 1e-6);
}

TEST_CASE("frame errors") {
    const auto h = lz_hamiltonian({1.0, 1.0});
    const TimeGrid g = TimeGrid::spanning(-2.0, 2.0, 400);
    CHECK_KIND(superadiabatic_frames(h, kMaxSuperadiabaticOrder + 1, g), ErrorKind::OrderCap);
    CHECK_KIND(superadiabatic_frames(h, -1, g), ErrorKind::ParameterDomain);
    const auto degenerate = TimeDependentHamiltonian::constant(Matrix::Identity(2, 2));
    CHECK_KIND(instantaneous_frames(degenerate, g), ErrorKind::Degeneracy);
    const auto sharp = lz_hamiltonian({1.0, 0.01});
    CHECK_KIND(instantaneous_frames(sharp, TimeGrid::spanning(-1.0, 1.0, 6)), ErrorKind::GridTooCoarse);
    const FrameTrajectory f = instantaneous_frames(h, g);
    CHECK_KIND(f.with_phases({1.0}), ErrorKind::Dimension);
    CHECK_KIND(frame_couplings(f, g.count), ErrorKind::OutOfGrid);
}

TEST_CASE("smooth gauge removes an arbitrary phase") {
    const auto h = lz_hamiltonian({1.0, 1.0});
    const FrameTrajectory f = instantaneous_frames(h, TimeGrid::spanning(-1.0, 1.0, 200));
    const Frame prev = f.frame(10);
    Frame cur = f.frame(11);
    cur.basis.col(0) *= std::polar(1.0, 2.0);
    cur.basis.col(1) *= std::polar(1.0, -1.3);
    const Frame fixed = smooth_gauge(prev, cur);
    CHECK((fixed.basis - f.frame(11).basis).norm() < 1e-12);
}

TEST_CASE("residual oscillation shrinks with order") {
    const double v = 0.2;
    const auto h = lz_hamiltonian({v, 1.0});
    const TimeGrid g = auto_grid(h, -10.0 / v, 10.0 / v);
    const auto r = residual_oscillation_scan(h, g, 3);
    REQUIRE(r.size() == 4);
    CHECK(r[1] < r[0]);
    CHECK(r[2] < r[1]);
    CHECK(r[3] < r[2]);
    // zeroth order: a tilt of about twice the local adiabatic parameter
    CHECK(r[0] == doctest::Approx(v).epsilon(0.3));
}
