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

#include "superlind/model.hpp"
#include "support.hpp"

using namespace superlind;

TEST_CASE("lz hamiltonian entries") {
    const auto h = lz_hamiltonian({0.5, 2.0});
    const Matrix m = h(3.0);
    CHECK(m(0, 0).real() == doctest::Approx(-0.75));
    CHECK(m(1, 1).real() == doctest::Approx(0.75));
    CHECK(m(0, 1).real() == doctest::Approx(1.0));
    CHECK(m(1, 0).real() == doctest::Approx(1.0));
    CHECK(h.dimension() == 2);
}

TEST_CASE("lz parameters are validated") {
    CHECK_KIND(lz_hamiltonian({0.0, 1.0}), ErrorKind::ParameterDomain);
    CHECK_KIND(lz_hamiltonian({1.0, -1.0}), ErrorKind::ParameterDomain);
    CHECK_KIND(lz_hamiltonian({NAN, 1.0}), ErrorKind::ParameterDomain);
}

TEST_CASE("hamiltonian evaluation rejects bad matrices") {
    TimeDependentHamiltonian skew(2, [](double) {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 1) = 1.0;
        return m;
    });
    CHECK_KIND(skew(0.0), ErrorKind::StateIntegrity);
    TimeDependentHamiltonian wrong(2, [](double) { return Matrix(Matrix::Identity(3, 3)); });
    CHECK_KIND(wrong(0.0), ErrorKind::Dimension);
    CHECK_KIND(TimeDependentHamiltonian(1, [](double) { return Matrix(Matrix::Identity(1, 1)); }),
               ErrorKind::Dimension);
}

TEST_CASE("coupling must be hermitian") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = Complex(0.0, 1.0);
    CHECK_KIND(CouplingOperator{a}, ErrorKind::StateIntegrity);
    CHECK(CouplingOperator::sigma_z().matrix().isApprox(sigma_z()));
}

TEST_CASE("ohmic rate closed form") {
    const double g0 = 0.05;
    const double wc = 5.0;
    const double T = 0.3;
    const auto s = ohmic_spectrum(g0, wc, T);
    for (double w : {-3.0, -0.7, 0.2, 1.0, 4.0}) {
        const double want = g0 * w * std::exp(-w / wc) / (1.0 - std::exp(-w / T));
        CHECK(s.rate(w) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(s.kind() == SpectrumKind::Ohmic);
    CHECK(s.gamma0() == g0);
    CHECK(s.cutoff() == wc);
    CHECK(s.temperature() == T);
}

TEST_CASE("ohmic zero-frequency limit is gamma0 T") {
    const auto s = ohmic_spectrum(0.05, 5.0, 0.1);
    CHECK(std::abs(s.rate(0.0) - 0.005) < 1e-9);
    CHECK(std::abs(s.rate(1e-9) - 0.005) < 1e-9);
    CHECK(std::abs(s.rate(-1e-9) - 0.005) < 1e-9);
}

TEST_CASE("ohmic zero temperature") {
    const auto s = ohmic_spectrum(0.1, 5.0, 0.0);
    CHECK(s.rate(-1.0) == 0.0);
    CHECK(s.rate(0.0) == 0.0);
    CHECK(s.rate(2.0) == doctest::Approx(0.2 * std::exp(-0.4)));
}

TEST_CASE("detailed balance depends on the cutoff convention") {
    const double T = 0.5;
    const double wc = 5.0;
    const auto sym = ohmic_spectrum(0.1, wc, T, CutoffConvention::Symmetric);
    const auto lit = ohmic_spectrum(0.1, wc, T, CutoffConvention::Literal);
    for (double w : {0.3, 1.0, 2.5}) {
        CHECK(sym.rate(-w) == doctest::Approx(std::exp(-w / T) * sym.rate(w)).epsilon(1e-12));
        CHECK(lit.rate(-w) == doctest::Approx(std::exp(-w / T + 2.0 * w / wc) * lit.rate(w)).epsilon(1e-12));
        CHECK(sym.rate(w) == doctest::Approx(lit.rate(w)).epsilon(1e-14));
    }
}

TEST_CASE("ohmic parameters are validated") {
    CHECK_KIND(ohmic_spectrum(-0.1, 5.0, 0.1), ErrorKind::ParameterDomain);
    CHECK_KIND(ohmic_spectrum(0.1, 0.0, 0.1), ErrorKind::ParameterDomain);
    CHECK_KIND(ohmic_spectrum(0.1, 5.0, -1.0), ErrorKind::ParameterDomain);
}

TEST_CASE("dephasing spectrum lives at zero frequency") {
    const auto s = dephasing_spectrum(0.03);
    CHECK(s.rate(0.0) == 0.03);
    CHECK(s.rate(0.5) == 0.0);
    CHECK(s.rate(-0.5) == 0.0);
    CHECK(s.kind() == SpectrumKind::PureDephasing);
    CHECK_KIND(dephasing_spectrum(-1.0), ErrorKind::ParameterDomain);
}

TEST_CASE("custom spectra reject negative rates") {
    const auto s = BathSpectrum::custom([](double w) { return w; });
    CHECK(s.rate(1.0) == 1.0);
    CHECK_KIND(s.rate(-1.0), ErrorKind::ParameterDomain);
    CHECK_FALSE(s.has_shift());
    const auto t = s.with_shift([](double w) { return 2.0 * w; });
    CHECK(t.has_shift());
    CHECK(t.shift(1.5) == 3.0);
}

TEST_CASE("two-level minimum eigenvalue") {
    Matrix rho(2, 2);
    rho << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    CHECK(min_eigenvalue(rho) == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-14));
}
