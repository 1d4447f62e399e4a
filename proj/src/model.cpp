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

#include "superlind/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "superlind/error.hpp"

namespace superlind {

namespace {

constexpr double kHermiticityTol = 1e-12;

void require_hermitian(const Matrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::Dimension, std::string(what) + " must be square");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermiticity_error(m) > kHermiticityTol * scale) {
        throw Error(ErrorKind::StateIntegrity, std::string(what) + " is not Hermitian");
    }
}

} // namespace

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

double min_eigenvalue(const Matrix& h) {
    if (h.rows() == 2) {
        const double a = h(0, 0).real();
        const double d = h(1, 1).real();
        const double b = std::abs(h(0, 1));
        return 0.5 * (a + d) - std::hypot(0.5 * (a - d), b);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

TimeDependentHamiltonian::TimeDependentHamiltonian(Eigen::Index dimension, Evaluator evaluator)
    : dimension_(dimension), evaluator_(std::move(evaluator)) {
    if (dimension_ < 2) {
        throw Error(ErrorKind::Dimension, "Hamiltonian dimension must be at least 2");
    }
    if (!evaluator_) {
        throw Error(ErrorKind::ParameterDomain, "Hamiltonian evaluator is empty");
    }
}

TimeDependentHamiltonian TimeDependentHamiltonian::constant(const Matrix& h) {
    require_hermitian(h, "Hamiltonian");
    return TimeDependentHamiltonian(h.rows(), [h](double) { return h; });
}

Matrix TimeDependentHamiltonian::operator()(double t) const {
    Matrix h = evaluator_(t);
    if (h.rows() != dimension_ || h.cols() != dimension_) {
        std::ostringstream os;
        os << "Hamiltonian evaluated at t=" << t << " has shape " << h.rows() << "x" << h.cols()
           << ", expected " << dimension_ << "x" << dimension_;
        throw Error(ErrorKind::Dimension, os.str());
    }
    require_hermitian(h, "Hamiltonian");
    return h;
}

void LZParams::validate() const {
    if (!(std::isfinite(velocity) && velocity > 0.0)) {
        throw Error(ErrorKind::ParameterDomain, "Landau-Zener velocity must be finite and > 0");
    }
    if (!(std::isfinite(gap) && gap > 0.0)) {
        throw Error(ErrorKind::ParameterDomain, "Landau-Zener gap must be finite and > 0");
    }
}

TimeDependentHamiltonian lz_hamiltonian(const LZParams& p) {
    p.validate();
    const double v = p.velocity;
    const double gap = p.gap;
    return TimeDependentHamiltonian(2, [v, gap](double t) {
        Matrix h(2, 2);
        h << -0.5 * v * t, 0.5 * gap, 0.5 * gap, 0.5 * v * t;
        return h;
    });
}

CouplingOperator::CouplingOperator(Matrix a) : a_(std::move(a)) {
    require_hermitian(a_, "coupling operator");
}

const char* to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::Ohmic: return "ohmic";
        case SpectrumKind::PureDephasing: return "dephasing";
        case SpectrumKind::Custom: return "custom";
    }
    return "unknown";
}

BathSpectrum BathSpectrum::custom(Function rate, Function shift) {
    if (!rate) {
        throw Error(ErrorKind::ParameterDomain, "custom spectrum needs a rate function");
    }
    BathSpectrum s;
    s.rate_ = std::move(rate);
    s.shift_ = std::move(shift);
    s.kind_ = SpectrumKind::Custom;
    return s;
}

double BathSpectrum::rate(double omega) const {
    const double g = rate_(omega);
    if (!(g >= 0.0) || !std::isfinite(g)) {
        std::ostringstream os;
        os << "bath rate gamma(" << omega << ") = " << g << " is not a finite nonnegative number";
        throw Error(ErrorKind::ParameterDomain, os.str());
    }
    return g;
}

double BathSpectrum::shift(double omega) const {
    return shift_ ? shift_(omega) : 0.0;
}

BathSpectrum BathSpectrum::with_shift(Function shift) const {
    BathSpectrum s = *this;
    s.shift_ = std::move(shift);
    return s;
}

BathSpectrum ohmic_spectrum(double gamma0, double omega_c, double temperature,
                            CutoffConvention convention) {
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
        throw Error(ErrorKind::ParameterDomain, "ohmic gamma0 must be >= 0");
    }
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
        throw Error(ErrorKind::ParameterDomain, "ohmic cutoff must be > 0");
    }
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw Error(ErrorKind::ParameterDomain, "ohmic temperature must be >= 0");
    }
    const bool symmetric = convention == CutoffConvention::Symmetric;
    BathSpectrum s;
    s.kind_ = SpectrumKind::Ohmic;
    s.gamma0_ = gamma0;
    s.omega_c_ = omega_c;
    s.temperature_ = temperature;
    s.convention_ = convention;
    s.rate_ = [gamma0, omega_c, temperature, symmetric](double w) -> double {
        const double cut = std::exp(-(symmetric ? std::abs(w) : w) / omega_c);
        if (temperature == 0.0) {
            return w > 0.0 ? gamma0 * w * cut : 0.0;
        }
        if (w == 0.0) {
            return gamma0 * temperature;
        }
        // w / (1 - e^{-w/T}); expm1 keeps this accurate near w = 0.
        const double bose = w / -std::expm1(-w / temperature);
        if (!std::isfinite(bose)) {
            return 0.0;
        }
        return std::max(0.0, gamma0 * bose * cut);
    };
    return s;
}

BathSpectrum dephasing_spectrum(double gamma0) {
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
        throw Error(ErrorKind::ParameterDomain, "dephasing gamma0 must be >= 0");
    }
    BathSpectrum s;
    s.kind_ = SpectrumKind::PureDephasing;
    s.gamma0_ = gamma0;
    s.rate_ = [gamma0](double w) { return w == 0.0 ? gamma0 : 0.0; };
    return s;
}

} // namespace superlind
