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

#include <functional>
#include <string>

#include "superlind/linalg.hpp"

namespace superlind {

// System Hamiltonian H(t), hbar = 1. Evaluation checks dimension and
// Hermiticity (to 1e-12) of every returned matrix.
class TimeDependentHamiltonian {
public:
    using Evaluator = std::function<Matrix(double)>;

    TimeDependentHamiltonian(Eigen::Index dimension, Evaluator evaluator);

    static TimeDependentHamiltonian constant(const Matrix& h);

    Eigen::Index dimension() const noexcept { return dimension_; }

    Matrix operator()(double t) const;

private:
    Eigen::Index dimension_;
    Evaluator evaluator_;
};

struct LZParams {
    double velocity{1.0};
    double gap{1.0};

    void validate() const;
};

// H(t) = 1/2 [[-v t, gap], [gap, v t]].
TimeDependentHamiltonian lz_hamiltonian(const LZParams& p);

class CouplingOperator {
public:
    explicit CouplingOperator(Matrix a);

    static CouplingOperator sigma_z() { return CouplingOperator(superlind::sigma_z()); }

    const Matrix& matrix() const noexcept { return a_; }
    Eigen::Index dimension() const noexcept { return a_.rows(); }

private:
    Matrix a_;
};

enum class SpectrumKind { Ohmic, PureDephasing, Custom };

// Sign convention of the exponential cutoff at negative frequency.
//   Literal:   exp(-w / wc) for all w
//   Symmetric: exp(-|w| / wc), which keeps gamma(-w) = exp(-w/T) gamma(w)
enum class CutoffConvention { Literal, Symmetric };

const char* to_string(SpectrumKind kind);

// One-sided bath correlation data: relaxation rate gamma(w) >= 0 and an
// optional shift S(w) (identically zero unless supplied).
class BathSpectrum {
public:
    using Function = std::function<double(double)>;

    // Custom spectrum. The rate must be nonnegative wherever it is evaluated.
    static BathSpectrum custom(Function rate, Function shift = {});

    double rate(double omega) const;
    double shift(double omega) const;
    bool has_shift() const noexcept { return static_cast<bool>(shift_); }

    BathSpectrum with_shift(Function shift) const;

    SpectrumKind kind() const noexcept { return kind_; }
    double gamma0() const noexcept { return gamma0_; }
    double cutoff() const noexcept { return omega_c_; }
    double temperature() const noexcept { return temperature_; }
    CutoffConvention cutoff_convention() const noexcept { return convention_; }

private:
    friend BathSpectrum ohmic_spectrum(double, double, double, CutoffConvention);
    friend BathSpectrum dephasing_spectrum(double);

    BathSpectrum() = default;

    Function rate_;
    Function shift_;
    SpectrumKind kind_{SpectrumKind::Custom};
    double gamma0_{0.0};
    double omega_c_{0.0};
    double temperature_{0.0};
    CutoffConvention convention_{CutoffConvention::Literal};
};

// gamma(w) = g0 w exp(-w/wc) / (1 - exp(-w/T)), with gamma(0) = g0 T and the
// zero-temperature limit g0 w exp(-w/wc) for w > 0, 0 otherwise.
BathSpectrum ohmic_spectrum(double gamma0, double omega_c, double temperature,
                            CutoffConvention convention = CutoffConvention::Literal);

// Weight only at zero frequency: gamma(0) = gamma0, gamma(w != 0) = 0.
BathSpectrum dephasing_spectrum(double gamma0);

} // namespace superlind
