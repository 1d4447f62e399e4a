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

#include <complex>

#include <Eigen/Dense>

namespace superlind {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// N x N complex, Hermitian, unit trace.
using DensityMatrix = Matrix;
// N complex amplitudes, unit norm.
using StateVector = Vector;

inline constexpr Complex kI{0.0, 1.0};

// Largest absolute entry of H - H^dagger.
inline double hermiticity_error(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

// Smallest eigenvalue of a Hermitian matrix (closed form for N = 2).
double min_eigenvalue(const Matrix& hermitian);

} // namespace superlind
