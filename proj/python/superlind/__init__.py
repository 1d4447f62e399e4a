# Copyright 2026 The superlind Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Secular Lindblad dynamics in super-adiabatic frames."""

from ._core import (
    BathSpectrum,
    Error,
    FrameTrajectory,
    Hamiltonian,
    LindbladGenerator,
    TimeGrid,
    adiabatic_report,
    auto_grid,
    bloch_vector,
    check,
    closed_lz_oracle,
    dephasing_spectrum,
    evolve_lindblad,
    evolve_trajectories,
    evolve_unitary,
    fig1,
    instantaneous_frames,
    lz_hamiltonian,
    ohmic_spectrum,
    residual_oscillation_scan,
    superadiabatic_frames,
    sweep,
    sweep_csv,
)

__all__ = [
    "BathSpectrum",
    "Error",
    "FrameTrajectory",
    "Hamiltonian",
    "LindbladGenerator",
    "TimeGrid",
    "adiabatic_report",
    "auto_grid",
    "bloch_vector",
    "check",
    "closed_lz_oracle",
    "dephasing_spectrum",
    "evolve_lindblad",
    "evolve_trajectories",
    "evolve_unitary",
    "fig1",
    "instantaneous_frames",
    "lz_hamiltonian",
    "ohmic_spectrum",
    "residual_oscillation_scan",
    "superadiabatic_frames",
    "sweep",
    "sweep_csv",
]
