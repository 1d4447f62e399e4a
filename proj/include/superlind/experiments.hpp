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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "superlind/config.hpp"
#include "superlind/frames.hpp"
#include "superlind/generator.hpp"
#include "superlind/model.hpp"

namespace superlind {

enum class BasisMode { SuperAdiabatic, Instantaneous, Closed };
enum class BathKind { None, Dephasing, Ohmic };
enum class SolverKind { MasterEquation, Trajectories };

const char* to_string(BasisMode mode);
const char* to_string(BathKind kind);
const char* to_string(SolverKind kind);

// P_{g->e} = exp(-pi gap^2 / (2 v)).
double closed_lz_oracle(double gap, double velocity);

struct SweepConfig {
    double gap{1.0};
    std::vector<double> inv_velocities{1, 2, 3, 4, 5, 6};
    double window{25.0};  // T_f = window * gap / v

    BathKind bath{BathKind::None};
    std::vector<double> gamma0{0.0};       // gamma(0) for dephasing, gamma0 for ohmic
    std::vector<double> temperature{0.0};  // ohmic only
    double cutoff{5.0};
    CutoffConvention cutoff_convention{CutoffConvention::Literal};

    std::vector<BasisMode> modes{BasisMode::SuperAdiabatic};
    int order{4};

    SolverKind solver{SolverKind::MasterEquation};
    std::size_t trajectories{1000};
    std::uint64_t seed{1};
    double grid_step{0.0};  // 0 = auto_grid
    unsigned threads{0};

    std::string output;
    bool emit_dat{false};

    static SweepConfig from_config(const ConfigFile& file);
    void validate() const;
    // (key, value) pairs describing the run, written to output headers.
    std::vector<std::pair<std::string, std::string>> describe() const;
};

struct SweepRecord {
    double inv_v{0.0};
    double p_ge{0.0};
    double p_ge_stderr{0.0};  // trajectory solver only
    BasisMode mode{BasisMode::SuperAdiabatic};
    BathKind bath{BathKind::None};
    double gamma0{0.0};
    double temperature{0.0};
    int order{0};
    double trace_error{0.0};
    double hermiticity_error{0.0};
    double min_eigenvalue{0.0};
    double adiabatic{0.0};
    double initial_excited{0.0};
    double runtime_s{0.0};
    std::vector<std::string> warnings;
};

// Landau-Zener window shared by every point at one velocity.
struct LzSetup {
    double gap{1.0};
    double velocity{1.0};
    double half_window{0.0};
    TimeGrid grid;
    std::shared_ptr<TimeDependentHamiltonian> hamiltonian;
    std::shared_ptr<const FrameTrajectory> superadiabatic;  // order j
    std::shared_ptr<const FrameTrajectory> instantaneous;   // order 0
    double adiabatic{0.0};
};

LzSetup prepare_lz(double gap, double inv_v, int order, double window, double grid_step = 0.0);

struct PointSpec {
    BasisMode mode{BasisMode::SuperAdiabatic};
    BathKind bath{BathKind::None};
    double gamma0{0.0};
    double temperature{0.0};
    double cutoff{5.0};
    CutoffConvention cutoff_convention{CutoffConvention::Literal};
    SolverKind solver{SolverKind::MasterEquation};
    std::size_t trajectories{1000};
    std::uint64_t seed{1};
    unsigned threads{1};
};

BathSpectrum make_spectrum(const PointSpec& spec);

// Propagates the order-j ground state at -T_f to +T_f and reads out the
// population of the instantaneous excited state of H(+T_f).
SweepRecord run_lz_point(const LzSetup& setup, const PointSpec& spec);

// Every (inv_v, mode, gamma0, T) combination; output sorted by inv_v, then
// mode, gamma0, T.
std::vector<SweepRecord> run_lz_sweep(const SweepConfig& cfg);

// CSV: `# key = value` metadata block, header row, one row per record.
// Distinct warnings of a sweep, one line each, in record order.
std::vector<std::string> sweep_warnings(const std::vector<SweepRecord>& records);

void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRecord>& records,
                     const std::string& generated_at = {});
void write_sweep_dat(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRecord>& records);

struct Fig1Config {
    double gap{1.0};
    double inv_v{4.0};
    double window{3.0};  // paths cover t in [-window gap / v, +window gap / v]
    int order{3};
    double grid_step{0.0};
    std::size_t max_rows{2000};
    std::string output{"fig1"};

    static Fig1Config from_config(const ConfigFile& file);
    void validate() const;
};

struct BlochPath {
    std::vector<double> t;
    std::vector<std::array<double, 3>> xyz;
};

struct Fig1Result {
    BlochPath instantaneous;   // instantaneous ground state
    BlochPath superadiabatic;  // order-j ground state
    BlochPath evolved;         // unitary evolution of the initial instantaneous ground state
    double max_dev_superadiabatic{0.0};
    double max_dev_instantaneous{0.0};
};

Fig1Result run_fig1(const Fig1Config& cfg);
void write_bloch_csv(std::ostream& out, const BlochPath& path, const std::string& label, const Fig1Config& cfg);

// Frame trajectory dump: t, order, alpha, E_alpha and, for N = 2, the Bloch
// vector of |phi_alpha>.
void write_frames_csv(std::ostream& out, const FrameTrajectory& traj, std::size_t every = 1);

// gamma(w) on a uniform frequency grid.
void write_spectrum_csv(std::ostream& out, const BathSpectrum& spectrum, double wmin, double wmax,
                        std::size_t n);

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

// Quick invariant suite behind `superlind check`.
std::vector<CheckResult> run_invariant_checks();

} // namespace superlind
