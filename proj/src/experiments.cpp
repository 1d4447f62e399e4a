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

#include "superlind/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "superlind/error.hpp"
#include "superlind/parallel.hpp"
#include "superlind/propagation.hpp"

namespace superlind {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += num(xs[i]);
    }
    return s;
}

BasisMode parse_mode(const std::string& s, ConfigReader& r) {
    if (s == "superadiabatic" || s == "super-adiabatic") return BasisMode::SuperAdiabatic;
    if (s == "instantaneous") return BasisMode::Instantaneous;
    if (s == "closed") return BasisMode::Closed;
    r.fail("basis.mode", "unknown mode '" + s + "' (superadiabatic | instantaneous | closed)");
    return BasisMode::SuperAdiabatic;
}

TimeGrid lz_grid(const TimeDependentHamiltonian& h, double half, double step) {
    if (step > 0.0) {
        auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half / step));
        if (intervals % 2 != 0) ++intervals;
        return TimeGrid::spanning(-half, half, std::max<std::size_t>(intervals, 6));
    }
    return auto_grid(h, -half, half);
}

} // namespace

const char* to_string(BasisMode mode) {
    switch (mode) {
        case BasisMode::SuperAdiabatic: return "superadiabatic";
        case BasisMode::Instantaneous: return "instantaneous";
        case BasisMode::Closed: return "closed";
    }
    return "unknown";
}

const char* to_string(BathKind kind) {
    switch (kind) {
        case BathKind::None: return "none";
        case BathKind::Dephasing: return "dephasing";
        case BathKind::Ohmic: return "ohmic";
    }
    return "unknown";
}

const char* to_string(SolverKind kind) {
    return kind == SolverKind::MasterEquation ? "me" : "trajectories";
}

double closed_lz_oracle(double gap, double velocity) {
    if (!(gap > 0.0) || !(velocity > 0.0)) {
        throw Error(ErrorKind::ParameterDomain, "closed_lz_oracle needs gap > 0 and v > 0");
    }
    return std::exp(-M_PI * gap * gap / (2.0 * velocity));
}

SweepConfig SweepConfig::from_config(const ConfigFile& file) {
    file.require_known({"model.delta", "model.inv_v", "model.window", "bath.kind", "bath.gamma0",
                        "bath.temperature", "bath.cutoff", "bath.cutoff_convention", "basis.mode", "basis.order",
                        "solver.method", "solver.trajectories", "solver.seed", "solver.step", "solver.threads",
                        "output.path", "output.dat"});
    SweepConfig c;
    ConfigReader r(file);
    c.gap = r.number("model.delta", c.gap);
    c.inv_velocities = r.numbers("model.inv_v", c.inv_velocities);
    c.window = r.number("model.window", c.window);

    const std::string kind = r.text("bath.kind", "none");
    if (kind == "none") {
        c.bath = BathKind::None;
    } else if (kind == "dephasing") {
        c.bath = BathKind::Dephasing;
    } else if (kind == "ohmic") {
        c.bath = BathKind::Ohmic;
    } else {
        r.fail("bath.kind", "unknown bath '" + kind + "' (none | dephasing | ohmic)");
    }
    c.gamma0 = r.numbers("bath.gamma0", c.gamma0);
    c.temperature = r.numbers("bath.temperature", c.temperature);
    c.cutoff = r.number("bath.cutoff", c.cutoff);
    const std::string conv = r.text("bath.cutoff_convention", "literal");
    if (conv == "literal") {
        c.cutoff_convention = CutoffConvention::Literal;
    } else if (conv == "symmetric") {
        c.cutoff_convention = CutoffConvention::Symmetric;
    } else {
        r.fail("bath.cutoff_convention", "expected literal | symmetric, got '" + conv + "'");
    }

    c.modes.clear();
    for (const auto& m : r.words("basis.mode", {"superadiabatic"})) c.modes.push_back(parse_mode(m, r));
    c.order = static_cast<int>(r.integer("basis.order", c.order));

    const std::string method = r.text("solver.method", "me");
    if (method == "me") {
        c.solver = SolverKind::MasterEquation;
    } else if (method == "trajectories") {
        c.solver = SolverKind::Trajectories;
    } else {
        r.fail("solver.method", "expected me | trajectories, got '" + method + "'");
    }
    const long m = r.integer("solver.trajectories", static_cast<long>(c.trajectories));
    if (m < 1) r.fail("solver.trajectories", "must be >= 1");
    c.trajectories = static_cast<std::size_t>(std::max(1L, m));
    const long seed = r.integer("solver.seed", static_cast<long>(c.seed));
    c.seed = static_cast<std::uint64_t>(seed);
    c.grid_step = r.number("solver.step", c.grid_step);
    const long threads = r.integer("solver.threads", 0);
    if (threads < 0) r.fail("solver.threads", "must be >= 0");
    c.threads = static_cast<unsigned>(std::max(0L, threads));

    c.output = r.text("output.path", "");
    c.emit_dat = r.boolean("output.dat", false);
    r.finish();
    c.validate();
    return c;
}

void SweepConfig::validate() const {
    std::vector<std::string> bad;
    if (!(gap > 0.0)) bad.push_back("model.delta must be > 0");
    if (inv_velocities.empty()) bad.push_back("model.inv_v is empty");
    for (double x : inv_velocities) {
        if (!(x > 0.0)) {
            bad.push_back("model.inv_v entries must be > 0 (got " + num(x) + ")");
            break;
        }
    }
    if (!(window >= 10.0)) bad.push_back("model.window must be >= 10 (got " + num(window) + ")");
    for (double g : gamma0) {
        if (!(g >= 0.0)) {
            bad.push_back("bath.gamma0 entries must be >= 0");
            break;
        }
    }
    if (bath == BathKind::Ohmic) {
        if (!(cutoff > 0.0)) bad.push_back("bath.cutoff must be > 0");
        for (double t : temperature) {
            if (!(t >= 0.0)) {
                bad.push_back("bath.temperature entries must be >= 0");
                break;
            }
        }
    }
    if (modes.empty()) bad.push_back("basis.mode is empty");
    if (order < 0 || order > kMaxSuperadiabaticOrder) {
        bad.push_back("basis.order must lie in [0, " + std::to_string(kMaxSuperadiabaticOrder) + "]");
    }
    if (trajectories < 1) bad.push_back("solver.trajectories must be >= 1");
    if (grid_step < 0.0) bad.push_back("solver.step must be >= 0");
    if (!bad.empty()) {
        std::string msg = "inconsistent sweep configuration:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw Error(ErrorKind::Validation, msg);
    }
}

std::vector<std::pair<std::string, std::string>> SweepConfig::describe() const {
    std::string mode_list;
    for (std::size_t i = 0; i < modes.size(); ++i) mode_list += (i ? ", " : "") + std::string(to_string(modes[i]));
    std::vector<std::pair<std::string, std::string>> d = {
        {"delta", num(gap)},
        {"inv_v", join(inv_velocities)},
        {"window", num(window)},
        {"half_window", "window * delta * inv_v"},
        {"bath", to_string(bath)},
        {"gamma0", join(gamma0)},
    };
    if (bath == BathKind::Ohmic) {
        d.emplace_back("temperature", join(temperature));
        d.emplace_back("cutoff", num(cutoff));
        d.emplace_back("cutoff_convention",
                       cutoff_convention == CutoffConvention::Literal ? "literal" : "symmetric");
    }
    d.emplace_back("coupling", "sigma_z");
    d.emplace_back("lamb_shift", "off");
    d.emplace_back("mode", mode_list);
    d.emplace_back("order", std::to_string(order));
    d.emplace_back("solver", to_string(solver));
    if (solver == SolverKind::Trajectories) {
        d.emplace_back("trajectories", std::to_string(trajectories));
        d.emplace_back("seed", std::to_string(seed));
    }
    d.emplace_back("grid_step", grid_step > 0.0 ? num(grid_step) : "auto");
    d.emplace_back("integrator", "rk4, step 2h, stages on frame nodes");
    d.emplace_back("initial_state", "order-j super-adiabatic ground state at -T_f");
    d.emplace_back("readout", "population of the instantaneous excited state of H(+T_f)");
    return d;
}

LzSetup prepare_lz(double gap, double inv_v, int order, double window, double grid_step) {
    if (!(inv_v > 0.0)) throw Error(ErrorKind::ParameterDomain, "inv_v must be > 0");
    LzSetup s;
    s.gap = gap;
    s.velocity = 1.0 / inv_v;
    s.half_window = window * gap / s.velocity;
    s.hamiltonian = std::make_shared<TimeDependentHamiltonian>(lz_hamiltonian({s.velocity, gap}));
    s.grid = lz_grid(*s.hamiltonian, s.half_window, grid_step);
    s.instantaneous = std::make_shared<const FrameTrajectory>(instantaneous_frames(*s.hamiltonian, s.grid));
    s.superadiabatic = order == 0 ? s.instantaneous
                                  : std::make_shared<const FrameTrajectory>(
                                        superadiabatic_frames(*s.hamiltonian, order, s.grid));
    s.adiabatic = adiabatic_report(*s.instantaneous).global;
    return s;
}

BathSpectrum make_spectrum(const PointSpec& spec) {
    switch (spec.bath) {
        case BathKind::None: return dephasing_spectrum(0.0);
        case BathKind::Dephasing: return dephasing_spectrum(spec.gamma0);
        case BathKind::Ohmic:
            return ohmic_spectrum(spec.gamma0, spec.cutoff, spec.temperature, spec.cutoff_convention);
    }
    return dephasing_spectrum(0.0);
}

SweepRecord run_lz_point(const LzSetup& setup, const PointSpec& spec) {
    const auto started = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.inv_v = 1.0 / setup.velocity;
    rec.mode = spec.mode;
    rec.bath = spec.bath;
    rec.gamma0 = spec.gamma0;
    rec.temperature = spec.bath == BathKind::Ohmic ? spec.temperature : 0.0;
    rec.order = setup.superadiabatic->order();
    rec.adiabatic = setup.adiabatic;

    const double t0 = setup.grid.start;
    const double t1 = setup.grid.stop();
    const StateVector psi0 = setup.superadiabatic->basis(0).col(0);
    const StateVector excited_final = setup.instantaneous->basis(setup.grid.count - 1).col(1);
    rec.initial_excited = std::norm(setup.instantaneous->basis(0).col(1).dot(psi0));

    if (rec.adiabatic > 0.25) {
        rec.warnings.push_back("adiabatic parameter " + num(rec.adiabatic) + " exceeds 0.25");
    }
    if (rec.initial_excited > 1e-6) {
        rec.warnings.push_back("initial excited population " + num(rec.initial_excited) +
                               " exceeds 1e-6; widen the window");
    }

    DensityMatrix rho;
    if (spec.mode == BasisMode::Closed) {
        IntegratorConfig cfg;
        cfg.method = IntegratorConfig::Method::Rk4;
        cfg.fixed_step = 2.0 * setup.grid.step;
        const StateVector psi = evolve_unitary(*setup.hamiltonian, psi0, t0, t1, cfg);
        rho = psi * psi.adjoint();
        rec.hermiticity_error = hermiticity_error(rho);
        rec.min_eigenvalue = min_eigenvalue(rho);
    } else {
        const auto frames = spec.mode == BasisMode::SuperAdiabatic ? setup.superadiabatic : setup.instantaneous;
        const LindbladGenerator gen(*setup.hamiltonian, frames, CouplingOperator::sigma_z(), make_spectrum(spec));
        if (spec.solver == SolverKind::MasterEquation) {
            const LindbladResult res = evolve_lindblad(gen, psi0 * psi0.adjoint(), t0, t1);
            rho = res.rho;
            rec.trace_error = res.max_trace_error;
            rec.hermiticity_error = res.max_hermiticity_error;
            rec.min_eigenvalue = res.min_eigenvalue;
        } else {
            TrajectoryConfig tcfg;
            tcfg.count = spec.trajectories;
            tcfg.seed = spec.seed;
            tcfg.threads = spec.threads;
            const TrajectoryResult res = evolve_trajectories(gen, psi0, t0, t1, tcfg, {}, &excited_final);
            rho = res.rho;
            const auto& p = res.final_populations;
            const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
            double var = 0.0;
            for (double x : p) var += (x - mean) * (x - mean);
            if (p.size() > 1) var /= static_cast<double>(p.size() - 1);
            rec.p_ge_stderr = std::sqrt(var / static_cast<double>(p.size()));
            rec.trace_error = std::abs(rho.trace().real() - 1.0);
            rec.hermiticity_error = hermiticity_error(rho);
            rec.min_eigenvalue = min_eigenvalue(rho);
        }
    }
    rec.p_ge = excited_final.dot(rho * excited_final).real();
    rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

std::vector<SweepRecord> run_lz_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<double> inv = cfg.inv_velocities;
    std::sort(inv.begin(), inv.end());
    inv.erase(std::unique(inv.begin(), inv.end()), inv.end());

    const std::vector<double> temps = cfg.bath == BathKind::Ohmic ? cfg.temperature : std::vector<double>{0.0};
    const std::vector<double> gammas = cfg.bath == BathKind::None ? std::vector<double>{0.0} : cfg.gamma0;
    std::vector<PointSpec> specs;
    for (BasisMode mode : cfg.modes) {
        // the bath does not act on closed runs
        const auto& gs = mode == BasisMode::Closed ? std::vector<double>{0.0} : gammas;
        const auto& ts = mode == BasisMode::Closed ? std::vector<double>{0.0} : temps;
        for (double g : gs) {
            for (double t : ts) {
                PointSpec p;
                p.mode = mode;
                p.bath = mode == BasisMode::Closed ? BathKind::None : cfg.bath;
                p.gamma0 = g;
                p.temperature = t;
                p.cutoff = cfg.cutoff;
                p.cutoff_convention = cfg.cutoff_convention;
                p.solver = cfg.solver;
                p.trajectories = cfg.trajectories;
                p.seed = cfg.seed;
                specs.push_back(p);
            }
        }
    }

    const unsigned workers = worker_count(cfg.threads);
    const unsigned outer = static_cast<unsigned>(std::min<std::size_t>(workers, inv.size()));
    std::vector<std::vector<SweepRecord>> per_point(inv.size());
    parallel_for(inv.size(), outer, [&](std::size_t i) {
        const LzSetup setup = prepare_lz(cfg.gap, inv[i], cfg.order, cfg.window, cfg.grid_step);
        for (PointSpec p : specs) {
            p.threads = outer > 1 ? 1 : workers;
            per_point[i].push_back(run_lz_point(setup, p));
        }
    });

    std::vector<SweepRecord> out;
    for (auto& v : per_point) {
        for (auto& r : v) out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const SweepRecord& a, const SweepRecord& b) {
        return std::make_tuple(a.inv_v, static_cast<int>(a.mode), a.gamma0, a.temperature) <
               std::make_tuple(b.inv_v, static_cast<int>(b.mode), b.gamma0, b.temperature);
    });
    return out;
}

std::vector<std::string> sweep_warnings(const std::vector<SweepRecord>& records) {
    std::vector<std::string> out;
    for (const auto& r : records) {
        for (const auto& w : r.warnings) {
            std::string line = "inv_v " + num(r.inv_v) + ": " + w;
            if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(std::move(line));
        }
    }
    return out;
}

void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRecord>& records,
                     const std::string& generated_at) {
    out << "# superlind Landau-Zener sweep\n";
    if (!generated_at.empty()) out << "# generated_at = " << generated_at << "\n";
    for (const auto& [k, v] : cfg.describe()) out << "# " << k << " = " << v << "\n";
    for (const auto& w : sweep_warnings(records)) out << "# warning = " << w << "\n";
    out << "inv_v,P_ge,P_ge_stderr,mode,bath,gamma0,T,j,trace_error,hermiticity_error,min_eigenvalue,adiabatic\n";
    for (const auto& r : records) {
        out << num(r.inv_v) << ',' << num(r.p_ge) << ',' << num(r.p_ge_stderr) << ',' << to_string(r.mode) << ','
            << to_string(r.bath) << ',' << num(r.gamma0) << ',' << num(r.temperature) << ',' << r.order << ','
            << num(r.trace_error) << ',' << num(r.hermiticity_error) << ',' << num(r.min_eigenvalue) << ','
            << num(r.adiabatic) << '\n';
    }
}

void write_sweep_dat(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRecord>& records) {
    for (const auto& [k, v] : cfg.describe()) out << "# " << k << " = " << v << "\n";
    out << "# inv_v P_ge P_ge_stderr mode bath gamma0 T j trace_error hermiticity_error min_eigenvalue adiabatic\n";
    for (const auto& r : records) {
        out << num(r.inv_v) << ' ' << num(r.p_ge) << ' ' << num(r.p_ge_stderr) << ' ' << to_string(r.mode) << ' '
            << to_string(r.bath) << ' ' << num(r.gamma0) << ' ' << num(r.temperature) << ' ' << r.order << ' '
            << num(r.trace_error) << ' ' << num(r.hermiticity_error) << ' ' << num(r.min_eigenvalue) << ' '
            << num(r.adiabatic) << '\n';
    }
}

Fig1Config Fig1Config::from_config(const ConfigFile& file) {
    file.require_known({"model.delta", "model.inv_v", "model.window", "fig1.order", "fig1.max_rows",
                        "solver.step", "output.path"});
    Fig1Config c;
    ConfigReader r(file);
    c.gap = r.number("model.delta", c.gap);
    c.inv_v = r.number("model.inv_v", c.inv_v);
    c.window = r.number("model.window", c.window);
    c.order = static_cast<int>(r.integer("fig1.order", c.order));
    const long rows = r.integer("fig1.max_rows", static_cast<long>(c.max_rows));
    if (rows < 2) r.fail("fig1.max_rows", "must be >= 2");
    c.max_rows = static_cast<std::size_t>(std::max(2L, rows));
    c.grid_step = r.number("solver.step", c.grid_step);
    c.output = r.text("output.path", c.output);
    r.finish();
    c.validate();
    return c;
}

void Fig1Config::validate() const {
    std::vector<std::string> bad;
    if (!(gap > 0.0)) bad.push_back("model.delta must be > 0");
    if (!(inv_v > 0.0)) bad.push_back("model.inv_v must be > 0");
    if (!(window > 0.0)) bad.push_back("model.window must be > 0");
    if (order < 0 || order > kMaxSuperadiabaticOrder) bad.push_back("fig1.order out of range");
    if (grid_step < 0.0) bad.push_back("solver.step must be >= 0");
    if (!bad.empty()) {
        std::string msg = "inconsistent fig1 configuration:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw Error(ErrorKind::Validation, msg);
    }
}

Fig1Result run_fig1(const Fig1Config& cfg) {
    cfg.validate();
    const double v = 1.0 / cfg.inv_v;
    const double half = cfg.window * cfg.gap / v;
    const TimeDependentHamiltonian h = lz_hamiltonian({v, cfg.gap});
    const TimeGrid grid = lz_grid(h, half, cfg.grid_step);
    const FrameTrajectory inst = instantaneous_frames(h, grid);
    const FrameTrajectory sa = superadiabatic_frames(h, cfg.order, grid);

    const std::size_t rk_nodes = (grid.count - 1) / 2 + 1;  // nodes visited by RK4 with step 2h
    const std::size_t every = std::max<std::size_t>(1, (rk_nodes + cfg.max_rows - 1) / cfg.max_rows);

    Fig1Result res;
    const auto bloch_of = [](const Vector& psi) { return bloch_vector(psi * psi.adjoint()); };
    const auto dist = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
    };
    std::size_t visit = 0;
    const auto observe = [&](double t, const StateVector& psi) {
        const std::size_t k = grid.nearest(t);
        const auto bi = bloch_of(inst.basis(k).col(0));
        const auto bs = bloch_of(sa.basis(k).col(0));
        const auto be = bloch_of(psi);
        res.max_dev_superadiabatic = std::max(res.max_dev_superadiabatic, dist(be, bs));
        res.max_dev_instantaneous = std::max(res.max_dev_instantaneous, dist(be, bi));
        if (visit++ % every == 0 || k == grid.count - 1) {
            res.instantaneous.t.push_back(t);
            res.instantaneous.xyz.push_back(bi);
            res.superadiabatic.t.push_back(t);
            res.superadiabatic.xyz.push_back(bs);
            res.evolved.t.push_back(t);
            res.evolved.xyz.push_back(be);
        }
    };
    IntegratorConfig icfg;
    icfg.method = IntegratorConfig::Method::Rk4;
    icfg.fixed_step = 2.0 * grid.step;
    evolve_unitary(h, inst.basis(0).col(0), grid.start, grid.stop(), icfg, observe);
    return res;
}

void write_bloch_csv(std::ostream& out, const BlochPath& path, const std::string& label, const Fig1Config& cfg) {
    out << "# superlind Bloch path\n";
    out << "# path = " << label << "\n";
    out << "# delta = " << num(cfg.gap) << "\n";
    out << "# inv_v = " << num(cfg.inv_v) << "\n";
    out << "# window = " << num(cfg.window) << "\n";
    out << "# order = " << cfg.order << "\n";
    out << "# bloch_convention = x = 2 Re rho01, y = 2 Im rho10, z = rho00 - rho11\n";
    out << "t,x,y,z\n";
    for (std::size_t i = 0; i < path.t.size(); ++i) {
        out << num(path.t[i]) << ',' << num(path.xyz[i][0]) << ',' << num(path.xyz[i][1]) << ','
            << num(path.xyz[i][2]) << '\n';
    }
}

void write_frames_csv(std::ostream& out, const FrameTrajectory& traj, std::size_t every) {
    every = std::max<std::size_t>(every, 1);
    const bool two = traj.dimension() == 2;
    out << "# superlind frame trajectory\n";
    out << "# order = " << traj.order() << "\n";
    out << "# grid_step = " << num(traj.grid().step) << "\n";
    if (two) out << "# bloch_convention = x = 2 Re rho01, y = 2 Im rho10, z = rho00 - rho11\n";
    out << (two ? "t,order,alpha,E,x,y,z\n" : "t,order,alpha,E\n");
    for (std::size_t k = 0; k < traj.size(); k += every) {
        const auto u = traj.basis(k);
        const auto e = traj.energies(k);
        for (Eigen::Index a = 0; a < traj.dimension(); ++a) {
            out << num(traj.grid().at(k)) << ',' << traj.order() << ',' << a << ',' << num(e(a));
            if (two) {
                const Vector psi = u.col(a);
                const auto b = bloch_vector(psi * psi.adjoint());
                out << ',' << num(b[0]) << ',' << num(b[1]) << ',' << num(b[2]);
            }
            out << '\n';
        }
    }
}

void write_spectrum_csv(std::ostream& out, const BathSpectrum& spectrum, double wmin, double wmax,
                        std::size_t n) {
    if (n < 1 || wmax < wmin) {
        throw Error(ErrorKind::Validation, "spectrum grid needs n >= 1 and wmax >= wmin");
    }
    out << "# superlind bath spectrum\n";
    out << "# kind = " << to_string(spectrum.kind()) << "\n";
    out << "# gamma0 = " << num(spectrum.gamma0()) << "\n";
    out << "# cutoff = " << num(spectrum.cutoff()) << "\n";
    out << "# temperature = " << num(spectrum.temperature()) << "\n";
    out << "# cutoff_convention = "
        << (spectrum.cutoff_convention() == CutoffConvention::Literal ? "literal" : "symmetric") << "\n";
    out << "omega,gamma\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double w = n == 1 ? wmin : wmin + (wmax - wmin) * static_cast<double>(i) / static_cast<double>(n - 1);
        out << num(w) << ',' << num(spectrum.rate(w)) << '\n';
    }
}

} // namespace superlind
