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

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "superlind/error.hpp"
#include "superlind/experiments.hpp"

using namespace superlind;

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

std::string replace_extension(const std::string& path, const std::string& ext) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
    return path.substr(0, dot) + ext;
}

ConfigFile load_with_overrides(const std::string& path, const std::vector<std::string>& overrides) {
    ConfigFile cfg = ConfigFile::load(path);
    for (const auto& o : overrides) cfg.apply_override(o);
    return cfg;
}

struct SweepArgs {
    std::string config;
    std::vector<std::string> overrides;
    std::string output;
    std::string inv_v;
    std::string mode;
    std::string solver;
    int order{-1};
    long trajectories{0};
    long seed{-1};
    unsigned threads{0};
    bool dat{false};
    bool timestamp{false};
};

int run_sweep(const SweepArgs& a) {
    ConfigFile file = load_with_overrides(a.config, a.overrides);
    if (!a.output.empty()) file.set("output.path", a.output);
    if (!a.inv_v.empty()) file.set("model.inv_v", a.inv_v);
    if (!a.mode.empty()) file.set("basis.mode", a.mode);
    if (!a.solver.empty()) file.set("solver.method", a.solver);
    if (a.order >= 0) file.set("basis.order", std::to_string(a.order));
    if (a.trajectories > 0) file.set("solver.trajectories", std::to_string(a.trajectories));
    if (a.seed >= 0) file.set("solver.seed", std::to_string(a.seed));
    if (a.threads > 0) file.set("solver.threads", std::to_string(a.threads));
    if (a.dat) file.set("output.dat", "true");
    const SweepConfig cfg = SweepConfig::from_config(file);

    const auto records = run_lz_sweep(cfg);
    for (const auto& w : sweep_warnings(records)) std::cerr << "warning: " << w << "\n";
    const std::string stamp = a.timestamp ? utc_now() : std::string{};
    if (cfg.output.empty() || cfg.output == "-") {
        write_sweep_csv(std::cout, cfg, records, stamp);
    } else {
        auto out = open_output(cfg.output);
        write_sweep_csv(out, cfg, records, stamp);
        finish_output(out, cfg.output);
        std::cerr << "wrote " << records.size() << " rows to " << cfg.output << "\n";
        if (cfg.emit_dat) {
            const std::string dat = replace_extension(cfg.output, ".dat");
            auto d = open_output(dat);
            write_sweep_dat(d, cfg, records);
            finish_output(d, dat);
        }
    }
    return 0;
}

int run_fig1_cmd(const std::string& config, const std::vector<std::string>& overrides, const std::string& output,
                 bool frames) {
    ConfigFile file = load_with_overrides(config, overrides);
    if (!output.empty()) file.set("output.path", output);
    const Fig1Config cfg = Fig1Config::from_config(file);
    const Fig1Result res = run_fig1(cfg);
    const std::pair<const char*, const BlochPath*> paths[] = {
        {"instantaneous", &res.instantaneous},
        {"superadiabatic", &res.superadiabatic},
        {"evolved", &res.evolved},
    };
    for (const auto& [label, path] : paths) {
        const std::string name = cfg.output + "_" + label + ".csv";
        auto out = open_output(name);
        write_bloch_csv(out, *path, label, cfg);
        finish_output(out, name);
    }
    if (frames) {
        const double v = 1.0 / cfg.inv_v;
        const double half = cfg.window * cfg.gap / v;
        const auto h = lz_hamiltonian({v, cfg.gap});
        const TimeGrid grid = cfg.grid_step > 0.0
                                  ? TimeGrid::spanning(-half, half,
                                                       static_cast<std::size_t>(std::ceil(2.0 * half / cfg.grid_step)))
                                  : auto_grid(h, -half, half);
        const FrameTrajectory traj = superadiabatic_frames(h, cfg.order, grid);
        const std::string name = cfg.output + "_frames.csv";
        auto out = open_output(name);
        write_frames_csv(out, traj, std::max<std::size_t>(1, grid.count / cfg.max_rows));
        finish_output(out, name);
    }
    std::cerr << "max |b_evolved - b_superadiabatic| = " << res.max_dev_superadiabatic << "\n"
              << "max |b_evolved - b_instantaneous|  = " << res.max_dev_instantaneous << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"superlind: secular Lindblad dynamics in super-adiabatic frames"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto* s = app.add_subcommand("sweep", "Landau-Zener transition probability sweep");
    s->add_option("config", sweep.config, "config file")->required();
    s->add_option("--set", sweep.overrides, "override a config key, section.key=value");
    s->add_option("-o,--output", sweep.output, "CSV output path ('-' for stdout)");
    s->add_option("--inv-v", sweep.inv_v, "1/v values, list or start:stop:step");
    s->add_option("--mode", sweep.mode, "superadiabatic, instantaneous, closed (comma list)");
    s->add_option("--order", sweep.order, "super-adiabatic order j");
    s->add_option("--solver", sweep.solver, "me or trajectories");
    s->add_option("--trajectories", sweep.trajectories, "trajectory count");
    s->add_option("--seed", sweep.seed, "trajectory seed");
    s->add_option("--threads", sweep.threads, "worker threads (capped by SUPERLIND_THREADS)");
    s->add_flag("--dat", sweep.dat, "also write a whitespace-separated .dat file");
    s->add_flag("--timestamp", sweep.timestamp, "record the generation time in the metadata block");

    std::string fig1_config;
    std::vector<std::string> fig1_overrides;
    std::string fig1_output;
    bool fig1_frames = false;
    auto* f = app.add_subcommand("fig1", "Bloch paths of instantaneous, super-adiabatic and evolved states");
    f->add_option("config", fig1_config, "config file")->required();
    f->add_option("--set", fig1_overrides, "override a config key, section.key=value");
    f->add_option("-o,--output", fig1_output, "output prefix");
    f->add_flag("--frames", fig1_frames, "also dump the super-adiabatic frame trajectory");

    double gamma0 = 0.0;
    double wc = 5.0;
    double temperature = 0.0;
    double wmin = -5.0;
    double wmax = 5.0;
    std::size_t n = 101;
    std::string convention = "literal";
    std::string spectrum_out;
    bool dephasing = false;
    auto* sp = app.add_subcommand("spectrum", "tabulate the bath rate function gamma(omega)");
    sp->add_option("--gamma0", gamma0, "coupling strength")->required();
    sp->add_option("--wc", wc, "cutoff frequency");
    sp->add_option("--T", temperature, "temperature");
    sp->add_option("--wmin", wmin, "first frequency");
    sp->add_option("--wmax", wmax, "last frequency");
    sp->add_option("--n", n, "number of points");
    sp->add_option("--convention", convention, "literal or symmetric cutoff")
        ->check(CLI::IsMember({"literal", "symmetric"}));
    sp->add_flag("--dephasing", dephasing, "pure dephasing spectrum instead of Ohmic");
    sp->add_option("-o,--output", spectrum_out, "CSV output path (default stdout)");

    auto* c = app.add_subcommand("check", "run the built-in invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(ErrorKind::Usage);
    }

    try {
        if (*s) return run_sweep(sweep);
        if (*f) return run_fig1_cmd(fig1_config, fig1_overrides, fig1_output, fig1_frames);
        if (*sp) {
            const BathSpectrum spec =
                dephasing ? dephasing_spectrum(gamma0)
                          : ohmic_spectrum(gamma0, wc, temperature,
                                           convention == "symmetric" ? CutoffConvention::Symmetric
                                                                     : CutoffConvention::Literal);
            if (spectrum_out.empty() || spectrum_out == "-") {
                write_spectrum_csv(std::cout, spec, wmin, wmax, n);
            } else {
                auto out = open_output(spectrum_out);
                write_spectrum_csv(out, spec, wmin, wmax, n);
                finish_output(out, spectrum_out);
            }
            return 0;
        }
        if (*c) {
            bool ok = true;
            for (const auto& r : run_invariant_checks()) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
                ok = ok && r.passed;
            }
            return ok ? 0 : exit_code(ErrorKind::Validation);
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
