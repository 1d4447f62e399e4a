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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "superlind/config.hpp"
#include "superlind/error.hpp"
#include "superlind/experiments.hpp"
#include "superlind/frames.hpp"
#include "superlind/generator.hpp"
#include "superlind/model.hpp"
#include "superlind/propagation.hpp"

namespace py = pybind11;
using namespace superlind;

namespace {

// Python callables are shared behind a GIL-aware deleter so C++ copies never
// touch reference counts.
TimeDependentHamiltonian from_callable(Eigen::Index dim, py::function fn) {
    std::shared_ptr<py::function> held(new py::function(std::move(fn)), [](py::function* f) {
        py::gil_scoped_acquire gil;
        delete f;
    });
    return TimeDependentHamiltonian(dim, [held](double t) {
        py::gil_scoped_acquire gil;
        return (*held)(t).cast<Matrix>();
    });
}

std::shared_ptr<const FrameTrajectory> share(FrameTrajectory f) {
    return std::make_shared<const FrameTrajectory>(std::move(f));
}

py::dict record_dict(const SweepRecord& r) {
    py::dict d;
    d["inv_v"] = r.inv_v;
    d["p_ge"] = r.p_ge;
    d["p_ge_stderr"] = r.p_ge_stderr;
    d["mode"] = to_string(r.mode);
    d["bath"] = to_string(r.bath);
    d["gamma0"] = r.gamma0;
    d["temperature"] = r.temperature;
    d["order"] = r.order;
    d["trace_error"] = r.trace_error;
    d["hermiticity_error"] = r.hermiticity_error;
    d["min_eigenvalue"] = r.min_eigenvalue;
    d["adiabatic"] = r.adiabatic;
    d["warnings"] = r.warnings;
    return d;
}

ConfigFile config_from(const py::object& cfg) {
    if (py::isinstance<py::str>(cfg)) return ConfigFile::parse_string(cfg.cast<std::string>());
    ConfigFile file;
    for (const auto& item : cfg.cast<py::dict>()) {
        const auto key = item.first.cast<std::string>();
        const py::handle value = item.second;
        if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
            std::string joined;
            for (const auto& x : value) joined += (joined.empty() ? "" : ", ") + py::str(x).cast<std::string>();
            file.set(key, joined);
        } else if (py::isinstance<py::bool_>(value)) {
            file.set(key, value.cast<bool>() ? "true" : "false");
        } else {
            file.set(key, py::str(value).cast<std::string>());
        }
    }
    return file;
}

py::dict bloch_dict(const BlochPath& p) {
    py::dict d;
    d["t"] = p.t;
    d["xyz"] = p.xyz;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Secular Lindblad dynamics in super-adiabatic frames";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
            PyErr_SetString(error.ptr(), msg.c_str());
        }
    });

    py::class_<TimeDependentHamiltonian>(m, "Hamiltonian")
        .def(py::init(&from_callable), py::arg("dimension"), py::arg("fn"))
        .def_static("constant", &TimeDependentHamiltonian::constant, py::arg("h"))
        .def_property_readonly("dimension", &TimeDependentHamiltonian::dimension)
        .def("__call__", &TimeDependentHamiltonian::operator(), py::arg("t"));

    m.def("lz_hamiltonian", [](double v, double gap) { return lz_hamiltonian({v, gap}); }, py::arg("velocity"),
          py::arg("gap") = 1.0);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def_static("spanning", &TimeGrid::spanning, py::arg("t0"), py::arg("t1"), py::arg("intervals"))
        .def_readonly("start", &TimeGrid::start)
        .def_readonly("step", &TimeGrid::step)
        .def_readonly("count", &TimeGrid::count)
        .def("at", &TimeGrid::at)
        .def("stop", &TimeGrid::stop)
        .def("nearest", &TimeGrid::nearest)
        .def("__repr__", [](const TimeGrid& g) {
            std::ostringstream os;
            os << "TimeGrid(start=" << g.start << ", step=" << g.step << ", count=" << g.count << ")";
            return os.str();
        });
    m.def("auto_grid", &auto_grid, py::arg("h"), py::arg("t0"), py::arg("t1"));

    py::class_<FrameTrajectory, std::shared_ptr<FrameTrajectory>>(m, "FrameTrajectory")
        .def_property_readonly("order", &FrameTrajectory::order)
        .def_property_readonly("grid", &FrameTrajectory::grid)
        .def_property_readonly("dimension", &FrameTrajectory::dimension)
        .def_property_readonly("derivative_stride", &FrameTrajectory::derivative_stride)
        .def("__len__", &FrameTrajectory::size)
        .def("basis", [](const FrameTrajectory& f, std::size_t k) { return Matrix(f.basis(k)); })
        .def("energies", [](const FrameTrajectory& f, std::size_t k) { return RealVector(f.energies(k)); })
        .def("couplings", [](const FrameTrajectory& f, std::size_t k) { return frame_couplings(f, k); })
        .def("adiabatic_parameter", [](const FrameTrajectory& f, std::size_t k) { return adiabatic_parameter(f, k); });

    m.def(
        "instantaneous_frames",
        [](const TimeDependentHamiltonian& h, const TimeGrid& g) {
            return std::make_shared<FrameTrajectory>(instantaneous_frames(h, g));
        },
        py::arg("h"), py::arg("grid"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "superadiabatic_frames",
        [](const TimeDependentHamiltonian& h, int order, const TimeGrid& g) {
            return std::make_shared<FrameTrajectory>(superadiabatic_frames(h, order, g));
        },
        py::arg("h"), py::arg("order"), py::arg("grid"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "adiabatic_report",
        [](const FrameTrajectory& f) {
            const AdiabaticReport r = adiabatic_report(f);
            py::dict d;
            d["global"] = r.global;
            d["argmax"] = r.argmax;
            d["recommended_order"] = r.recommended_order;
            d["samples"] = r.samples;
            return d;
        },
        py::arg("frames"));
    m.def(
        "residual_oscillation_scan",
        [](const TimeDependentHamiltonian& h, const TimeGrid& g, int max_order) {
            return residual_oscillation_scan(h, g, max_order);
        },
        py::arg("h"), py::arg("grid"), py::arg("max_order"), py::call_guard<py::gil_scoped_release>());

    py::class_<BathSpectrum>(m, "BathSpectrum")
        .def("rate", &BathSpectrum::rate, py::arg("omega"))
        .def("__call__", &BathSpectrum::rate, py::arg("omega"))
        .def_property_readonly("kind", [](const BathSpectrum& s) { return to_string(s.kind()); })
        .def_property_readonly("gamma0", &BathSpectrum::gamma0)
        .def_property_readonly("cutoff", &BathSpectrum::cutoff)
        .def_property_readonly("temperature", &BathSpectrum::temperature);
    m.def(
        "ohmic_spectrum",
        [](double g0, double wc, double T, bool symmetric) {
            return ohmic_spectrum(g0, wc, T, symmetric ? CutoffConvention::Symmetric : CutoffConvention::Literal);
        },
        py::arg("gamma0"), py::arg("cutoff"), py::arg("temperature"), py::arg("symmetric_cutoff") = false);
    m.def("dephasing_spectrum", &dephasing_spectrum, py::arg("gamma0"));

    py::class_<LindbladGenerator>(m, "LindbladGenerator")
        .def(py::init([](const TimeDependentHamiltonian& h, std::shared_ptr<FrameTrajectory> f, const Matrix& a,
                         const BathSpectrum& s, bool lamb_shift) {
                 return LindbladGenerator(h, std::move(f), CouplingOperator(a), s, lamb_shift);
             }),
             py::arg("h"), py::arg("frames"), py::arg("coupling"), py::arg("spectrum"), py::arg("lamb_shift") = false)
        .def("rhs", &LindbladGenerator::me_rhs, py::arg("rho"), py::arg("t"))
        .def("instantaneous_mode", &LindbladGenerator::instantaneous_mode)
        .def("lindblad_ops", [](const LindbladGenerator& g, double t) {
            const LindbladOps ops = g.lindblad_ops(t);
            py::list jumps;
            for (const auto& tr : ops.transitions) {
                py::dict d;
                d["to"] = tr.to;
                d["from"] = tr.from;
                d["frequency"] = tr.frequency;
                d["rate"] = tr.rate;
                d["op"] = tr.op;
                jumps.append(d);
            }
            py::dict d;
            d["dephasing"] = ops.dephasing;
            d["transitions"] = jumps;
            d["lamb_shift"] = ops.lamb_shift;
            return d;
        });

    m.def(
        "evolve_unitary",
        [](const TimeDependentHamiltonian& h, const StateVector& psi0, double t0, double t1, double rk4_step) {
            IntegratorConfig cfg;
            if (rk4_step > 0.0) {
                cfg.method = IntegratorConfig::Method::Rk4;
                cfg.fixed_step = rk4_step;
            }
            return evolve_unitary(h, psi0, t0, t1, cfg);
        },
        py::arg("h"), py::arg("psi0"), py::arg("t0"), py::arg("t1"), py::arg("rk4_step") = 0.0,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "evolve_lindblad",
        [](const LindbladGenerator& g, const DensityMatrix& rho0, double t0, double t1, bool adaptive) {
            IntegratorConfig cfg;
            if (adaptive) cfg.method = IntegratorConfig::Method::Adaptive;
            LindbladResult r;
            {
                py::gil_scoped_release nogil;
                r = evolve_lindblad(g, rho0, t0, t1, cfg);
            }
            py::dict d;
            d["rho"] = r.rho;
            d["max_trace_error"] = r.max_trace_error;
            d["max_hermiticity_error"] = r.max_hermiticity_error;
            d["min_eigenvalue"] = r.min_eigenvalue;
            d["steps"] = r.steps;
            return d;
        },
        py::arg("generator"), py::arg("rho0"), py::arg("t0"), py::arg("t1"), py::arg("adaptive") = false);
    m.def(
        "evolve_trajectories",
        [](const LindbladGenerator& g, const StateVector& psi0, double t0, double t1, std::size_t count,
           std::uint64_t seed, unsigned threads) {
            TrajectoryConfig tc;
            tc.count = count;
            tc.seed = seed;
            tc.threads = threads;
            TrajectoryResult r;
            {
                py::gil_scoped_release nogil;
                r = evolve_trajectories(g, psi0, t0, t1, tc);
            }
            return r.rho;
        },
        py::arg("generator"), py::arg("psi0"), py::arg("t0"), py::arg("t1"), py::arg("count"), py::arg("seed") = 1,
        py::arg("threads") = 0);
    m.def("bloch_vector", &bloch_vector, py::arg("rho"));

    m.def("closed_lz_oracle", &closed_lz_oracle, py::arg("gap"), py::arg("velocity"));
    m.def(
        "sweep",
        [](const py::object& cfg) {
            const SweepConfig c = SweepConfig::from_config(config_from(cfg));
            std::vector<SweepRecord> records;
            {
                py::gil_scoped_release nogil;
                records = run_lz_sweep(c);
            }
            py::list out;
            for (const auto& r : records) out.append(record_dict(r));
            return out;
        },
        py::arg("config"), "Run a Landau-Zener sweep. `config` is config-file text or a {'section.key': value} dict.");
    m.def(
        "sweep_csv",
        [](const py::object& cfg) {
            const SweepConfig c = SweepConfig::from_config(config_from(cfg));
            py::gil_scoped_release nogil;
            std::ostringstream out;
            write_sweep_csv(out, c, run_lz_sweep(c));
            return out.str();
        },
        py::arg("config"));
    m.def(
        "fig1",
        [](const py::object& cfg) {
            const Fig1Config c = Fig1Config::from_config(config_from(cfg));
            Fig1Result r;
            {
                py::gil_scoped_release nogil;
                r = run_fig1(c);
            }
            py::dict d;
            d["instantaneous"] = bloch_dict(r.instantaneous);
            d["superadiabatic"] = bloch_dict(r.superadiabatic);
            d["evolved"] = bloch_dict(r.evolved);
            d["max_dev_superadiabatic"] = r.max_dev_superadiabatic;
            d["max_dev_instantaneous"] = r.max_dev_instantaneous;
            return d;
        },
        py::arg("config"));
    m.def("check", [] {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& c : run_invariant_checks()) out.emplace_back(c.name, c.passed, c.detail);
        return out;
    });
}
