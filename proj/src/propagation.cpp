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

#include "superlind/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "superlind/error.hpp"
#include "superlind/parallel.hpp"

namespace superlind {

namespace {

constexpr double kPositivityLimit = -1e-5;

// Step count for a fixed-step sweep over [t0, t1]; the step is shrunk to fit
// the interval exactly.
std::size_t fixed_steps(double t0, double t1, double dt) {
    const double n = std::ceil((t1 - t0) / dt - 1e-9);
    return static_cast<std::size_t>(std::max(1.0, n));
}

template <class State, class Rhs>
void rk4_step(State& y, double t, double dt, Rhs&& rhs, State& k1, State& k2, State& k3, State& k4, State& tmp) {
    rhs(t, y, k1);
    tmp = y + (0.5 * dt) * k1;
    rhs(t + 0.5 * dt, tmp, k2);
    tmp = y + (0.5 * dt) * k2;
    rhs(t + 0.5 * dt, tmp, k3);
    tmp = y + dt * k3;
    rhs(t + dt, tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class State>
double scaled_error(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0.data()[i]), std::abs(y1.data()[i]));
        e = std::max(e, std::abs(err.data()[i]) / sc);
    }
    return e;
}

// Dormand-Prince 5(4) with standard step control. `accept(t, y)` runs after
// every accepted step and may modify y.
template <class State, class Rhs, class Accept>
std::size_t dopri5(State& y, double t0, double t1, double h_max, double atol, double rtol, Rhs&& rhs,
                   Accept&& accept) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = t1 - t0;
    const double h_min = 1e-12 * std::max(1.0, std::abs(span));
    double h = std::min(h_max, std::max(span / 1000.0, h_min * 10));
    double t = t0;
    State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, tmp = y, y_new = y, err = y;
    rhs(t, y, k1);
    std::size_t steps = 0;
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        tmp = y + h * a21 * k1;
        rhs(t + c2 * h, tmp, k2);
        tmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, tmp, k3);
        tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, tmp, k4);
        tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, tmp, k5);
        tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, tmp, k6);
        y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, y_new, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = scaled_error(err, y, y_new, atol, rtol);
        if (en <= 1.0) {
            t += h;
            y = y_new;
            accept(t, y);
            rhs(t, y, k1);
            ++steps;
            const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            h = std::min(h_max, h * fac);
        } else {
            h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
            if (h < h_min) {
                std::ostringstream os;
                os << "adaptive step underflow at t=" << t << " (h=" << h << ")";
                throw Error(ErrorKind::Stiffness, os.str());
            }
        }
    }
    return steps;
}

void check_interval(double t0, double t1) {
    if (!(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
        throw Error(ErrorKind::ParameterDomain, "evolution needs finite t0 <= t1");
    }
}

double generator_step(const LindbladGenerator& gen, const IntegratorConfig& cfg) {
    return cfg.fixed_step > 0.0 ? cfg.fixed_step : 2.0 * gen.frames().grid().step;
}

} // namespace

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw Error(ErrorKind::ParameterDomain, "integrator tolerances must be > 0");
    }
    if (max_step < 0.0 || fixed_step < 0.0) {
        throw Error(ErrorKind::ParameterDomain, "integrator steps must be >= 0");
    }
}

void TrajectoryConfig::validate() const {
    if (count < 1) {
        throw Error(ErrorKind::ParameterDomain, "trajectory count must be >= 1");
    }
}

std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw Error(ErrorKind::Dimension, "bloch_vector needs a 2x2 density matrix");
    }
    return {2.0 * rho(0, 1).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

void validate_density_matrix(const DensityMatrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) {
        throw Error(ErrorKind::Dimension, "density matrix must be square");
    }
    std::ostringstream os;
    if (hermiticity_error(rho) > 1e-10) {
        os << "density matrix is not Hermitian (error " << hermiticity_error(rho) << ")";
    } else if (std::abs(rho.trace() - 1.0) > 1e-8) {
        os << "density matrix trace " << rho.trace().real() << " != 1";
    } else if (min_eigenvalue(rho) < -1e-7) {
        os << "density matrix has eigenvalue " << min_eigenvalue(rho);
    } else {
        return;
    }
    throw Error(ErrorKind::StateIntegrity, os.str());
}

StateVector evolve_unitary(const TimeDependentHamiltonian& h, const StateVector& psi0, double t0, double t1,
                           const IntegratorConfig& cfg, const StateObserver& observer) {
    cfg.validate();
    check_interval(t0, t1);
    if (psi0.size() != h.dimension()) {
        throw Error(ErrorKind::Dimension, "evolve_unitary: state dimension does not match H");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::StateIntegrity, "evolve_unitary: initial state is not normalized");
    }
    StateVector psi = psi0;
    if (observer) observer(t0, psi);
    if (t1 == t0) return psi;

    const auto rhs = [&h](double t, const StateVector& y, StateVector& dy) { dy.noalias() = -kI * (h(t) * y); };
    const bool fixed = cfg.method == IntegratorConfig::Method::Rk4;
    if (fixed) {
        const double dt = cfg.fixed_step > 0.0 ? cfg.fixed_step : cfg.max_step;
        if (!(dt > 0.0)) {
            throw Error(ErrorKind::ParameterDomain, "RK4 needs fixed_step or max_step > 0");
        }
        const std::size_t n = fixed_steps(t0, t1, dt);
        const double step = (t1 - t0) / static_cast<double>(n);
        StateVector k1 = psi, k2 = psi, k3 = psi, k4 = psi, tmp = psi;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = t0 + static_cast<double>(i) * step;
            rk4_step(psi, t, step, rhs, k1, k2, k3, k4, tmp);
            psi.normalize();
            if (observer) observer(t + step, psi);
        }
        return psi;
    }
    const double h_max = cfg.max_step > 0.0 ? cfg.max_step : (t1 - t0);
    dopri5(psi, t0, t1, h_max, cfg.abs_tol, cfg.rel_tol, rhs, [&](double t, StateVector& y) {
        y.normalize();
        if (observer) observer(t, y);
    });
    return psi;
}

LindbladResult evolve_lindblad(const LindbladGenerator& gen, const DensityMatrix& rho0, double t0, double t1,
                               const IntegratorConfig& cfg, const DensityObserver& observer) {
    cfg.validate();
    check_interval(t0, t1);
    const Eigen::Index n = gen.dimension();
    if (rho0.rows() != n || rho0.cols() != n) {
        throw Error(ErrorKind::Dimension, "evolve_lindblad: density matrix has the wrong shape");
    }
    validate_density_matrix(rho0);
    const TimeGrid& grid = gen.frames().grid();
    grid.nearest(t0);
    grid.nearest(t1);

    LindbladResult res;
    res.rho = rho0;
    res.min_eigenvalue = min_eigenvalue(rho0);
    if (observer) observer(t0, res.rho);
    if (t1 == t0) return res;

    Matrix work(n, n);
    const auto rhs = [&](double t, const Matrix& y, Matrix& dy) {
        gen.rhs_into(y, gen.hamiltonian()(t), gen.node_index(t), dy, work);
    };
    const auto after_step = [&](double t, Matrix& y) {
        res.max_hermiticity_error = std::max(res.max_hermiticity_error, hermiticity_error(y));
        y = (0.5 * (y + y.adjoint())).eval();
        const double tr = y.trace().real();
        res.max_trace_error = std::max(res.max_trace_error, std::abs(tr - 1.0));
        y /= tr;
        const double me = min_eigenvalue(y);
        res.min_eigenvalue = std::min(res.min_eigenvalue, me);
        if (me < kPositivityLimit) {
            std::ostringstream os;
            os << "density matrix eigenvalue " << me << " at t=" << t
               << " (integrator tolerance too loose or generator defect)";
            throw Error(ErrorKind::Positivity, os.str());
        }
        ++res.steps;
        if (observer) observer(t, y);
    };

    if (cfg.method == IntegratorConfig::Method::Adaptive) {
        double h_max = 0.5 * grid.step;
        if (cfg.max_step > 0.0) h_max = std::min(h_max, cfg.max_step);
        dopri5(res.rho, t0, t1, h_max, cfg.abs_tol, cfg.rel_tol, rhs, after_step);
        return res;
    }
    const std::size_t steps = fixed_steps(t0, t1, generator_step(gen, cfg));
    const double step = (t1 - t0) / static_cast<double>(steps);
    Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = t0 + static_cast<double>(i) * step;
        rk4_step(res.rho, t, step, rhs, k1, k2, k3, k4, tmp);
        after_step(t + step, res.rho);
    }
    return res;
}

namespace {

// Per-trajectory drift propagation with H_eff tabulated on the frame nodes.
class JumpPropagator {
public:
    JumpPropagator(const LindbladGenerator& gen, double step) : gen_(gen), n_(gen.dimension()) {
        const TimeGrid& grid = gen.frames().grid();
        const auto nn = static_cast<std::size_t>(n_ * n_);
        auto table = std::make_shared<std::vector<Complex>>(grid.count * nn);
        for (std::size_t k = 0; k < grid.count; ++k) {
            Eigen::Map<Matrix>(table->data() + k * nn, n_, n_) =
                -kI * (gen.hamiltonian()(grid.at(k)) + gen.effective_correction(k));
        }
        heff_ = std::move(table);
        step_ = step;
    }

    // -i H_eff(t) at an exact node, else evaluated directly.
    void rhs(double t, const Vector& y, Vector& dy) const {
        const TimeGrid& grid = gen_.frames().grid();
        const double x = (t - grid.start) / grid.step;
        const double r = std::round(x);
        const std::size_t k = gen_.node_index(t);
        if (std::abs(x - r) < 1e-6) {
            const auto nn = static_cast<std::size_t>(n_ * n_);
            dy.noalias() = Eigen::Map<const Matrix>(heff_->data() + k * nn, n_, n_) * y;
        } else {
            dy.noalias() = -kI * ((gen_.hamiltonian()(t) + gen_.effective_correction(k)) * y);
        }
    }

    void advance(Vector& y, double t, double dt) {
        if (k1_.size() != n_) {
            k1_.resize(n_);
            k2_.resize(n_);
            k3_.resize(n_);
            k4_.resize(n_);
            tmp_.resize(n_);
        }
        rk4_step(y, t, dt, [this](double s, const Vector& a, Vector& b) { rhs(s, a, b); }, k1_, k2_, k3_, k4_,
                 tmp_);
    }

    double step() const noexcept { return step_; }

private:
    const LindbladGenerator& gen_;
    Eigen::Index n_;
    std::shared_ptr<const std::vector<Complex>> heff_;
    double step_{0.0};
    Vector k1_, k2_, k3_, k4_, tmp_;
};

// Applies one jump; returns false when no channel has weight.
bool apply_jump(const LindbladGenerator& gen, double t, Vector& psi, double u, JumpRecord& rec) {
    const Eigen::Index n = gen.dimension();
    const std::size_t k = gen.node_index(t);
    const auto d = gen.node(k);
    const Vector c = d.basis.adjoint() * psi;
    double total = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) total += d.dephasing[a] * d.dephasing[a] * std::norm(c(a));
    const double deph_weight = total;
    for (Eigen::Index to = 0; to < n; ++to) {
        for (Eigen::Index from = 0; from < n; ++from) {
            total += d.rates[to * n + from] * std::norm(c(from));
        }
    }
    if (!(total > 0.0)) return false;
    double target = u * total;
    Vector out = Vector::Zero(n);
    rec.time = t;
    if (target < deph_weight) {
        for (Eigen::Index a = 0; a < n; ++a) out(a) = d.dephasing[a] * c(a);
        rec.dephasing = true;
        rec.to = rec.from = 0;
    } else {
        target -= deph_weight;
        Eigen::Index last_to = 0, last_from = 0;
        bool chosen = false;
        for (Eigen::Index to = 0; to < n && !chosen; ++to) {
            for (Eigen::Index from = 0; from < n; ++from) {
                const double w = d.rates[to * n + from] * std::norm(c(from));
                if (w <= 0.0) continue;
                last_to = to;
                last_from = from;
                if (target < w) {
                    chosen = true;
                    break;
                }
                target -= w;
            }
        }
        out(last_to) = std::sqrt(d.rates[last_to * n + last_from]) * c(last_from);
        rec.dephasing = false;
        rec.to = last_to;
        rec.from = last_from;
    }
    psi = d.basis * out;
    psi.normalize();
    return true;
}

} // namespace

TrajectoryResult evolve_trajectories(const LindbladGenerator& gen, const StateVector& psi0, double t0, double t1,
                                     const TrajectoryConfig& tcfg, const IntegratorConfig& cfg,
                                     const StateVector* probe) {
    tcfg.validate();
    cfg.validate();
    check_interval(t0, t1);
    const Eigen::Index n = gen.dimension();
    if (psi0.size() != n) {
        throw Error(ErrorKind::Dimension, "evolve_trajectories: state dimension does not match H");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::StateIntegrity, "evolve_trajectories: initial state is not normalized");
    }
    if (probe && probe->size() != n) {
        throw Error(ErrorKind::Dimension, "evolve_trajectories: probe dimension does not match H");
    }
    const TimeGrid& grid = gen.frames().grid();
    grid.nearest(t0);
    grid.nearest(t1);

    const std::size_t steps = t1 > t0 ? fixed_steps(t0, t1, generator_step(gen, cfg)) : 0;
    const double step = steps > 0 ? (t1 - t0) / static_cast<double>(steps) : 0.0;
    const JumpPropagator table(gen, step);

    std::vector<Vector> finals(tcfg.count);
    TrajectoryResult res;
    res.jumps.resize(tcfg.record_jumps ? tcfg.count : 0);

    parallel_for(tcfg.count, worker_count(tcfg.threads), [&](std::size_t m) {
        std::seed_seq seq{static_cast<std::uint32_t>(tcfg.seed), static_cast<std::uint32_t>(tcfg.seed >> 32),
                          static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(std::uint64_t{m} >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        JumpPropagator prop = table;
        std::vector<JumpRecord> jumps;

        Vector psi = psi0;
        double threshold = uniform(rng);
        for (std::size_t i = 0; i < steps; ++i) {
            const double ta = t0 + static_cast<double>(i) * step;
            const double tb = ta + step;
            double tcur = ta;
            Vector start = psi;
            Vector end = start;
            prop.advance(end, tcur, tb - tcur);
            while (end.squaredNorm() < threshold) {
                // Bisection for the time where |psi|^2 crosses the threshold.
                double lo = 0.0;
                double hi = tb - tcur;
                while (hi - lo > 1e-3 * step) {
                    const double mid = 0.5 * (lo + hi);
                    Vector probe_state = start;
                    prop.advance(probe_state, tcur, mid);
                    if (probe_state.squaredNorm() < threshold) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                Vector at_jump = start;
                prop.advance(at_jump, tcur, hi);
                tcur += hi;
                JumpRecord rec;
                if (!apply_jump(gen, tcur, at_jump, uniform(rng), rec)) {
                    at_jump.normalize();
                }
                if (tcfg.record_jumps) jumps.push_back(rec);
                threshold = uniform(rng);
                start = at_jump;
                end = start;
                if (tb - tcur > 1e-12 * step) prop.advance(end, tcur, tb - tcur);
            }
            psi = end;
        }
        finals[m] = psi.normalized();
        if (tcfg.record_jumps) res.jumps[m] = std::move(jumps);
    });

    res.rho = Matrix::Zero(n, n);
    for (const Vector& f : finals) res.rho += f * f.adjoint();
    res.rho /= static_cast<double>(tcfg.count);
    if (probe) {
        res.final_populations.reserve(tcfg.count);
        for (const Vector& f : finals) res.final_populations.push_back(std::norm(probe->dot(f)));
    }
    return res;
}

} // namespace superlind
