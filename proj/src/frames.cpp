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

#include "superlind/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "superlind/error.hpp"

namespace superlind {

namespace {

using ConstMap = Eigen::Map<const Matrix>;
using MutMap = Eigen::Map<Matrix>;

// Multiplies each column so its largest-magnitude component is real positive.
void fix_initial_gauge(Eigen::Ref<Matrix> u) {
    for (Eigen::Index a = 0; a < u.cols(); ++a) {
        Eigen::Index imax = 0;
        u.col(a).cwiseAbs().maxCoeff(&imax);
        const Complex c = u(imax, a);
        u.col(a) *= std::conj(c) / std::abs(c);
    }
}

// Aligns the columns of `cur` to `prev`; returns the smallest |overlap|^2.
double align_columns(const Eigen::Ref<const Matrix>& prev, Eigen::Ref<Matrix> cur, double t) {
    double worst = 1.0;
    for (Eigen::Index a = 0; a < cur.cols(); ++a) {
        const Complex o = prev.col(a).dot(cur.col(a));
        const double mag = std::abs(o);
        if (mag < 0.5) {
            std::ostringstream os;
            os << "frame overlap |<prev|cur>| = " << mag << " for state " << a << " at t=" << t
               << " (grid too coarse or level crossing)";
            throw Error(ErrorKind::GridTooCoarse, os.str());
        }
        cur.col(a) *= std::conj(o) / mag;
        worst = std::min(worst, mag * mag);
    }
    return worst;
}

void require_overlap(double overlap2, double t) {
    if (overlap2 <= 0.99) {
        std::ostringstream os;
        os << "adjacent frame overlap " << overlap2 << " <= 0.99 at t=" << t << "; refine the grid";
        throw Error(ErrorKind::GridTooCoarse, os.str());
    }
}

double min_gap(const RealVector& e) {
    double g = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < e.size(); ++i) {
        g = std::min(g, e(i) - e(i - 1));
    }
    return g;
}

void require_gap(double gap, double tol, double t) {
    if (!(gap > tol)) {
        std::ostringstream os;
        os << "near-degenerate spectrum (gap " << gap << ") at t=" << t;
        throw Error(ErrorKind::Degeneracy, os.str());
    }
}

// Five-point first derivative of the matrix sequence `data` at node k using
// nodes spaced `stride` apart.
Matrix stencil_derivative(const std::vector<Complex>& data, std::size_t count, Eigen::Index n,
                          std::size_t k, std::size_t stride, double step) {
    const auto at = [&](std::size_t i) {
        return ConstMap(data.data() + i * static_cast<std::size_t>(n * n), n, n);
    };
    const std::size_t m = stride;
    const double s = static_cast<double>(m) * step;
    if (k >= 2 * m && k + 2 * m < count) {
        return (at(k - 2 * m) - 8.0 * at(k - m) + 8.0 * at(k + m) - at(k + 2 * m)) / (12.0 * s);
    }
    if (k + 4 * m < count) {
        return (-25.0 * at(k) + 48.0 * at(k + m) - 36.0 * at(k + 2 * m) + 16.0 * at(k + 3 * m) -
                3.0 * at(k + 4 * m)) /
               (12.0 * s);
    }
    return (25.0 * at(k) - 48.0 * at(k - m) + 36.0 * at(k - 2 * m) - 16.0 * at(k - 3 * m) +
            3.0 * at(k - 4 * m)) /
           (12.0 * s);
}

// Every node needs a central or one-sided stencil: count >= 6 * stride + 1.
std::size_t clamp_stride(std::size_t stride, std::size_t count) {
    const std::size_t cap = (count - 1) / 6;
    return std::clamp<std::size_t>(stride, 1, std::max<std::size_t>(cap, 1));
}

} // namespace

TimeGrid TimeGrid::spanning(double t0, double t1, std::size_t intervals) {
    if (!(t1 > t0) || intervals == 0) {
        throw Error(ErrorKind::ParameterDomain, "grid needs t1 > t0 and at least one interval");
    }
    TimeGrid g;
    g.start = t0;
    g.step = (t1 - t0) / static_cast<double>(intervals);
    g.count = intervals + 1;
    return g;
}

bool TimeGrid::contains(double t) const noexcept {
    return count > 0 && t >= start - 0.5 * step && t <= stop() + 0.5 * step;
}

std::size_t TimeGrid::nearest(double t) const {
    if (!contains(t)) {
        std::ostringstream os;
        os << "t=" << t << " lies outside the frame grid [" << start << ", " << stop() << "]";
        throw Error(ErrorKind::OutOfGrid, os.str());
    }
    const double x = std::round((t - start) / step);
    return std::min<std::size_t>(count - 1, static_cast<std::size_t>(std::max(0.0, x)));
}

void TimeGrid::validate() const {
    if (count < 7 || !(step > 0.0) || !std::isfinite(step) || !std::isfinite(start)) {
        throw Error(ErrorKind::ParameterDomain, "time grid needs step > 0 and at least 7 nodes");
    }
}

TimeGrid auto_grid(const TimeDependentHamiltonian& h, double t0, double t1) {
    if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
        throw Error(ErrorKind::ParameterDomain, "auto_grid needs a finite window with t1 > t0");
    }
    constexpr std::size_t kSamples = 2048;
    const double ds = (t1 - t0) / static_cast<double>(kSamples);
    double spread = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    double rate = 0.0;
    Matrix prev;
    for (std::size_t i = 0; i <= kSamples; ++i) {
        const Matrix hm = h(t0 + static_cast<double>(i) * ds);
        Eigen::SelfAdjointEigenSolver<Matrix> es(hm, Eigen::EigenvaluesOnly);
        const RealVector& e = es.eigenvalues();
        spread = std::max(spread, e(e.size() - 1) - e(0));
        gap = std::min(gap, min_gap(e));
        if (i > 0) {
            Eigen::SelfAdjointEigenSolver<Matrix> ds_es(hm - prev, Eigen::EigenvaluesOnly);
            rate = std::max(rate, ds_es.eigenvalues().cwiseAbs().maxCoeff() / ds);
        }
        prev = hm;
    }
    require_gap(gap, 1e-9 * spread, t0);

    double step = (t1 - t0) / 16.0;
    if (rate > 0.0) step = std::min(step, 0.01 * gap / rate);
    if (spread > 0.0) step = std::min(step, 0.04 / spread);

    // Refine until sampled adjacent eigenvectors overlap by more than 0.999.
    for (int refine = 0; refine < 40; ++refine) {
        bool ok = true;
        for (std::size_t i = 0; i < kSamples && ok; i += 8) {
            const double t = t0 + static_cast<double>(i) * ds;
            Eigen::SelfAdjointEigenSolver<Matrix> a(h(t));
            Eigen::SelfAdjointEigenSolver<Matrix> b(h(std::min(t + step, t1)));
            for (Eigen::Index c = 0; c < a.eigenvectors().cols(); ++c) {
                if (std::norm(a.eigenvectors().col(c).dot(b.eigenvectors().col(c))) <= 0.999) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) break;
        step *= 0.5;
    }

    auto intervals = static_cast<std::size_t>(std::ceil((t1 - t0) / step));
    intervals = std::max<std::size_t>(intervals, 6);
    if (intervals % 2 != 0) ++intervals;
    return TimeGrid::spanning(t0, t1, intervals);
}

Frame smooth_gauge(const Frame& prev, const Frame& cur) {
    if (prev.basis.rows() != cur.basis.rows() || prev.basis.cols() != cur.basis.cols()) {
        throw Error(ErrorKind::Dimension, "smooth_gauge: frames have different dimensions");
    }
    Frame out = cur;
    align_columns(prev.basis, out.basis, cur.time);
    return out;
}

FrameTrajectory::FrameTrajectory(TimeDependentHamiltonian h, TimeGrid grid, int order,
                                 std::size_t derivative_stride, std::vector<Complex> bases,
                                 std::vector<double> energies)
    : h_(std::move(h)),
      grid_(grid),
      order_(order),
      dim_(h_.dimension()),
      stride_(derivative_stride),
      bases_(std::move(bases)),
      energies_(std::move(energies)) {
    const auto n = static_cast<std::size_t>(dim_);
    if (bases_.size() != grid_.count * n * n || energies_.size() != grid_.count * n) {
        throw Error(ErrorKind::Dimension, "frame storage does not match grid and dimension");
    }
}

Frame FrameTrajectory::frame(std::size_t k) const {
    return Frame{grid_.at(k), order_, basis(k), energies(k)};
}

FrameTrajectory FrameTrajectory::with_phases(const std::vector<double>& phases) const {
    const auto n = static_cast<std::size_t>(dim_);
    if (phases.size() != grid_.count * n) {
        throw Error(ErrorKind::Dimension, "with_phases: need one phase per node and state");
    }
    std::vector<Complex> b = bases_;
    for (std::size_t k = 0; k < grid_.count; ++k) {
        MutMap u(b.data() + k * n * n, dim_, dim_);
        for (std::size_t a = 0; a < n; ++a) {
            u.col(static_cast<Eigen::Index>(a)) *= std::polar(1.0, phases[k * n + a]);
        }
    }
    return FrameTrajectory(h_, grid_, order_, stride_, std::move(b), energies_);
}

FrameTrajectory instantaneous_frames(const TimeDependentHamiltonian& h, const TimeGrid& grid,
                                     const FrameOptions& options) {
    grid.validate();
    const Eigen::Index n = h.dimension();
    const auto nn = static_cast<std::size_t>(n * n);
    const std::size_t count = grid.count;
    std::vector<Complex> bases(count * nn);
    std::vector<double> energies(count * static_cast<std::size_t>(n));
    std::vector<double> gaps(count);

    double spread = 0.0;
    double rate = 0.0;
    Matrix prev_h;
    for (std::size_t k = 0; k < count; ++k) {
        const Matrix hk = h(grid.at(k));
        Eigen::SelfAdjointEigenSolver<Matrix> es(hk);
        MutMap(bases.data() + k * nn, n, n) = es.eigenvectors();
        Eigen::Map<RealVector>(energies.data() + k * static_cast<std::size_t>(n), n) = es.eigenvalues();
        const RealVector& e = es.eigenvalues();
        spread = std::max(spread, e(n - 1) - e(0));
        gaps[k] = min_gap(e);
        if (k > 0) rate = std::max(rate, (hk - prev_h).norm() / grid.step);
        prev_h = hk;
    }
    const double tol = options.relative_gap_tolerance * spread;
    for (std::size_t k = 0; k < count; ++k) {
        require_gap(gaps[k], tol, grid.at(k));
    }

    fix_initial_gauge(MutMap(bases.data(), n, n));
    for (std::size_t k = 1; k < count; ++k) {
        const double o = align_columns(ConstMap(bases.data() + (k - 1) * nn, n, n),
                                       MutMap(bases.data() + k * nn, n, n), grid.at(k));
        require_overlap(o, grid.at(k));
    }

    std::size_t stride = options.derivative_stride;
    if (stride == 0) {
        const double min_gap_all = *std::min_element(gaps.begin(), gaps.end());
        // a static Hamiltonian gets the widest stencil
        stride = rate > 0.0 ? static_cast<std::size_t>(std::llround(0.005 * min_gap_all / rate / grid.step)) : count;
    }
    stride = clamp_stride(stride, count);
    return FrameTrajectory(h, grid, 0, stride, std::move(bases), std::move(energies));
}

FrameTrajectory superadiabatic_frames(const TimeDependentHamiltonian& h, int order, const TimeGrid& grid,
                                      const FrameOptions& options) {
    if (order < 0) {
        throw Error(ErrorKind::ParameterDomain, "super-adiabatic order must be >= 0");
    }
    if (order > kMaxSuperadiabaticOrder) {
        std::ostringstream os;
        os << "super-adiabatic order " << order << " exceeds the cap " << kMaxSuperadiabaticOrder;
        throw Error(ErrorKind::OrderCap, os.str());
    }
    FrameTrajectory base = instantaneous_frames(h, grid, options);
    if (order == 0) return base;

    const Eigen::Index n = h.dimension();
    const auto nn = static_cast<std::size_t>(n * n);
    const auto ns = static_cast<std::size_t>(n);
    const std::size_t count = grid.count;
    const std::size_t stride = base.derivative_stride();

    std::vector<Complex> lab = base.raw_bases();
    std::vector<Complex> rot = lab;
    std::vector<double> levels = base.raw_energies();

    double spread = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        spread = std::max(spread, levels[k * ns + ns - 1] - levels[k * ns]);
    }
    const double tol = options.relative_gap_tolerance * spread;

    std::vector<Complex> next_rot(count * nn);
    std::vector<double> next_levels(count * ns);
    Eigen::SelfAdjointEigenSolver<Matrix> es(n);
    for (int level = 1; level <= order; ++level) {
        for (std::size_t k = 0; k < count; ++k) {
            const ConstMap v(rot.data() + k * nn, n, n);
            Matrix coupling = v.adjoint() * stencil_derivative(rot, count, n, k, stride, grid.step);
            coupling.diagonal().setZero();
            Matrix hf = -kI * coupling;
            hf.diagonal() += Eigen::Map<const RealVector>(levels.data() + k * ns, n).cast<Complex>();
            hf = 0.5 * (hf + hf.adjoint()).eval();
            es.compute(hf);
            const double t = grid.at(k);
            require_gap(min_gap(es.eigenvalues()), tol, t);

            MutMap w(next_rot.data() + k * nn, n, n);
            w = es.eigenvectors();
            if (k == 0) {
                for (Eigen::Index a = 0; a < n; ++a) {
                    const Complex c = w(a, a);
                    if (std::abs(c) > 1e-3) {
                        w.col(a) *= std::conj(c) / std::abs(c);
                    } else {
                        fix_initial_gauge(w.col(a));
                    }
                }
            } else {
                align_columns(ConstMap(next_rot.data() + (k - 1) * nn, n, n), w, t);
            }
            Eigen::Map<RealVector>(next_levels.data() + k * ns, n) = es.eigenvalues();
            MutMap u(lab.data() + k * nn, n, n);
            u = (u * w).eval();
        }
        std::swap(rot, next_rot);
        std::swap(levels, next_levels);
    }

    // Lab-frame gauge sweep, quasi-energies against the original H(t), and
    // ascending order.
    std::vector<double> energies(count * ns);
    std::vector<Eigen::Index> perm(ns);
    for (std::size_t k = 0; k < count; ++k) {
        MutMap u(lab.data() + k * nn, n, n);
        const double t = grid.at(k);
        const Matrix hk = h(t);
        RealVector e(n);
        for (Eigen::Index a = 0; a < n; ++a) {
            e(a) = u.col(a).dot(hk * u.col(a)).real();
        }
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index x, Eigen::Index y) { return e(x) < e(y); });
        if (!std::is_sorted(e.data(), e.data() + n)) {
            Matrix sorted(n, n);
            RealVector es_sorted(n);
            for (Eigen::Index a = 0; a < n; ++a) {
                sorted.col(a) = u.col(perm[static_cast<std::size_t>(a)]);
                es_sorted(a) = e(perm[static_cast<std::size_t>(a)]);
            }
            u = sorted;
            e = es_sorted;
        }
        Eigen::Map<RealVector>(energies.data() + k * ns, n) = e;
        if (k == 0) {
            fix_initial_gauge(u);
        } else {
            const double o = align_columns(ConstMap(lab.data() + (k - 1) * nn, n, n), u, t);
            require_overlap(o, t);
        }
    }
    return FrameTrajectory(h, grid, order, stride, std::move(lab), std::move(energies));
}

Matrix frame_couplings(const FrameTrajectory& traj, std::size_t k) {
    if (k >= traj.size()) {
        throw Error(ErrorKind::OutOfGrid, "frame_couplings: node index out of range");
    }
    const Matrix d = stencil_derivative(traj.raw_bases(), traj.size(), traj.dimension(), k,
                                        traj.derivative_stride(), traj.grid().step);
    return traj.basis(k).adjoint() * d;
}

double adiabatic_parameter(const FrameTrajectory& traj, std::size_t k) {
    const Matrix c = frame_couplings(traj, k);
    const auto e = traj.energies(k);
    double best = 0.0;
    for (Eigen::Index a = 0; a < c.rows(); ++a) {
        for (Eigen::Index b = 0; b < c.cols(); ++b) {
            if (a == b) continue;
            const double de = std::abs(e(a) - e(b));
            if (!(de > 0.0)) {
                std::ostringstream os;
                os << "degenerate pair (" << a << ", " << b << ") at t=" << traj.grid().at(k);
                throw Error(ErrorKind::Degeneracy, os.str());
            }
            best = std::max(best, std::abs(c(a, b)) / de);
        }
    }
    return best;
}

AdiabaticReport adiabatic_report(const FrameTrajectory& traj, int max_order) {
    AdiabaticReport r;
    r.samples.resize(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        r.samples[k] = adiabatic_parameter(traj, k);
        if (r.samples[k] > r.global) {
            r.global = r.samples[k];
            r.argmax = k;
        }
    }
    if (r.global > 0.0) {
        const double j = std::round(1.0 / r.global);
        r.recommended_order = static_cast<int>(std::clamp(j, 0.0, static_cast<double>(max_order)));
    }
    return r;
}

} // namespace superlind
