#include "qmeta/analog.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <unsupported/Eigen/KroneckerProduct>

#include "qmeta/errors.hpp"
#include "qmeta/pauli.hpp"

namespace qmeta {

namespace {

Eigen::Matrix2cd sigma(char axis) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd s;
    switch (axis) {
        case 'x': s << 0, 1, 1, 0; break;
        case 'y': s << 0, -1i, 1i, 0; break;
        case 'z': s << 1, 0, 0, -1; break;
        default: throw DomainError("sigma: bad axis");
    }
    return s;
}

Eigen::MatrixXcd embed(const Eigen::Matrix2cd& u, int n, int qubit) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n; ++q)
        m = Eigen::kroneckerProduct(
                m, q == qubit ? u : Eigen::Matrix2cd::Identity())
                .eval();
    return m;
}

}  // namespace

AnalogProblem::AnalogProblem(
    Eigen::MatrixXcd h0_, Eigen::MatrixXcd hf_, Eigen::VectorXcd psi0_,
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps_)
    : h0(std::move(h0_)), hf(std::move(hf_)), psi0(std::move(psi0_)),
      jumps(std::move(jumps_)) {
    const Eigen::Index dim = h0.rows();
    if (hf.rows() != dim || hf.cols() != dim || h0.cols() != dim)
        throw DimensionError("AnalogProblem: Hamiltonian dimension mismatch");
    if (psi0.size() != dim)
        throw DimensionError("AnalogProblem: initial state dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw PreconditionError("AnalogProblem: psi0 is not normalized");
    for (const auto& [l, g] : jumps) {
        if (l.rows() != dim || l.cols() != dim)
            throw DimensionError("AnalogProblem: jump dimension mismatch");
        if (g < 0.0) throw PreconditionError("AnalogProblem: negative rate");
    }
}

int AnalogProblem::num_qubits() const {
    int n = 0;
    while ((Eigen::Index(1) << n) < h0.rows()) ++n;
    return n;
}

std::vector<std::pair<Eigen::MatrixXcd, double>> pauli_dissipator(
    int n, double gamma_x, double gamma_y, double gamma_z) {
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;
    const struct {
        char axis;
        double rate;
    } parts[] = {{'x', gamma_x}, {'y', gamma_y}, {'z', gamma_z}};
    for (const auto& [axis, rate] : parts) {
        if (rate < 0.0) throw PreconditionError("pauli_dissipator: negative rate");
        if (rate == 0.0) continue;
        for (int q = 0; q < n; ++q)
            jumps.emplace_back(embed(sigma(axis), n, q), rate);
    }
    return jumps;
}

std::function<bool(double)> Trajectory::support_indicator(
    const Eigen::MatrixXcd& pauli, double tol) const {
    // precompute |Tr(P rho)| at the samples; lookup by nearest time
    auto present = std::make_shared<std::vector<bool>>();
    present->reserve(states.size());
    for (const auto& rho : states)
        present->push_back(std::abs((pauli * rho).trace()) > tol);
    const std::vector<double> ts = times;
    return [present, ts](double t) {
        const auto it = std::lower_bound(ts.begin(), ts.end(), t);
        std::size_t i = it == ts.end() ? ts.size() - 1
                                       : std::size_t(it - ts.begin());
        if (i > 0 && (it == ts.end() || t - ts[i - 1] < ts[i] - t)) --i;
        return (*present)[i];
    };
}

Trajectory integrate(const AnalogProblem& problem, const Schedule& schedule,
                     double dt, const IntegrateOptions& opts) {
    const double T = schedule.T();
    if (!(dt > 0.0)) throw DomainError("integrate: dt must be > 0");
    if (dt > T / 100.0)
        throw DomainError("integrate: dt must be at most T/100");

    const Eigen::Index dim = problem.h0.rows();
    Eigen::MatrixXcd rho = problem.psi0 * problem.psi0.adjoint();

    // Diagonal jump operators (dephasing-type) fold into one precomputed
    // elementwise mask: for L = diag(d),
    //   gamma (L r L^+ - 1/2 {L^+L, r})_ij
    //     = gamma (d_i conj(d_j) - (|d_i|^2 + |d_j|^2)/2) r_ij.
    Eigen::MatrixXcd mask = Eigen::MatrixXcd::Zero(dim, dim);
    bool have_mask = false;
    std::vector<std::pair<Eigen::MatrixXcd, double>> general;
    std::vector<Eigen::MatrixXcd> general_ldl;
    for (const auto& [l, g] : problem.jumps) {
        Eigen::MatrixXcd off = l;
        off.diagonal().setZero();
        if (off.cwiseAbs().maxCoeff() == 0.0) {
            const Eigen::VectorXcd d = l.diagonal();
            for (Eigen::Index i = 0; i < dim; ++i)
                for (Eigen::Index j = 0; j < dim; ++j)
                    mask(i, j) += g * (d(i) * std::conj(d(j)) -
                                       0.5 * (std::norm(d(i)) + std::norm(d(j))));
            have_mask = true;
        } else {
            general.emplace_back(l, g);
            general_ldl.push_back(l.adjoint() * l);
        }
    }

    const std::complex<double> i1(0.0, 1.0);
    auto rhs = [&](const Eigen::MatrixXcd& r, double t) {
        Eigen::MatrixXcd h =
            schedule.A(t) * problem.h0 + schedule.B(t) * problem.hf;
        Eigen::MatrixXcd out = -i1 * (h * r - r * h);
        if (have_mask) out += mask.cwiseProduct(r);
        for (size_t j = 0; j < general.size(); ++j) {
            const auto& [l, g] = general[j];
            out += g * (l * r * l.adjoint() -
                        0.5 * (general_ldl[j] * r + r * general_ldl[j]));
        }
        return out;
    };

    const std::int64_t steps =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(T / dt)));
    const double h = T / static_cast<double>(steps);

    Trajectory traj;
    auto record = [&](double t, const Eigen::MatrixXcd& r) {
        const double trace_err = std::abs(r.trace().real() - 1.0) +
                                 std::abs(r.trace().imag());
        const double herm_err = (r - r.adjoint()).cwiseAbs().maxCoeff();
        if (trace_err > opts.sample_trace_tol || herm_err > opts.sample_herm_tol)
            throw InvariantViolation(
                "integrate: sampled state failed trace/Hermiticity check");
        traj.times.push_back(t);
        traj.states.push_back(r);
    };
    record(0.0, rho);

    Eigen::MatrixXcd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);
    for (std::int64_t step = 0; step < steps; ++step) {
        const double t = h * static_cast<double>(step);
        k1 = rhs(rho, t);
        k2 = rhs(rho + (h / 2) * k1, t + h / 2);
        k3 = rhs(rho + (h / 2) * k2, t + h / 2);
        k4 = rhs(rho + h * k3, t + h);
        rho += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);

        const double drift = std::abs(rho.trace() - std::complex<double>(1.0));
        traj.max_trace_error = std::max(traj.max_trace_error, drift);
        if (drift > opts.drift_tol)
            throw StepSizeError(
                "integrate: trace drift exceeds tolerance; reduce dt");
        if ((step + 1) % opts.sample_stride == 0 || step + 1 == steps)
            record(h * static_cast<double>(step + 1), rho);
    }
    return traj;
}

double fidelity(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw PreconditionError("fidelity: target is not normalized");
    if (rho.rows() != psi.size())
        throw DimensionError("fidelity: dimension mismatch");
    const double f = (psi.adjoint() * rho * psi)(0, 0).real();
    if (f < -1e-9 || f > 1.0 + 1e-9)
        throw InvariantViolation("fidelity: value outside [0, 1] tolerance");
    return f;
}

double fidelity_uhlmann(const Eigen::MatrixXcd& rho,
                        const Eigen::VectorXcd& psi) {
    return std::sqrt(std::max(0.0, fidelity(rho, psi)));
}

// ---------------------------------------------------------------------------
// Single-qubit bit flip
// ---------------------------------------------------------------------------

FlipResult single_qubit_flip(char axis, double gamma_x, double eps, double T,
                             double dt) {
    if (axis != 'x' && axis != 'y')
        throw DomainError("single_qubit_flip: axis must be x or y");
    if (gamma_x < 0.0 || eps < 0.0)
        throw PreconditionError("single_qubit_flip: rates must be >= 0");

    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    // D_a scales the two other axes at rate gamma_a: jump sigma^a, rate gamma_a/2
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;
    if (gamma_x > 0.0) jumps.emplace_back(sigma('x'), gamma_x / 2.0);
    if (eps > 0.0) {
        jumps.emplace_back(sigma('y'), eps / 2.0);
        jumps.emplace_back(sigma('z'), eps / 2.0);
    }

    // instantaneous pi/2 pulse about the flip axis
    const std::complex<double> i1(0.0, 1.0);
    const Eigen::Matrix2cd half =
        std::cos(M_PI / 4) * id - i1 * std::sin(M_PI / 4) * sigma(axis);

    Eigen::VectorXcd zero(2);
    zero << 1.0, 0.0;
    Eigen::MatrixXcd rho = zero * zero.adjoint();
    rho = half * rho * half.adjoint();

    // free dissipative hold of duration T under H = 0
    {
        const std::int64_t steps = std::max<std::int64_t>(
            100, static_cast<std::int64_t>(std::llround(T / dt)));
        const double hstep = T / static_cast<double>(steps);
        auto rhs = [&](const Eigen::MatrixXcd& r) {
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
            for (const auto& [l, g] : jumps)
                out += g * (l * r * l.adjoint() -
                            0.5 * (l.adjoint() * l * r + r * l.adjoint() * l));
            return out;
        };
        for (std::int64_t s = 0; s < steps; ++s) {
            Eigen::MatrixXcd k1 = rhs(rho);
            Eigen::MatrixXcd k2 = rhs(rho + (hstep / 2) * k1);
            Eigen::MatrixXcd k3 = rhs(rho + (hstep / 2) * k2);
            Eigen::MatrixXcd k4 = rhs(rho + hstep * k3);
            rho += (hstep / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        }
    }
    rho = half * rho * half.adjoint();

    FlipResult out;
    out.integrated = rho;
    const double decay =
        axis == 'x' ? std::exp(-(gamma_x + eps) * T) : std::exp(-2.0 * eps * T);
    out.analytic = (id - decay * sigma('z')) / 2.0;
    Eigen::VectorXcd one(2);
    one << 0.0, 1.0;
    out.fidelity_integrated = fidelity(rho, one);
    out.fidelity_analytic = fidelity(out.analytic, one);
    return out;
}

// ---------------------------------------------------------------------------
// Adiabatic W-state preparation
// ---------------------------------------------------------------------------

Eigen::VectorXcd w_state(int n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < n; ++i)
        w(Eigen::Index(1) << (n - 1 - i)) = 1.0 / std::sqrt(double(n));
    return w;
}

AspResult asp_w_state(int n, char init, double T, double dt,
                      std::optional<double> gamma_z, int sample_stride) {
    if (n < 2) throw DomainError("asp_w_state: n must be >= 2");
    if (init != 'z' && init != 'x')
        throw DomainError("asp_w_state: init must be z or x");
    const Eigen::Index dim = Eigen::Index(1) << n;

    // H_f = -sum_{i != j} |e_i><e_j|
    Eigen::MatrixXcd hf = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<Eigen::Index> excite(n);
    for (int i = 0; i < n; ++i) excite[i] = Eigen::Index(1) << (n - 1 - i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) hf(excite[i], excite[j]) -= 1.0;

    const char axis = init;
    Eigen::MatrixXcd h0 = embed(sigma(axis), n, 0);
    for (int q = 1; q < n; ++q) h0 -= embed(sigma(axis), n, q);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(excite[0]) = 1.0;  // |e_1>
    if (init == 'x') {
        const std::complex<double> i1(0.0, 1.0);
        const Eigen::Matrix2cd ry = std::cos(M_PI / 4) *
                                        Eigen::Matrix2cd::Identity() -
                                    i1 * std::sin(M_PI / 4) * sigma('y');
        for (int q = 0; q < n; ++q) psi0 = embed(ry, n, q) * psi0;
    }

    // gamma_z is the jump amplitude: L = gamma_z sigma^z_i, GKLS rate gamma_z^2
    const double amp = gamma_z.value_or(std::sqrt(1.0 / T));
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;
    if (amp > 0.0)
        jumps = pauli_dissipator(n, 0.0, 0.0, amp * amp);

    AnalogProblem problem(h0, hf, psi0, jumps);
    Schedule sched = Schedule::forward_linear(T);
    IntegrateOptions opts;
    opts.sample_stride = sample_stride;
    AspResult out;
    out.trajectory = integrate(problem, sched, dt, opts);

    const Eigen::VectorXcd w = w_state(n);
    out.fidelity_overlap.reserve(out.trajectory.states.size());
    out.fidelity_sqrt.reserve(out.trajectory.states.size());
    for (size_t i = 0; i < out.trajectory.states.size(); ++i) {
        const double f = fidelity(out.trajectory.states[i], w);
        out.fidelity_overlap.push_back(f);
        const double fs = std::sqrt(std::max(0.0, f));
        out.fidelity_sqrt.push_back(fs);
        if (fs > out.peak_fidelity) {
            out.peak_fidelity = fs;
            out.peak_time = out.trajectory.times[i];
        }
    }
    out.final_fidelity = out.fidelity_sqrt.back();
    return out;
}

// ---------------------------------------------------------------------------
// Two-qubit annealing baseline
// ---------------------------------------------------------------------------

AnnealResult anneal(const Schedule& schedule, bool reverse_init,
                    const std::vector<std::pair<Eigen::MatrixXcd, double>>&
                        jumps,
                    double dt) {
    const int n = 2;
    Eigen::MatrixXcd hf = -0.1 * (embed(sigma('z'), n, 0) +
                                  embed(sigma('z'), n, 1)) -
                          embed(sigma('z'), n, 0) * embed(sigma('z'), n, 1);
    Eigen::MatrixXcd h0 =
        -(embed(sigma('x'), n, 0) + embed(sigma('x'), n, 1));

    Eigen::VectorXcd psi0(4);
    if (reverse_init) {
        // ground state of the diagonal Hf: cheapest computational state
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < 4; ++i)
            if (hf(i, i).real() < hf(best, best).real()) best = i;
        psi0.setZero();
        psi0(best) = 1.0;
    } else {
        psi0.setConstant(0.5);  // |+>|+>
    }

    AnalogProblem problem(h0, hf, psi0, jumps);
    AnnealResult out;
    out.trajectory = integrate(problem, schedule, dt);
    out.energy = (hf * out.trajectory.final_state()).trace().real();
    return out;
}

double relative_error(double e_exp, double e_bar) {
    if (e_bar == 0.0) throw DomainError("relative_error: reference energy is 0");
    return 100.0 * (e_exp - e_bar) / e_bar;
}

}  // namespace qmeta
