#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qmeta/schedule.hpp"

namespace qmeta {

/// Time-dependent open-system problem H(s) = A(s) H0 + B(s) Hf with a
/// list of GKLS jump operators (L_i, gamma_i).
struct AnalogProblem {
    Eigen::MatrixXcd h0;
    Eigen::MatrixXcd hf;
    Eigen::VectorXcd psi0;
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;

    AnalogProblem(Eigen::MatrixXcd h0_, Eigen::MatrixXcd hf_,
                  Eigen::VectorXcd psi0_,
                  std::vector<std::pair<Eigen::MatrixXcd, double>> jumps_ = {});
    int num_qubits() const;
};

/// Per-qubit sigma^a jump operators: gamma_a is the GKLS rate of every
/// single-qubit jump sigma^a_i.
std::vector<std::pair<Eigen::MatrixXcd, double>> pauli_dissipator(
    int n, double gamma_x, double gamma_y, double gamma_z);

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::MatrixXcd> states;
    double max_trace_error = 0.0;

    const Eigen::MatrixXcd& final_state() const { return states.back(); }

    /// Support indicator g_P(t) for the analog resilience bound: true
    /// when |Tr(P rho(t))| exceeds tol at the nearest sampled time.
    std::function<bool(double)> support_indicator(
        const Eigen::MatrixXcd& pauli, double tol = 1e-10) const;
};

struct IntegrateOptions {
    int sample_stride = 10;        // store every k-th step
    double drift_tol = 1e-6;       // abort threshold on |Tr rho - 1|
    double sample_trace_tol = 1e-8;
    double sample_herm_tol = 1e-9;
};

/// Fixed-step classical 4th-order integration of the master equation.
/// Requires dt <= T/100; trace drift above drift_tol raises StepSizeError.
Trajectory integrate(const AnalogProblem& problem, const Schedule& schedule,
                     double dt, const IntegrateOptions& opts = {});

/// <psi| rho |psi> for a normalized pure target.
double fidelity(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi);

/// Uhlmann fidelity against a pure target: sqrt(<psi| rho |psi>).
double fidelity_uhlmann(const Eigen::MatrixXcd& rho,
                        const Eigen::VectorXcd& psi);

// ---------------------------------------------------------------------------
// Worked experiments
// ---------------------------------------------------------------------------

struct FlipResult {
    Eigen::MatrixXcd integrated;
    Eigen::MatrixXcd analytic;
    double fidelity_integrated = 0.0;  // <1|rho|1>
    double fidelity_analytic = 0.0;
};

/// Single-qubit bit flip |0> -> |1> about the chosen axis under the
/// anisotropic dissipator D = gamma_x D_x + eps (D_y + D_z).
///
/// The flip is realized as an instantaneous pi/2 pulse to the equator, a
/// free dissipative hold of duration T, and a closing pi/2 pulse; this is
/// the protocol whose final states admit the closed forms
///   axis x: (I - e^{-(gamma_x+eps) T} Z)/2,
///   axis y: (I - e^{-2 eps T} Z)/2,
/// which are returned alongside the integrated state.  D_a here scales
/// sigma^b (b != a) at rate gamma_a, i.e. jump sigma^a at GKLS rate
/// gamma_a / 2.
FlipResult single_qubit_flip(char axis, double gamma_x, double eps,
                             double T = 3.141592653589793,
                             double dt = 1e-4 * 3.141592653589793);

struct AspResult {
    Trajectory trajectory;
    std::vector<double> fidelity_overlap;   // <W|rho|W> per sample
    std::vector<double> fidelity_sqrt;      // Uhlmann fidelity per sample
    double peak_fidelity = 0.0;             // max of fidelity_sqrt
    double peak_time = 0.0;
    double final_fidelity = 0.0;            // last fidelity_sqrt
};

/// Adiabatic W-state preparation with (z) or (x) initialization, linear
/// interpolation and per-qubit sigma^z dephasing.  gamma_z is the jump
/// amplitude: jumps are gamma_z * sigma^z_i at unit rate, so the GKLS
/// rate is gamma_z^2 (= 1/T at the default gamma_z = sqrt(1/T)).
AspResult asp_w_state(int n, char init, double T, double dt,
                      std::optional<double> gamma_z = std::nullopt,
                      int sample_stride = 10);

/// W state n^{-1/2} sum_i |e_i>.
Eigen::VectorXcd w_state(int n);

struct AnnealResult {
    double energy = 0.0;  // Tr(Hf rho(T))
    Trajectory trajectory;
};

/// Two-qubit annealing baseline: Hf = -0.1 (Z1 + Z2) - Z1 Z2 with driver
/// H0 = -(X1 + X2).  Forward starts from |+>|+>; reverse (schedules
/// starting and ending at s = 1) starts from the ground state of Hf.
AnnealResult anneal(const Schedule& schedule, bool reverse_init,
                    const std::vector<std::pair<Eigen::MatrixXcd, double>>&
                        jumps = {},
                    double dt = 0.02);

/// 100 * (E_exp - E_bar) / E_bar.
double relative_error(double e_exp, double e_bar);

}  // namespace qmeta
