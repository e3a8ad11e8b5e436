#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "qmeta/circuit.hpp"
#include "qmeta/pauli.hpp"
#include "qmeta/tableau.hpp"

namespace qmeta {

/// Extended reals: -inf is a first-class value here (log of a vanishing
/// channel eigenvalue); IEEE doubles give exactly the required semantics.
inline constexpr double neg_infinity =
    -std::numeric_limits<double>::infinity();

struct ResilienceReport {
    double lambda_m = 0.0;      // worst accumulated Re log-eigenvalue, <= 0
    int multiplicity = 0;       // final strings attaining the minimum
    std::optional<double> lambda_m_tilde;  // Algorithm-1 bound, when computed
};

struct LambdaMOptions {
    int max_qubits = 5;        // 4^n dynamic-programming state space guard
    double coeff_tol = 1e-12;  // path edges require |alpha| above this
    double min_rel_tol = 1e-9; // equality window when counting the minimum
};

/// Exact noise-resilience index over coefficient paths of the layered
/// circuit (per-layer unitaries, then the Pauli channel), by a forward
/// dynamic program on the 4^n Pauli strings.  Channels must be Pauli
/// (they are diagonal in the Pauli basis by construction here).
ResilienceReport lambda_m_exact(const Circuit& c, const PauliVector& rho_in,
                                const LambdaMOptions& opts = {});

/// Same index for arbitrary channel superoperators via their dense
/// eigenbasis; n <= 2 only.  Channels are given as 4^n x 4^n matrices.
ResilienceReport lambda_m_exact_dense(
    const std::vector<Eigen::MatrixXcd>& layer_unitaries,
    const std::vector<Eigen::MatrixXcd>& layer_channels,
    const Eigen::MatrixXcd& rho_in, double coeff_tol = 1e-10);

/// Per-layer weighted Pauli noise for the support-tracking bound.
struct NoiseLayer {
    std::vector<std::pair<PauliString, double>> terms;
};

struct Algorithm1Result {
    double lambda_m_tilde = 0.0;
    std::vector<double> per_layer_min;  // accumulated summands
    // support_trace[0] is the input-state support; support_trace[k] the
    // support after the k-th Clifford layer (canonical phases throughout)
    std::vector<std::vector<PauliString>> support_trace;
    std::vector<std::size_t> support_sizes;  // sizes of trace[1..L]
};

/// Phase-insensitive membership of p in the group generated by the given
/// stabilizer generators, by symplectic Gaussian elimination; avoids
/// materializing the 2^n-element group.
bool stabilizer_contains(const std::vector<PauliString>& generators,
                         const PauliString& p);

/// Support-tracking upper-bound computation.  The initial stabilizer state
/// is given by its n independent, commuting +/-1-phase generators; the
/// support is the full stabilizer group modulo phases.  Per layer: the
/// support is conjugated by that layer's Clifford, then each support
/// string is matched with a noise string equal to it up to phase;
/// matched strings contribute log(1 - sum_j p_j + p_i), unmatched
/// non-identity strings the floor log(1 - sum_j p_j), and the identity
/// contributes log 1 = 0 (the channel fixes it exactly).  The layer adds
/// the minimum of these; a log of a non-positive argument gives -inf.
Algorithm1Result algorithm1_bound(const std::vector<PauliString>& stabilizers,
                                  const std::vector<CliffordTableau>& cliffords,
                                  const std::vector<NoiseLayer>& noise);

/// Count of length-n strings over {I, X, Z} with no adjacent X pair:
/// a_1 = 3, a_2 = 8, a_n = 2 a_{n-1} + 2 a_{n-2}.
std::int64_t sm_recurrence(int n);

/// Number of final right eigenvectors attaining the lambda_M minimum for
/// the hardware-efficient ansatz: axis y -> 3^n - a_n, axis x -> a_n.
std::int64_t hea_min_multiplicity(int n, char axis);

/// Composite-Simpson quadrature of int_0^T max over present strings
/// (g_i(t) = 1) of p_i(t); an instant with no present string contributes 0.
struct AnalogBoundTerm {
    std::function<bool(double)> present;   // g_i
    std::function<double(double)> rate;    // p_i
};
double analog_bound(const std::vector<AnalogBoundTerm>& terms, double T,
                    double dt);

}  // namespace qmeta
