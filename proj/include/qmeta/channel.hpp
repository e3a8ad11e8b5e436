#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmeta/pauli.hpp"
#include "qmeta/pauli_vector.hpp"

namespace qmeta {

/// Unital Pauli noise channel, diagonal in the Pauli-string basis.
///
/// Per-qubit form: qubit j scales sigma^a_j by q_a with -1 < q_a < 1
/// (strict contraction on every non-identity axis).
/// Weighted form: rho -> (1 - sum p_i) rho + sum_i p_i P_i rho P_i with
/// p_i in (0,1], sum <= 1; an empty list is the identity channel.
class PauliChannel {
  public:
    using QTriple = std::array<double, 3>;  // (q_x, q_y, q_z)

    static PauliChannel per_qubit(std::vector<QTriple> q);
    /// Same triple on every qubit.
    static PauliChannel uniform(int n, const QTriple& q);
    static PauliChannel weighted(int n,
                                 std::vector<std::pair<PauliString, double>> terms);
    static PauliChannel identity(int n) { return weighted(n, {}); }

    int num_qubits() const { return n_; }
    bool is_per_qubit() const { return per_qubit_.has_value(); }
    const std::vector<QTriple>& q_triples() const { return *per_qubit_; }
    const std::vector<std::pair<PauliString, double>>& weights() const {
        return weighted_;
    }

    /// True when no coefficient is ever scaled (empty weighted list).
    bool is_identity_channel() const;

  private:
    PauliChannel() = default;
    int n_ = 0;
    std::optional<std::vector<QTriple>> per_qubit_;
    std::vector<std::pair<PauliString, double>> weighted_;
};

/// Eigenvalue of the channel on a Pauli string: per-qubit form gives the
/// product of site factors, weighted form (1 - sum p) + sum_i p_i s_i with
/// s_i = +1 if P_i commutes with P, else -1.
double channel_eigenvalue(const PauliChannel& ch, const PauliString& p);

/// All 4^n eigenvalues laid out in PauliVector index order.
std::vector<double> eigenvalue_vector(const PauliChannel& ch);

/// Diagonal action on a coefficient vector (factors may be cached by the
/// caller via eigenvalue_vector).
void apply_channel(const PauliChannel& ch, PauliVector& v,
                   kernels::Exec exec = kernels::Exec::parallel);

/// Dense action: decompose, scale each coefficient, reconstruct.
Eigen::MatrixXcd apply_channel(const PauliChannel& ch,
                               const Eigen::MatrixXcd& rho);

/// Superoperator matrix of the channel in column-stacking vectorization
/// (used to cross-check diagonality/spectra on small n).
Eigen::MatrixXcd channel_superoperator(const PauliChannel& ch);

}  // namespace qmeta
