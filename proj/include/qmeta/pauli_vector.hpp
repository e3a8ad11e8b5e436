#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qmeta/pauli.hpp"
#include "qmeta/tableau.hpp"

namespace qmeta {

/// Real Pauli-coefficient representation of an n-qubit density matrix:
/// c[idx] = Tr(P_idx rho), rho = 2^-n sum_idx c[idx] P_idx.
///
/// Index layout: qubit q owns the two bits at position 2q; bit0 = x,
/// bit1 = z, so the per-site code is I=0, X=1, Z=2, Y=3.  Unitary gates
/// act as sparse linear maps on the coefficients and Pauli channels act
/// diagonally, which is what makes depth-100 runs at n = 8 cheap.
struct PauliVector {
    int n = 0;
    std::vector<double> c;

    explicit PauliVector(int n_qubits);

    std::size_t size() const { return c.size(); }

    static int site(std::uint64_t idx, int q) {
        return static_cast<int>((idx >> (2 * q)) & 3u);
    }

    /// Index of a canonical-phase string.
    static std::uint64_t index_of(const PauliString& p);
    PauliString string_at(std::uint64_t idx) const;

    /// |0...0><0...0| : coefficient 1 on every {I,Z} string.
    static PauliVector zero_state(int n_qubits);

    /// Basis vector e_P (used to expand conjugations of a single string).
    static PauliVector basis(int n_qubits, std::uint64_t idx);

    static PauliVector from_dense(const Eigen::MatrixXcd& rho);
    Eigen::MatrixXcd to_dense() const;

    double trace() const { return c[0]; }          // Tr(rho) = c_I
    double purity_sum() const;                      // sum_P c_P^2 = 2^n Tr(rho^2)
};

namespace kernels {

enum class Exec { serial, parallel };

/// Conjugation by exp(-i theta/2 sigma^axis_qubit); in place.
void apply_rotation(PauliVector& v, char axis, int qubit, double theta,
                    Exec exec = Exec::parallel);

/// Local conjugation table of a w-qubit Clifford: maps each local code
/// vector to (image code vector, sign).
struct LocalCliffordTable {
    int width = 0;
    std::vector<std::uint32_t> image;  // size 4^width
    std::vector<double> sign;
};

LocalCliffordTable build_local_table(const CliffordTableau& tableau);

/// Apply a local Clifford conjugation; out-of-place (in != out).
void apply_clifford(const PauliVector& in, PauliVector& out,
                    const LocalCliffordTable& table,
                    const std::vector<int>& qubits,
                    Exec exec = Exec::parallel);

/// Elementwise multiply by a precomputed factor per index; in place.
void apply_scale(PauliVector& v, const std::vector<double>& factors,
                 Exec exec = Exec::parallel);

/// Fully materialized signed permutation of the 4^n index space; lets a
/// whole Clifford block (e.g. the CZ chain of a layer) run as one pass.
struct IndexMap {
    std::vector<std::uint32_t> image;
    std::vector<double> sign;
};

/// Compose local Clifford applications into one signed permutation.
IndexMap build_index_map(
    int n, const std::vector<std::pair<LocalCliffordTable,
                                       std::vector<int>>>& gates);

void apply_index_map(const PauliVector& in, PauliVector& out,
                     const IndexMap& map, Exec exec = Exec::parallel);

}  // namespace kernels

}  // namespace qmeta
