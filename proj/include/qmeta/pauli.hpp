#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmeta {

/// n-qubit Pauli operator in symplectic form.
///
/// Site j carries two bits: x[j] and z[j].  (0,0) = I, (1,0) = X,
/// (0,1) = Z, (1,1) = Y, where Y is the Hermitian Pauli (Y = i X Z).
/// The global phase is i^phase_exp with phase_exp in {0,1,2,3}, so the
/// operator represented is  i^phase_exp * (tensor of site Paulis).
class PauliString {
  public:
    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(int n) : x_(n, 0), z_(n, 0) {}

    /// Parse a text label like "XIZY", "+XZ", "-iYY".
    static PauliString from_label(const std::string& label);

    int num_qubits() const { return static_cast<int>(x_.size()); }

    bool x(int q) const { return x_[q] != 0; }
    bool z(int q) const { return z_[q] != 0; }
    void set_x(int q, bool v) { x_[q] = v ? 1 : 0; }
    void set_z(int q, bool v) { z_[q] = v ? 1 : 0; }

    /// Phase as a power of i (mod 4).
    int phase_exp() const { return phase_; }
    void set_phase_exp(int k) { phase_ = ((k % 4) + 4) % 4; }
    std::complex<double> phase() const;

    /// Same operator with phase forced to +1.
    PauliString canonical() const;
    bool is_identity() const;

    /// Site-ordered comparison of the phase-free part; phases compare last.
    /// Gives the deterministic ordering used by decompositions and supports.
    friend bool operator<(const PauliString& a, const PauliString& b);
    friend bool operator==(const PauliString& a, const PauliString& b);

    /// Text form "+XIZY" / "-iZZ".
    std::string label() const;

    /// Dense 2^n x 2^n matrix (phase included).
    Eigen::MatrixXcd matrix() const;

  private:
    std::vector<uint8_t> x_;
    std::vector<uint8_t> z_;
    int phase_ = 0;
};

/// Group product P*Q with exact phase bookkeeping.
PauliString pauli_mul(const PauliString& p, const PauliString& q);

/// True iff P and Q commute (symplectic inner product vanishes).
bool commutes(const PauliString& p, const PauliString& q);

/// Single-site Pauli embedded in n qubits: axis in {'x','y','z'}.
PauliString single_site(int n, int qubit, char axis);

std::ostream& operator<<(std::ostream& os, const PauliString& p);

}  // namespace qmeta
