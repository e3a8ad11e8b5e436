#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qmeta/pauli.hpp"

namespace qmeta {

/// Expansion of a Hermitian matrix in canonical-phase Pauli strings:
/// coefficients c_P = Tr(P M), reconstruction M = 2^-n sum_P c_P P.
class PauliDecomposition {
  public:
    using Terms = std::map<PauliString, double>;

    PauliDecomposition() = default;
    explicit PauliDecomposition(int n) : n_(n) {}

    int num_qubits() const { return n_; }
    const Terms& terms() const { return terms_; }

    double coefficient(const PauliString& p) const;
    void set(const PauliString& p, double coeff, double drop_tol = 1e-12);

    /// Canonical-phase strings with nonzero coefficient.
    std::vector<PauliString> support() const;

    Eigen::MatrixXcd reconstruct() const;

  private:
    int n_ = 0;
    Terms terms_;
};

struct DecomposeOptions {
    int dense_limit = 10;      // refuse matrices beyond 2^limit
    double drop_tol = 1e-12;   // omit |c| below this
};

/// Pauli expansion of a 2^n x 2^n matrix; imaginary parts of Tr(P M) are
/// discarded after a Hermiticity check.
PauliDecomposition decompose(const Eigen::MatrixXcd& m,
                             const DecomposeOptions& opts = {});

}  // namespace qmeta
