#pragma once

#include <string>
#include <vector>

#include "qmeta/pauli.hpp"

namespace qmeta {

/// Clifford unitary represented by the images of the 2n Pauli generators.
///
/// images_x[j] = U X_j U^dagger and images_z[j] = U Z_j U^dagger.  Image
/// phases are restricted to +/-1 and the symplectic form is preserved;
/// both are validated on construction.
class CliffordTableau {
  public:
    /// Identity tableau on n qubits.
    static CliffordTableau identity(int n);

    /// Build from explicit generator images; validates commutation
    /// relations (symplectic form) and +/-1 phases.
    CliffordTableau(std::vector<PauliString> images_x,
                    std::vector<PauliString> images_z);

    int num_qubits() const { return static_cast<int>(images_x_.size()); }

    const PauliString& image_x(int j) const { return images_x_[j]; }
    const PauliString& image_z(int j) const { return images_z_[j]; }

    /// Tableau of (this after other), i.e. U_this * U_other.
    CliffordTableau compose(const CliffordTableau& other) const;

    /// Embed a w-qubit tableau into n qubits at the given sites.
    CliffordTableau embed(int n, const std::vector<int>& qubits) const;

    /// One "Xj -> image" line per generator.
    std::string describe() const;

  private:
    std::vector<PauliString> images_x_;
    std::vector<PauliString> images_z_;
};

/// U P U^dagger by composing generator images; exact sign tracking.
PauliString conjugate(const CliffordTableau& tableau, const PauliString& p);

/// Built-in gates (tableaus over their own width: 1 or 2 qubits).
namespace gates {
CliffordTableau h();
CliffordTableau s();
CliffordTableau x();
CliffordTableau y();
CliffordTableau z();
CliffordTableau cz();
CliffordTableau cnot();
}  // namespace gates

}  // namespace qmeta
