#pragma once

#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qmeta/channel.hpp"
#include "qmeta/decompose.hpp"
#include "qmeta/pauli_vector.hpp"
#include "qmeta/tableau.hpp"

namespace qmeta {

struct Rotation {
    char axis;  // 'x', 'y' or 'z'
    int qubit;
    double angle;
};

struct ControlledZ {
    int a, b;
};

struct CliffordGate {
    CliffordTableau tableau;  // over its own width
    std::vector<int> qubits;
};

using Gate = std::variant<Rotation, ControlledZ, CliffordGate>;

struct Layer {
    std::vector<Gate> gates;
    PauliChannel noise;
};

struct Circuit {
    int n = 0;
    std::vector<Layer> layers;

    Circuit(int n_qubits, std::vector<Layer> ls);
    int depth() const { return static_cast<int>(layers.size()); }
};

/// Hermitian observable as a real Pauli-coefficient list.
class Observable {
  public:
    Observable(int n, std::vector<std::pair<PauliString, double>> terms);

    /// sigma^z_a sigma^z_b embedded in n qubits.
    static Observable zz(int n, int a, int b);

    int num_qubits() const { return n_; }
    const std::vector<std::pair<PauliString, double>>& terms() const {
        return terms_;
    }
    double identity_coefficient() const;  // Tr(O)/2^n
    Eigen::MatrixXcd matrix() const;

  private:
    int n_;
    std::vector<std::pair<PauliString, double>> terms_;
};

/// Hardware-efficient ansatz: per layer, rotations about a fixed axis on
/// every qubit, then the nearest-neighbour CZ chain, then the noise
/// channel.  Axis 'z' is rejected (it acts trivially on |0...0>).
Circuit build_hea(int n, int layers, char axis,
                  const std::vector<std::vector<double>>& thetas,
                  const PauliChannel& noise);

// ---------------------------------------------------------------------------
// Pauli-coefficient engine
// ---------------------------------------------------------------------------

/// Reusable propagation workspace: two coefficient buffers plus cached
/// channel factors and Clifford tables for one circuit.
class VectorEngine {
  public:
    VectorEngine(const Circuit& c, kernels::Exec exec = kernels::Exec::parallel);

    /// Run |state> through the circuit.  When `noisy` is false the channel
    /// applications are skipped (ideal run).  `snapshot`, when set, is
    /// called after each layer with (layer index starting at 1, state).
    void run(PauliVector& state, bool noisy,
             const std::function<void(int, const PauliVector&)>& snapshot = {}) const;

  private:
    const Circuit& circuit_;
    kernels::Exec exec_;
    std::vector<std::vector<double>> channel_factors_;  // per layer, may be empty
    struct PreparedClifford {
        kernels::LocalCliffordTable table;
        std::vector<int> qubits;
    };
    std::vector<std::vector<PreparedClifford>> cliffords_;  // per layer, in gate order
    mutable PauliVector scratch_;
};

PauliVector run_ideal(const Circuit& c, const PauliVector& in,
                      kernels::Exec exec = kernels::Exec::parallel);
PauliVector run_noisy(const Circuit& c, const PauliVector& in,
                      kernels::Exec exec = kernels::Exec::parallel);

// ---------------------------------------------------------------------------
// Dense reference engine (cross-checks, n <= 6)
// ---------------------------------------------------------------------------

Eigen::MatrixXcd run_ideal_dense(const Circuit& c, const Eigen::MatrixXcd& in);
Eigen::MatrixXcd run_noisy_dense(const Circuit& c, const Eigen::MatrixXcd& in);

/// Dense matrix of a single gate embedded in n qubits.
Eigen::MatrixXcd gate_matrix(const Gate& g, int n);

// ---------------------------------------------------------------------------
// Cost functions and gradients
// ---------------------------------------------------------------------------

double cost(const PauliVector& rho, const Observable& o);
double cost(const Eigen::MatrixXcd& rho, const Observable& o);

/// |Tr(O rho) - Tr(O)/2^n|
double mixed_distance(const PauliVector& rho, const Observable& o);

/// d cost / d angle of the rotation identified by (layer, rotation index
/// within that layer), via the exact two-point shift rule.
double gradient(const Circuit& c, const PauliVector& rho_in, const Observable& o,
                int layer, int rotation_index, bool noisy = true,
                kernels::Exec exec = kernels::Exec::parallel);

}  // namespace qmeta
