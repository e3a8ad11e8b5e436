#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qmeta/pauli.hpp"

namespace qmeta {

/// GKLS generator: d rho/dt = -i[H,rho] + sum_i gamma_i (L_i rho L_i^+
/// - 1/2 {L_i^+ L_i, rho}).
struct Liouvillian {
    Eigen::MatrixXcd hamiltonian;
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;  // (L_i, gamma_i)

    Liouvillian(Eigen::MatrixXcd h,
                std::vector<std::pair<Eigen::MatrixXcd, double>> js = {});
    int num_qubits() const;
};

struct SuperoperatorOptions {
    int dense_limit = 5;  // refuse 4^n beyond this
};

/// Column-stacking superoperator matrix of the generator.
Eigen::MatrixXcd build_superoperator(const Liouvillian& gen,
                                     const SuperoperatorOptions& opts = {});

/// Biorthogonal spectral decomposition of a (non-Hermitian) superoperator.
///
/// right[j] and left[j] are 2^n x 2^n matrices with Tr(left_j^+ right_k)
/// = delta_jk; eigenvalues are sorted by descending real part.
struct SpectralDecomposition {
    std::vector<std::complex<double>> eigenvalues;
    std::vector<Eigen::MatrixXcd> right;
    std::vector<Eigen::MatrixXcd> left;

    int dim() const { return static_cast<int>(right.empty() ? 0 : right[0].rows()); }
};

struct SpectralOptions {
    double condition_limit = 1e12;  // beyond this: exceptional point
    double zero_tol = 1e-8;         // |lambda| below this counts as stationary
};

SpectralDecomposition spectral_decomposition(const Eigen::MatrixXcd& s,
                                             const SpectralOptions& opts = {});

/// rho(t) = sum_j e^{lambda_j t} Tr(l_j^+ rho0) r_j  (full mode sum; equals
/// rho_ss + decaying modes when the stationary state is unique).
Eigen::MatrixXcd evolve_spectral(const SpectralDecomposition& spec,
                                 const Eigen::MatrixXcd& rho0, double t);

struct MetastableManifold {
    std::vector<int> indices;  // modes with |Re lambda| <= 1/tau2
    double tau1 = 0.0;         // slowest excluded timescale (0 if none excluded)
    double tau2 = 0.0;         // fastest included nonzero timescale (inf if none)
    double gap_ratio = 0.0;    // tau1/tau2; small means strong separation
};

MetastableManifold metastable_manifold(const SpectralDecomposition& spec,
                                       double tau2,
                                       double zero_tol = 1e-8);

}  // namespace qmeta
