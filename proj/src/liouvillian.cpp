#include "qmeta/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

#include "qmeta/errors.hpp"

namespace qmeta {

Liouvillian::Liouvillian(Eigen::MatrixXcd h,
                         std::vector<std::pair<Eigen::MatrixXcd, double>> js)
    : hamiltonian(std::move(h)), jumps(std::move(js)) {
    const Eigen::Index dim = hamiltonian.rows();
    if (dim != hamiltonian.cols() || dim == 0 || (dim & (dim - 1)) != 0)
        throw ShapeError("Liouvillian: dimension is not a power of two");
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw PreconditionError("Liouvillian: Hamiltonian is not Hermitian");
    for (const auto& [l, g] : jumps) {
        if (l.rows() != dim || l.cols() != dim)
            throw DimensionError("Liouvillian: jump operator dimension mismatch");
        if (g < 0.0)
            throw PreconditionError("Liouvillian: negative rate");
    }
}

int Liouvillian::num_qubits() const {
    int n = 0;
    while ((Eigen::Index(1) << n) < hamiltonian.rows()) ++n;
    return n;
}

Eigen::MatrixXcd build_superoperator(const Liouvillian& gen,
                                     const SuperoperatorOptions& opts) {
    const Eigen::Index dim = gen.hamiltonian.rows();
    if (gen.num_qubits() > opts.dense_limit)
        throw ResourceError("build_superoperator: qubit count exceeds limit");
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const std::complex<double> i1(0.0, 1.0);

    // column-stacking: vec(A X B) = (B^T kron A) vec(X)
    Eigen::MatrixXcd s =
        -i1 * (Eigen::kroneckerProduct(id, gen.hamiltonian) -
               Eigen::kroneckerProduct(gen.hamiltonian.transpose(), id));
    for (const auto& [l, g] : gen.jumps) {
        const Eigen::MatrixXcd ldl = l.adjoint() * l;
        s += g * (Eigen::kroneckerProduct(l.conjugate(), l) -
                  0.5 * Eigen::kroneckerProduct(id, ldl) -
                  0.5 * Eigen::kroneckerProduct(ldl.transpose(), id));
    }
    return s;
}

SpectralDecomposition spectral_decomposition(const Eigen::MatrixXcd& s,
                                             const SpectralOptions& opts) {
    const Eigen::Index d2 = s.rows();
    if (d2 != s.cols()) throw ShapeError("spectral_decomposition: not square");
    Eigen::Index dim = static_cast<Eigen::Index>(std::llround(std::sqrt(double(d2))));
    if (dim * dim != d2)
        throw ShapeError("spectral_decomposition: size is not a perfect square");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(s);
    if (solver.info() != Eigen::Success)
        throw ExceptionalPointError("spectral_decomposition: eigensolver failed");
    Eigen::MatrixXcd v = solver.eigenvectors();
    Eigen::VectorXcd lam = solver.eigenvalues();

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(v);
    if (!lu.isInvertible())
        throw ExceptionalPointError(
            "spectral_decomposition: defective eigenvector matrix "
            "(exceptional point)");
    Eigen::MatrixXcd vinv = lu.inverse();
    const double cond = v.norm() * vinv.norm() / double(d2);
    if (cond > opts.condition_limit)
        throw ExceptionalPointError(
            "spectral_decomposition: eigenvector condition number above limit "
            "(exceptional point)");

    // sort by descending real part (ties: by imaginary part, deterministic)
    std::vector<int> order(d2);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (lam(a).real() != lam(b).real()) return lam(a).real() > lam(b).real();
        return lam(a).imag() > lam(b).imag();
    });

    SpectralDecomposition out;
    out.eigenvalues.reserve(d2);
    out.right.reserve(d2);
    out.left.reserve(d2);
    for (int j : order) {
        out.eigenvalues.push_back(lam(j));
        Eigen::VectorXcd rv = v.col(j);
        // left row j of V^-1; stored as matrix with Tr(l^+ r) = delta
        Eigen::VectorXcd lv = vinv.row(j).conjugate();
        out.right.push_back(
            Eigen::Map<Eigen::MatrixXcd>(rv.data(), dim, dim).eval());
        out.left.push_back(
            Eigen::Map<Eigen::MatrixXcd>(lv.data(), dim, dim).eval());
    }
    return out;
}

Eigen::MatrixXcd evolve_spectral(const SpectralDecomposition& spec,
                                 const Eigen::MatrixXcd& rho0, double t) {
    if (t < 0.0) throw DomainError("evolve_spectral: negative time");
    const Eigen::Index dim = rho0.rows();
    if (dim != rho0.cols() || dim != spec.dim())
        throw DimensionError("evolve_spectral: dimension mismatch");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t j = 0; j < spec.eigenvalues.size(); ++j) {
        const std::complex<double> w =
            (spec.left[j].adjoint() * rho0).trace() *
            std::exp(spec.eigenvalues[j] * t);
        rho += w * spec.right[j];
    }
    const double trace_err = std::abs(rho.trace() - rho0.trace());
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (trace_err > 1e-8 || herm_err > 1e-6)
        throw InvariantViolation("evolve_spectral: output failed trace or "
                                 "Hermiticity check");
    return rho;
}

MetastableManifold metastable_manifold(const SpectralDecomposition& spec,
                                       double tau2, double zero_tol) {
    if (!(tau2 > 0.0)) throw DomainError("metastable_manifold: tau2 must be > 0");
    MetastableManifold out;
    const double cut = 1.0 / tau2;
    double fastest_in = 0.0;   // max |Re lambda| among included
    double slowest_out = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < spec.eigenvalues.size(); ++j) {
        const double rate = std::abs(spec.eigenvalues[j].real());
        if (rate <= cut) {
            out.indices.push_back(static_cast<int>(j));
            if (rate > zero_tol) fastest_in = std::max(fastest_in, rate);
        } else {
            slowest_out = std::min(slowest_out, rate);
        }
    }
    out.tau1 = std::isinf(slowest_out) ? 0.0 : 1.0 / slowest_out;
    out.tau2 = fastest_in > 0.0 ? 1.0 / fastest_in
                                : std::numeric_limits<double>::infinity();
    out.gap_ratio = std::isinf(out.tau2) ? 0.0 : out.tau1 / out.tau2;
    return out;
}

}  // namespace qmeta
