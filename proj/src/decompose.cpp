#include "qmeta/decompose.hpp"

#include <cmath>

#include "qmeta/errors.hpp"

namespace qmeta {

double PauliDecomposition::coefficient(const PauliString& p) const {
    auto it = terms_.find(p.canonical());
    return it == terms_.end() ? 0.0 : it->second;
}

void PauliDecomposition::set(const PauliString& p, double coeff,
                             double drop_tol) {
    if (p.num_qubits() != n_)
        throw DimensionError("PauliDecomposition::set: qubit count mismatch");
    if (std::abs(coeff) < drop_tol)
        terms_.erase(p.canonical());
    else
        terms_[p.canonical()] = coeff;
}

std::vector<PauliString> PauliDecomposition::support() const {
    std::vector<PauliString> out;
    out.reserve(terms_.size());
    for (const auto& [p, c] : terms_) out.push_back(p);
    return out;
}

Eigen::MatrixXcd PauliDecomposition::reconstruct() const {
    const Eigen::Index dim = Eigen::Index(1) << n_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, c] : terms_) m += c * p.matrix();
    return m / static_cast<double>(dim);
}

PauliDecomposition decompose(const Eigen::MatrixXcd& m,
                             const DecomposeOptions& opts) {
    const Eigen::Index dim = m.rows();
    if (dim != m.cols() || dim == 0 || (dim & (dim - 1)) != 0)
        throw ShapeError("decompose: matrix dimension is not a power of two");
    int n = 0;
    while ((Eigen::Index(1) << n) < dim) ++n;
    if (n > opts.dense_limit)
        throw ResourceError("decompose: qubit count exceeds dense limit");

    PauliDecomposition d(n);
    // enumerate strings by per-site code I=0, X=1, Z=2, Y=3
    const Eigen::Index total = Eigen::Index(1) << (2 * n);
    for (Eigen::Index idx = 0; idx < total; ++idx) {
        PauliString p(n);
        for (int q = 0; q < n; ++q) {
            const int v = static_cast<int>((idx >> (2 * q)) & 3);
            p.set_x(q, v & 1);
            p.set_z(q, v & 2);
        }
        const std::complex<double> tr = (p.matrix() * m).trace();
        if (std::abs(tr.imag()) > 1e-9 * std::max(1.0, std::abs(tr.real())))
            throw ShapeError("decompose: matrix is not Hermitian");
        d.set(p, tr.real(), opts.drop_tol);
    }
    return d;
}

}  // namespace qmeta
