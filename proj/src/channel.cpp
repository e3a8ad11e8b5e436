#include "qmeta/channel.hpp"

#include <cmath>

#include "qmeta/errors.hpp"

namespace qmeta {

PauliChannel PauliChannel::per_qubit(std::vector<QTriple> q) {
    if (q.empty()) throw DimensionError("PauliChannel: empty q-triple list");
    for (const auto& t : q)
        for (double v : t)
            if (!(std::abs(v) < 1.0))
                throw PreconditionError(
                    "PauliChannel: per-qubit factors must satisfy |q| < 1");
    PauliChannel ch;
    ch.n_ = static_cast<int>(q.size());
    ch.per_qubit_ = std::move(q);
    return ch;
}

PauliChannel PauliChannel::uniform(int n, const QTriple& q) {
    return per_qubit(std::vector<QTriple>(n, q));
}

PauliChannel PauliChannel::weighted(
    int n, std::vector<std::pair<PauliString, double>> terms) {
    double total = 0.0;
    for (auto& [p, w] : terms) {
        if (p.num_qubits() != n)
            throw DimensionError("PauliChannel: noise string qubit mismatch");
        if (!(w > 0.0 && w <= 1.0))
            throw PreconditionError("PauliChannel: weights must lie in (0,1]");
        p = p.canonical();
        total += w;
    }
    if (total > 1.0 + 1e-12)
        throw PreconditionError("PauliChannel: weights sum above 1");
    PauliChannel ch;
    ch.n_ = n;
    ch.weighted_ = std::move(terms);
    return ch;
}

bool PauliChannel::is_identity_channel() const {
    return !per_qubit_.has_value() && weighted_.empty();
}

double channel_eigenvalue(const PauliChannel& ch, const PauliString& p) {
    if (p.num_qubits() != ch.num_qubits())
        throw DimensionError("channel_eigenvalue: qubit counts differ");
    if (ch.is_per_qubit()) {
        double ev = 1.0;
        const auto& qs = ch.q_triples();
        for (int j = 0; j < ch.num_qubits(); ++j) {
            if (p.x(j) && !p.z(j)) ev *= qs[j][0];
            else if (p.x(j) && p.z(j)) ev *= qs[j][1];
            else if (!p.x(j) && p.z(j)) ev *= qs[j][2];
        }
        return ev;
    }
    if (p.is_identity()) return 1.0;  // unitality, exact
    double sum = 0.0, signed_sum = 0.0;
    for (const auto& [q, w] : ch.weights()) {
        sum += w;
        signed_sum += commutes(q, p) ? w : -w;
    }
    return 1.0 - sum + signed_sum;
}

std::vector<double> eigenvalue_vector(const PauliChannel& ch) {
    const int n = ch.num_qubits();
    const std::uint64_t total = 1ull << (2 * n);
    std::vector<double> f(total, 1.0);
    if (ch.is_per_qubit()) {
        const auto& qs = ch.q_triples();
        for (int q = 0; q < n; ++q) {
            const double fac[4] = {1.0, qs[q][0], qs[q][2], qs[q][1]};
            for (std::uint64_t idx = 0; idx < total; ++idx)
                f[idx] *= fac[PauliVector::site(idx, q)];
        }
        return f;
    }
    PauliVector probe(n);
    for (std::uint64_t idx = 0; idx < total; ++idx)
        f[idx] = channel_eigenvalue(ch, probe.string_at(idx));
    return f;
}

void apply_channel(const PauliChannel& ch, PauliVector& v,
                   kernels::Exec exec) {
    if (ch.num_qubits() != v.n)
        throw DimensionError("apply_channel: qubit counts differ");
    if (ch.is_identity_channel()) return;
    kernels::apply_scale(v, eigenvalue_vector(ch), exec);
}

Eigen::MatrixXcd apply_channel(const PauliChannel& ch,
                               const Eigen::MatrixXcd& rho) {
    PauliVector v = PauliVector::from_dense(rho);
    if (ch.num_qubits() != v.n)
        throw DimensionError("apply_channel: qubit counts differ");
    apply_channel(ch, v, kernels::Exec::serial);
    return v.to_dense();
}

Eigen::MatrixXcd channel_superoperator(const PauliChannel& ch) {
    const int n = ch.num_qubits();
    if (n > 5) throw ResourceError("channel_superoperator: n > 5");
    const Eigen::Index dim = Eigen::Index(1) << n;
    const Eigen::Index d2 = dim * dim;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d2, d2);
    for (Eigen::Index col = 0; col < d2; ++col) {
        Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(dim, dim);
        basis(col % dim, col / dim) = 1.0;  // column-stacking order
        Eigen::MatrixXcd out;
        if (ch.is_per_qubit()) {
            // act through the Pauli expansion of the (non-Hermitian) basis
            // matrix by splitting into Hermitian and anti-Hermitian parts
            Eigen::MatrixXcd h = (basis + basis.adjoint()) / 2.0;
            Eigen::MatrixXcd a = (basis - basis.adjoint()) /
                                 std::complex<double>(0.0, 2.0);
            out = apply_channel(ch, h) +
                  std::complex<double>(0.0, 1.0) * apply_channel(ch, a);
        } else {
            double total = 0.0;
            out = Eigen::MatrixXcd::Zero(dim, dim);
            for (const auto& [p, w] : ch.weights()) {
                total += w;
                const Eigen::MatrixXcd pm = p.matrix();
                out += w * pm * basis * pm;
            }
            out += (1.0 - total) * basis;
        }
        s.col(col) = Eigen::Map<Eigen::VectorXcd>(out.data(), d2);
    }
    return s;
}

}  // namespace qmeta
