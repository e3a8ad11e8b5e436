#include "qmeta/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qmeta/errors.hpp"

namespace qmeta {

namespace {

double log_or_neg_inf(double x) {
    return x > 0.0 ? std::log(x) : neg_infinity;
}

// Re log of a channel eigenvalue: log |mu|, -inf at mu = 0.
double decay_exponent(double mu) { return log_or_neg_inf(std::abs(mu)); }

}  // namespace

ResilienceReport lambda_m_exact(const Circuit& c, const PauliVector& rho_in,
                                const LambdaMOptions& opts) {
    if (c.n > opts.max_qubits)
        throw ResourceError("lambda_m_exact: qubit count exceeds the DP guard");
    if (rho_in.n != c.n)
        throw DimensionError("lambda_m_exact: state size mismatch");

    const std::uint64_t total = 1ull << (2 * c.n);
    const double unreached = std::numeric_limits<double>::infinity();

    // Layer channel eigenvalues (diagonal in the Pauli basis).
    std::vector<std::vector<double>> mu(c.layers.size());
    for (size_t k = 0; k < c.layers.size(); ++k)
        mu[k] = eigenvalue_vector(c.layers[k].noise);

    // dist[P]: minimum accumulated exponent over coefficient paths that
    // reach P after layer k's unitary+channel.
    std::vector<double> dist(total, unreached);

    // Layer 1: expand the input state through the first unitary layer.
    {
        Circuit first(c.n, {Layer{c.layers[0].gates, PauliChannel::identity(c.n)}});
        PauliVector state = rho_in;
        VectorEngine(first, kernels::Exec::serial).run(state, false);
        for (std::uint64_t idx = 0; idx < total; ++idx)
            if (std::abs(state.c[idx]) > opts.coeff_tol)
                dist[idx] = decay_exponent(mu[0][idx]);
    }

    // Subsequent layers: edges P -> Q exist where the conjugation of P
    // through the layer's unitaries has coefficient above the threshold.
    for (size_t k = 1; k < c.layers.size(); ++k) {
        Circuit single(c.n,
                       {Layer{c.layers[k].gates, PauliChannel::identity(c.n)}});
        VectorEngine engine(single, kernels::Exec::serial);
        std::vector<double> next(total, unreached);
        for (std::uint64_t p = 0; p < total; ++p) {
            if (dist[p] == unreached) continue;
            PauliVector probe = PauliVector::basis(c.n, p);
            engine.run(probe, false);
            for (std::uint64_t q = 0; q < total; ++q) {
                if (std::abs(probe.c[q]) <= opts.coeff_tol) continue;
                const double cand = dist[p] + decay_exponent(mu[k][q]);
                if (cand < next[q]) next[q] = cand;
            }
        }
        dist.swap(next);
    }

    ResilienceReport report;
    double best = unreached;
    for (std::uint64_t q = 0; q < total; ++q)
        if (dist[q] < best) best = dist[q];
    if (best == unreached)
        throw PreconditionError("lambda_m_exact: no reachable path");
    report.lambda_m = best;
    int count = 0;
    for (std::uint64_t q = 0; q < total; ++q) {
        if (dist[q] == unreached) continue;
        if (dist[q] == best ||
            std::abs(dist[q] - best) <=
                opts.min_rel_tol * std::max(1.0, std::abs(best)))
            ++count;
    }
    report.multiplicity = count;
    return report;
}

ResilienceReport lambda_m_exact_dense(
    const std::vector<Eigen::MatrixXcd>& layer_unitaries,
    const std::vector<Eigen::MatrixXcd>& layer_channels,
    const Eigen::MatrixXcd& rho_in, double coeff_tol) {
    const size_t L = layer_unitaries.size();
    if (layer_channels.size() != L || L == 0)
        throw DimensionError("lambda_m_exact_dense: layer count mismatch");
    const Eigen::Index dim = rho_in.rows();
    if (dim > 4)
        throw ResourceError("lambda_m_exact_dense: n > 2");
    const Eigen::Index d2 = dim * dim;

    // Eigen-decompose each channel; eigenvalues mu, right matrices r,
    // dual (left) matrices from the inverse eigenvector matrix.
    struct ChannelBasis {
        Eigen::VectorXcd mu;
        Eigen::MatrixXcd v;     // columns vec(r_i)
        Eigen::MatrixXcd vinv;  // rows: duals
    };
    std::vector<ChannelBasis> basis(L);
    for (size_t k = 0; k < L; ++k) {
        if (layer_channels[k].rows() != d2 || layer_unitaries[k].rows() != dim)
            throw DimensionError("lambda_m_exact_dense: dimension mismatch");
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(layer_channels[k]);
        if (es.info() != Eigen::Success)
            throw UnsupportedBasisError(
                "lambda_m_exact_dense: channel eigendecomposition failed");
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(es.eigenvectors());
        if (!lu.isInvertible())
            throw UnsupportedBasisError(
                "lambda_m_exact_dense: defective channel eigenbasis");
        basis[k] = {es.eigenvalues(), es.eigenvectors(), lu.inverse()};
    }

    auto vec = [dim](const Eigen::MatrixXcd& m) {
        return Eigen::Map<const Eigen::VectorXcd>(m.data(), dim * dim).eval();
    };
    auto conj_u = [&](const Eigen::MatrixXcd& u, const Eigen::VectorXcd& vm) {
        Eigen::MatrixXcd m = Eigen::Map<const Eigen::MatrixXcd>(vm.data(), dim, dim);
        Eigen::MatrixXcd out = u * m * u.adjoint();
        return vec(out);
    };

    const double unreached = std::numeric_limits<double>::infinity();
    std::vector<double> dist(d2, unreached);
    {
        Eigen::VectorXcd coeffs =
            basis[0].vinv * conj_u(layer_unitaries[0], vec(rho_in));
        for (Eigen::Index i = 0; i < d2; ++i)
            if (std::abs(coeffs(i)) > coeff_tol)
                dist[i] = decay_exponent(std::abs(basis[0].mu(i)));
    }
    for (size_t k = 1; k < L; ++k) {
        std::vector<double> next(d2, unreached);
        for (Eigen::Index p = 0; p < d2; ++p) {
            if (dist[p] == unreached) continue;
            Eigen::VectorXcd coeffs =
                basis[k].vinv * conj_u(layer_unitaries[k], basis[k - 1].v.col(p));
            for (Eigen::Index q = 0; q < d2; ++q) {
                if (std::abs(coeffs(q)) <= coeff_tol) continue;
                const double cand =
                    dist[p] + decay_exponent(std::abs(basis[k].mu(q)));
                if (cand < next[q]) next[q] = cand;
            }
        }
        dist.swap(next);
    }
    ResilienceReport report;
    double best = unreached;
    for (double d : dist) best = std::min(best, d);
    if (best == unreached)
        throw PreconditionError("lambda_m_exact_dense: no reachable path");
    report.lambda_m = best;
    int count = 0;
    for (double d : dist)
        if (d != unreached &&
            (d == best || std::abs(d - best) <= 1e-9 * std::max(1.0, std::abs(best))))
            ++count;
    report.multiplicity = count;
    return report;
}

// ---------------------------------------------------------------------------
// Algorithm-1 support-tracking bound
// ---------------------------------------------------------------------------

namespace {

// Full stabilizer group modulo phases from n independent commuting
// generators.  Independence is checked by symplectic Gaussian elimination.
std::vector<PauliString> stabilizer_group(
    const std::vector<PauliString>& gens) {
    if (gens.empty())
        throw PreconditionError("algorithm1_bound: no stabilizer generators");
    const int n = gens[0].num_qubits();
    if (static_cast<int>(gens.size()) != n)
        throw PreconditionError(
            "algorithm1_bound: need exactly n stabilizer generators");
    for (const auto& g : gens) {
        if (g.num_qubits() != n)
            throw DimensionError("algorithm1_bound: generator size mismatch");
        if (g.phase_exp() % 2 != 0)
            throw PreconditionError(
                "algorithm1_bound: generator phases must be +/-1");
        if (g.is_identity())
            throw PreconditionError("algorithm1_bound: identity generator");
    }
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = a + 1; b < gens.size(); ++b)
            if (!commutes(gens[a], gens[b]))
                throw PreconditionError(
                    "algorithm1_bound: generators do not commute "
                    "(not a stabilizer state)");
    // rank check over GF(2)
    std::vector<std::vector<int>> rows;
    for (const auto& g : gens) {
        std::vector<int> row(2 * n, 0);
        for (int q = 0; q < n; ++q) {
            row[q] = g.x(q) ? 1 : 0;
            row[n + q] = g.z(q) ? 1 : 0;
        }
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < 2 * n && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (rows[r][col]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < n; ++r)
            if (r != rank && rows[r][col])
                for (int cc = 0; cc < 2 * n; ++cc) rows[r][cc] ^= rows[rank][cc];
        ++rank;
    }
    if (rank != n)
        throw PreconditionError(
            "algorithm1_bound: generators are not independent "
            "(not a stabilizer state)");

    std::vector<PauliString> group;
    group.reserve(std::size_t(1) << n);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        PauliString p(n);
        for (int j = 0; j < n; ++j)
            if (mask & (1ull << j)) p = pauli_mul(p, gens[j]);
        group.push_back(p.canonical());
    }
    return group;
}

}  // namespace

bool stabilizer_contains(const std::vector<PauliString>& generators,
                         const PauliString& p) {
    if (generators.empty()) return p.is_identity();
    const int n = generators[0].num_qubits();
    if (p.num_qubits() != n)
        throw DimensionError("stabilizer_contains: qubit count mismatch");
    // solve sum_j c_j g_j = p over GF(2) in the symplectic representation
    std::vector<std::vector<int>> rows;
    for (const auto& g : generators) {
        std::vector<int> row(2 * n, 0);
        for (int q = 0; q < n; ++q) {
            row[q] = g.x(q) ? 1 : 0;
            row[n + q] = g.z(q) ? 1 : 0;
        }
        rows.push_back(std::move(row));
    }
    std::vector<int> target(2 * n, 0);
    for (int q = 0; q < n; ++q) {
        target[q] = p.x(q) ? 1 : 0;
        target[n + q] = p.z(q) ? 1 : 0;
    }
    const int m = static_cast<int>(rows.size());
    int rank = 0;
    for (int col = 0; col < 2 * n && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r)
            if (rows[r][col]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < m; ++r)
            if (r != rank && rows[r][col])
                for (int cc = 0; cc < 2 * n; ++cc) rows[r][cc] ^= rows[rank][cc];
        if (target[col]) {
            // eliminate the target with the same pivot
            for (int cc = 0; cc < 2 * n; ++cc) target[cc] ^= rows[rank][cc];
        }
        ++rank;
    }
    for (int cc = 0; cc < 2 * n; ++cc)
        if (target[cc]) return false;
    return true;
}

Algorithm1Result algorithm1_bound(const std::vector<PauliString>& stabilizers,
                                  const std::vector<CliffordTableau>& cliffords,
                                  const std::vector<NoiseLayer>& noise) {
    if (cliffords.size() != noise.size())
        throw DimensionError("algorithm1_bound: layer count mismatch");
    std::vector<PauliString> support = stabilizer_group(stabilizers);
    const int n = support[0].num_qubits();

    Algorithm1Result result;
    result.support_trace.push_back(support);
    for (size_t k = 0; k < cliffords.size(); ++k) {
        if (cliffords[k].num_qubits() != n)
            throw DimensionError("algorithm1_bound: clifford size mismatch");
        for (auto& s : support) s = conjugate(cliffords[k], s).canonical();

        double p_total = 0.0;
        std::map<PauliString, double> match;
        for (const auto& [p, w] : noise[k].terms) {
            if (p.num_qubits() != n)
                throw DimensionError("algorithm1_bound: noise string size mismatch");
            p_total += w;
            match[p.canonical()] += w;
        }

        double layer_min = 0.0;  // identity support string: log 1
        bool any = false;
        for (const auto& s : support) {
            if (s.is_identity()) continue;
            auto it = match.find(s);
            const double arg =
                1.0 - p_total + (it == match.end() ? 0.0 : it->second);
            const double val = log_or_neg_inf(arg);
            layer_min = any ? std::min(layer_min, val) : val;
            any = true;
        }
        if (!any) layer_min = 0.0;
        result.per_layer_min.push_back(layer_min);
        result.lambda_m_tilde += layer_min;
        result.support_trace.push_back(support);
        result.support_sizes.push_back(support.size());
    }
    return result;
}

// ---------------------------------------------------------------------------
// Supplemental combinatorics
// ---------------------------------------------------------------------------

std::int64_t sm_recurrence(int n) {
    if (n <= 0) throw DomainError("sm_recurrence: n must be >= 1");
    if (n > 40) throw ResourceError("sm_recurrence: result overflows int64");
    std::int64_t a1 = 3, a2 = 8;  // a_1, a_2
    if (n == 1) return a1;
    if (n == 2) return a2;
    for (int k = 3; k <= n; ++k) {
        const std::int64_t next = 2 * a2 + 2 * a1;
        a1 = a2;
        a2 = next;
    }
    return a2;
}

std::int64_t hea_min_multiplicity(int n, char axis) {
    if (n < 2) throw DomainError("hea_min_multiplicity: n must be >= 2");
    const std::int64_t a = sm_recurrence(n);
    if (axis == 'x') return a;
    if (axis == 'y') {
        std::int64_t p3 = 1;
        for (int k = 0; k < n; ++k) p3 *= 3;
        return p3 - a;
    }
    throw DomainError("hea_min_multiplicity: axis must be x or y");
}

// ---------------------------------------------------------------------------
// Analog bound
// ---------------------------------------------------------------------------

double analog_bound(const std::vector<AnalogBoundTerm>& terms, double T,
                    double dt) {
    if (!(T > 0.0)) throw DomainError("analog_bound: T must be > 0");
    if (!(dt > 0.0) || dt > T)
        throw DomainError("analog_bound: dt must lie in (0, T]");
    std::int64_t m = static_cast<std::int64_t>(std::llround(T / dt));
    if (m < 2) m = 2;
    if (m % 2 != 0) ++m;  // Simpson needs an even interval count
    const double h = T / static_cast<double>(m);

    auto integrand = [&](double t) {
        double best = 0.0;
        bool any = false;
        for (const auto& term : terms) {
            if (!term.present(t)) continue;
            const double v = term.rate(t);
            best = any ? std::max(best, v) : v;
            any = true;
        }
        return any ? best : 0.0;
    };

    double sum = integrand(0.0) + integrand(T);
    for (std::int64_t j = 1; j < m; ++j)
        sum += (j % 2 == 1 ? 4.0 : 2.0) * integrand(h * static_cast<double>(j));
    return sum * h / 3.0;
}

}  // namespace qmeta
