#include "qmeta/pauli_vector.hpp"

#include <cmath>

#include "qmeta/errors.hpp"

namespace qmeta {

PauliVector::PauliVector(int n_qubits) : n(n_qubits) {
    if (n < 1 || n > 14)
        throw ResourceError("PauliVector: qubit count out of range [1,14]");
    c.assign(std::size_t(1) << (2 * n), 0.0);
}

std::uint64_t PauliVector::index_of(const PauliString& p) {
    std::uint64_t idx = 0;
    for (int q = 0; q < p.num_qubits(); ++q) {
        std::uint64_t v = (p.x(q) ? 1u : 0u) | (p.z(q) ? 2u : 0u);
        idx |= v << (2 * q);
    }
    return idx;
}

PauliString PauliVector::string_at(std::uint64_t idx) const {
    PauliString p(n);
    for (int q = 0; q < n; ++q) {
        const int v = site(idx, q);
        p.set_x(q, v & 1);
        p.set_z(q, v & 2);
    }
    return p;
}

PauliVector PauliVector::zero_state(int n_qubits) {
    PauliVector v(n_qubits);
    const std::uint64_t total = v.size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        bool iz_only = true;
        for (int q = 0; q < n_qubits && iz_only; ++q) {
            const int s = site(idx, q);
            iz_only = (s == 0 || s == 2);
        }
        if (iz_only) v.c[idx] = 1.0;
    }
    return v;
}

PauliVector PauliVector::basis(int n_qubits, std::uint64_t idx) {
    PauliVector v(n_qubits);
    v.c[idx] = 1.0;
    return v;
}

PauliVector PauliVector::from_dense(const Eigen::MatrixXcd& rho) {
    const Eigen::Index dim = rho.rows();
    if (dim != rho.cols() || dim == 0 || (dim & (dim - 1)) != 0)
        throw ShapeError("from_dense: dimension is not a power of two");
    int n = 0;
    while ((Eigen::Index(1) << n) < dim) ++n;
    PauliVector v(n);
    for (std::uint64_t idx = 0; idx < v.size(); ++idx) {
        const std::complex<double> tr = (v.string_at(idx).matrix() * rho).trace();
        v.c[idx] = tr.real();
    }
    return v;
}

Eigen::MatrixXcd PauliVector::to_dense() const {
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t idx = 0; idx < size(); ++idx)
        if (c[idx] != 0.0) rho += c[idx] * string_at(idx).matrix();
    return rho / static_cast<double>(dim);
}

double PauliVector::purity_sum() const {
    double s = 0.0;
    for (double x : c) s += x * x;
    return s;
}

namespace kernels {

namespace {

// cyclic successor pairs: conjugation by exp(-i t/2 sigma^a) rotates the
// coefficients of the other two axes (a,b,b') with (a,b,b') cyclic:
//   c'[b]  = cos t * c[b]  - sin t * c[b']
//   c'[b'] = sin t * c[b]  + cos t * c[b']
struct RotPair {
    std::uint64_t vb, vbp;
};
RotPair rot_pair(char axis) {
    switch (axis) {
        case 'x': return {3u, 2u};  // (x: y->z)
        case 'y': return {2u, 1u};  // (y: z->x)
        case 'z': return {1u, 3u};  // (z: x->y)
        default: throw DomainError("apply_rotation: axis must be x, y or z");
    }
}

}  // namespace

void apply_rotation(PauliVector& v, char axis, int qubit, double theta,
                    Exec exec) {
    if (qubit < 0 || qubit >= v.n)
        throw DimensionError("apply_rotation: qubit index out of range");
    const auto [vb, vbp] = rot_pair(axis);
    const std::uint64_t mask = (vb ^ vbp) << (2 * qubit);
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    double* c = v.c.data();
    const std::int64_t total = static_cast<std::int64_t>(v.size());
    const std::uint64_t vb_shift = vb << (2 * qubit);
    const std::uint64_t field = 3ull << (2 * qubit);

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < total; ++idx) {
            if ((static_cast<std::uint64_t>(idx) & field) == vb_shift) {
                const std::uint64_t j = static_cast<std::uint64_t>(idx) ^ mask;
                const double a = c[idx];
                const double b = c[j];
                c[idx] = cs * a - sn * b;
                c[j] = sn * a + cs * b;
            }
        }
    } else {
        for (std::int64_t idx = 0; idx < total; ++idx) {
            if ((static_cast<std::uint64_t>(idx) & field) == vb_shift) {
                const std::uint64_t j = static_cast<std::uint64_t>(idx) ^ mask;
                const double a = c[idx];
                const double b = c[j];
                c[idx] = cs * a - sn * b;
                c[j] = sn * a + cs * b;
            }
        }
    }
}

LocalCliffordTable build_local_table(const CliffordTableau& tableau) {
    LocalCliffordTable t;
    t.width = tableau.num_qubits();
    const std::uint64_t total = 1ull << (2 * t.width);
    t.image.resize(total);
    t.sign.resize(total);
    PauliVector probe(t.width);
    for (std::uint64_t lv = 0; lv < total; ++lv) {
        const PauliString img = conjugate(tableau, probe.string_at(lv));
        if (img.phase_exp() % 2 != 0)
            throw PreconditionError("build_local_table: non-real image phase");
        t.image[lv] = static_cast<std::uint32_t>(PauliVector::index_of(img));
        t.sign[lv] = img.phase_exp() == 0 ? 1.0 : -1.0;
    }
    return t;
}

void apply_clifford(const PauliVector& in, PauliVector& out,
                    const LocalCliffordTable& table,
                    const std::vector<int>& qubits, Exec exec) {
    if (in.n != out.n || in.size() != out.size())
        throw DimensionError("apply_clifford: buffer size mismatch");
    if (static_cast<int>(qubits.size()) != table.width)
        throw DimensionError("apply_clifford: qubit list does not match table");
    const int w = table.width;
    std::uint64_t clear = 0;
    for (int j = 0; j < w; ++j) clear |= 3ull << (2 * qubits[j]);
    const double* ci = in.c.data();
    double* co = out.c.data();
    const std::int64_t total = static_cast<std::int64_t>(in.size());

    auto body = [&](std::int64_t idx) {
        std::uint64_t lv = 0;
        for (int j = 0; j < w; ++j)
            lv |= static_cast<std::uint64_t>(
                      PauliVector::site(static_cast<std::uint64_t>(idx), qubits[j]))
                  << (2 * j);
        const std::uint64_t img = table.image[lv];
        std::uint64_t jdx = static_cast<std::uint64_t>(idx) & ~clear;
        for (int j = 0; j < w; ++j)
            jdx |= ((img >> (2 * j)) & 3ull) << (2 * qubits[j]);
        co[jdx] = table.sign[lv] * ci[idx];
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < total; ++idx) body(idx);
    } else {
        for (std::int64_t idx = 0; idx < total; ++idx) body(idx);
    }
}

IndexMap build_index_map(
    int n,
    const std::vector<std::pair<LocalCliffordTable, std::vector<int>>>& gates) {
    const std::uint64_t total = 1ull << (2 * n);
    IndexMap map;
    map.image.resize(total);
    map.sign.assign(total, 1.0);
    for (std::uint64_t idx = 0; idx < total; ++idx)
        map.image[idx] = static_cast<std::uint32_t>(idx);
    for (const auto& [table, qubits] : gates) {
        const int w = table.width;
        if (static_cast<int>(qubits.size()) != w)
            throw DimensionError("build_index_map: qubit list mismatch");
        std::uint64_t clear = 0;
        for (int j = 0; j < w; ++j) clear |= 3ull << (2 * qubits[j]);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            const std::uint64_t cur = map.image[idx];
            std::uint64_t lv = 0;
            for (int j = 0; j < w; ++j)
                lv |= static_cast<std::uint64_t>(PauliVector::site(cur, qubits[j]))
                      << (2 * j);
            const std::uint64_t img = table.image[lv];
            std::uint64_t jdx = cur & ~clear;
            for (int j = 0; j < w; ++j)
                jdx |= ((img >> (2 * j)) & 3ull) << (2 * qubits[j]);
            map.image[idx] = static_cast<std::uint32_t>(jdx);
            map.sign[idx] *= table.sign[lv];
        }
    }
    return map;
}

void apply_index_map(const PauliVector& in, PauliVector& out,
                     const IndexMap& map, Exec exec) {
    if (in.size() != out.size() || map.image.size() != in.size())
        throw DimensionError("apply_index_map: size mismatch");
    const double* ci = in.c.data();
    double* co = out.c.data();
    const std::uint32_t* img = map.image.data();
    const double* sg = map.sign.data();
    const std::int64_t total = static_cast<std::int64_t>(in.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < total; ++idx)
            co[img[idx]] = sg[idx] * ci[idx];
    } else {
        for (std::int64_t idx = 0; idx < total; ++idx)
            co[img[idx]] = sg[idx] * ci[idx];
    }
}

void apply_scale(PauliVector& v, const std::vector<double>& factors,
                 Exec exec) {
    if (factors.size() != v.size())
        throw DimensionError("apply_scale: factor vector size mismatch");
    double* c = v.c.data();
    const double* f = factors.data();
    const std::int64_t total = static_cast<std::int64_t>(v.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < total; ++idx) c[idx] *= f[idx];
    } else {
        for (std::int64_t idx = 0; idx < total; ++idx) c[idx] *= f[idx];
    }
}

}  // namespace kernels

}  // namespace qmeta
