#include "qmeta/circuit.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qmeta/errors.hpp"

namespace qmeta {

Circuit::Circuit(int n_qubits, std::vector<Layer> ls)
    : n(n_qubits), layers(std::move(ls)) {
    if (layers.empty()) throw PreconditionError("Circuit: needs at least one layer");
    for (const auto& layer : layers) {
        if (layer.noise.num_qubits() != n)
            throw DimensionError("Circuit: layer noise qubit count mismatch");
        for (const auto& g : layer.gates) {
            if (const auto* r = std::get_if<Rotation>(&g)) {
                if (r->qubit < 0 || r->qubit >= n)
                    throw DimensionError("Circuit: rotation qubit out of range");
                if (!std::isfinite(r->angle))
                    throw PreconditionError("Circuit: non-finite angle");
            } else if (const auto* cz = std::get_if<ControlledZ>(&g)) {
                if (cz->a < 0 || cz->a >= n || cz->b < 0 || cz->b >= n ||
                    cz->a == cz->b)
                    throw DimensionError("Circuit: CZ qubits out of range");
            } else {
                const auto& cg = std::get<CliffordGate>(g);
                if (cg.tableau.num_qubits() !=
                    static_cast<int>(cg.qubits.size()))
                    throw DimensionError("Circuit: clifford qubit list mismatch");
                for (int q : cg.qubits)
                    if (q < 0 || q >= n)
                        throw DimensionError("Circuit: clifford qubit out of range");
            }
        }
    }
}

Observable::Observable(int n, std::vector<std::pair<PauliString, double>> terms)
    : n_(n), terms_(std::move(terms)) {
    for (auto& [p, c] : terms_) {
        if (p.num_qubits() != n_)
            throw DimensionError("Observable: term qubit count mismatch");
        p = p.canonical();
    }
}

Observable Observable::zz(int n, int a, int b) {
    PauliString p(n);
    p.set_z(a, true);
    p.set_z(b, true);
    return Observable(n, {{p, 1.0}});
}

double Observable::identity_coefficient() const {
    double c = 0.0;
    for (const auto& [p, w] : terms_)
        if (p.is_identity()) c += w;
    return c;
}

Eigen::MatrixXcd Observable::matrix() const {
    const Eigen::Index dim = Eigen::Index(1) << n_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, w] : terms_) m += w * p.matrix();
    return m;
}

Circuit build_hea(int n, int layers, char axis,
                  const std::vector<std::vector<double>>& thetas,
                  const PauliChannel& noise) {
    if (axis == 'z')
        throw DomainError("build_hea: axis z yields a trivial circuit on |0...0>");
    if (axis != 'x' && axis != 'y')
        throw DomainError("build_hea: axis must be x or y");
    if (static_cast<int>(thetas.size()) != layers)
        throw DimensionError("build_hea: theta rows != layers");
    std::vector<Layer> ls;
    ls.reserve(layers);
    for (int k = 0; k < layers; ++k) {
        if (static_cast<int>(thetas[k].size()) != n)
            throw DimensionError("build_hea: theta columns != qubits");
        Layer layer{{}, noise};
        for (int q = 0; q < n; ++q)
            layer.gates.push_back(Rotation{axis, q, thetas[k][q]});
        for (int q = 0; q + 1 < n; ++q)
            layer.gates.push_back(ControlledZ{q, q + 1});
        ls.push_back(std::move(layer));
    }
    return Circuit(n, std::move(ls));
}

// ---------------------------------------------------------------------------
// Pauli-coefficient engine
// ---------------------------------------------------------------------------

VectorEngine::VectorEngine(const Circuit& c, kernels::Exec exec)
    : circuit_(c), exec_(exec), scratch_(c.n) {
    channel_factors_.reserve(c.layers.size());
    cliffords_.resize(c.layers.size());
    for (size_t k = 0; k < c.layers.size(); ++k) {
        const auto& layer = c.layers[k];
        channel_factors_.push_back(layer.noise.is_identity_channel()
                                       ? std::vector<double>{}
                                       : eigenvalue_vector(layer.noise));
        for (const auto& g : layer.gates) {
            if (const auto* cg = std::get_if<CliffordGate>(&g))
                cliffords_[k].push_back(
                    {kernels::build_local_table(cg->tableau), cg->qubits});
            else if (std::holds_alternative<ControlledZ>(g))
                cliffords_[k].push_back({kernels::build_local_table(gates::cz()),
                                         {}});
        }
    }
}

void VectorEngine::run(
    PauliVector& state, bool noisy,
    const std::function<void(int, const PauliVector&)>& snapshot) const {
    if (state.n != circuit_.n)
        throw DimensionError("VectorEngine::run: state size mismatch");
    for (size_t k = 0; k < circuit_.layers.size(); ++k) {
        const auto& layer = circuit_.layers[k];
        size_t cliff = 0;
        for (const auto& g : layer.gates) {
            if (const auto* r = std::get_if<Rotation>(&g)) {
                kernels::apply_rotation(state, r->axis, r->qubit, r->angle,
                                        exec_);
            } else if (const auto* cz = std::get_if<ControlledZ>(&g)) {
                kernels::apply_clifford(state, scratch_,
                                        cliffords_[k][cliff].table,
                                        {cz->a, cz->b}, exec_);
                std::swap(state.c, scratch_.c);
                ++cliff;
            } else {
                const auto& pc = cliffords_[k][cliff];
                kernels::apply_clifford(state, scratch_, pc.table, pc.qubits,
                                        exec_);
                std::swap(state.c, scratch_.c);
                ++cliff;
            }
        }
        if (noisy && !channel_factors_[k].empty())
            kernels::apply_scale(state, channel_factors_[k], exec_);
        if (snapshot) snapshot(static_cast<int>(k) + 1, state);
    }
}

PauliVector run_ideal(const Circuit& c, const PauliVector& in,
                      kernels::Exec exec) {
    PauliVector state = in;
    VectorEngine(c, exec).run(state, false);
    return state;
}

PauliVector run_noisy(const Circuit& c, const PauliVector& in,
                      kernels::Exec exec) {
    PauliVector state = in;
    VectorEngine(c, exec).run(state, true);
    return state;
}

// ---------------------------------------------------------------------------
// Dense reference engine
// ---------------------------------------------------------------------------

namespace {

Eigen::Matrix2cd rotation_matrix(char axis, double angle) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd s;
    switch (axis) {
        case 'x': s << 0, 1, 1, 0; break;
        case 'y': s << 0, -1i, 1i, 0; break;
        case 'z': s << 1, 0, 0, -1; break;
        default: throw DomainError("rotation_matrix: bad axis");
    }
    return std::cos(angle / 2) * Eigen::Matrix2cd::Identity() -
           1i * std::sin(angle / 2) * s;
}

Eigen::MatrixXcd embed_single(const Eigen::Matrix2cd& u, int n, int qubit) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        if (q == qubit)
            m = Eigen::kroneckerProduct(m, u).eval();
        else
            m = Eigen::kroneckerProduct(m, Eigen::Matrix2cd::Identity()).eval();
    }
    return m;
}

}  // namespace

Eigen::MatrixXcd gate_matrix(const Gate& g, int n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (const auto* r = std::get_if<Rotation>(&g))
        return embed_single(rotation_matrix(r->axis, r->angle), n, r->qubit);
    if (const auto* cz = std::get_if<ControlledZ>(&g)) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const bool ba = (i >> (n - 1 - cz->a)) & 1;
            const bool bb = (i >> (n - 1 - cz->b)) & 1;
            if (ba && bb) m(i, i) = -1.0;
        }
        return m;
    }
    throw UnsupportedBasisError(
        "gate_matrix: generic clifford gates have no unique dense matrix; "
        "the dense engine conjugates them through the Pauli expansion");
}

namespace {

// Apply one layer's unitaries to a dense state.  Clifford gates are applied
// by conjugating the Pauli expansion through the tableau (the tableau fixes
// the unitary only up to phase, which conjugation does not see).
Eigen::MatrixXcd apply_layer_dense(const Layer& layer, int n,
                                   Eigen::MatrixXcd rho) {
    for (const auto& g : layer.gates) {
        if (std::holds_alternative<CliffordGate>(g)) {
            const auto& cg = std::get<CliffordGate>(g);
            const CliffordTableau full =
                cg.tableau.embed(n, cg.qubits);
            PauliVector v = PauliVector::from_dense(rho);
            PauliVector out(n);
            for (std::uint64_t idx = 0; idx < v.size(); ++idx) {
                if (v.c[idx] == 0.0) continue;
                const PauliString img = conjugate(full, v.string_at(idx));
                const double sign = img.phase_exp() == 0 ? 1.0 : -1.0;
                out.c[PauliVector::index_of(img)] += sign * v.c[idx];
            }
            rho = out.to_dense();
        } else {
            const Eigen::MatrixXcd u = gate_matrix(g, n);
            rho = u * rho * u.adjoint();
        }
    }
    return rho;
}

}  // namespace

Eigen::MatrixXcd run_ideal_dense(const Circuit& c, const Eigen::MatrixXcd& in) {
    if (c.n > 6) throw ResourceError("run_ideal_dense: n > 6");
    Eigen::MatrixXcd rho = in;
    for (const auto& layer : c.layers) rho = apply_layer_dense(layer, c.n, rho);
    return rho;
}

Eigen::MatrixXcd run_noisy_dense(const Circuit& c, const Eigen::MatrixXcd& in) {
    if (c.n > 6) throw ResourceError("run_noisy_dense: n > 6");
    Eigen::MatrixXcd rho = in;
    for (const auto& layer : c.layers) {
        rho = apply_layer_dense(layer, c.n, rho);
        if (!layer.noise.is_identity_channel())
            rho = apply_channel(layer.noise, rho);
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Cost functions and gradients
// ---------------------------------------------------------------------------

double cost(const PauliVector& rho, const Observable& o) {
    if (o.num_qubits() != rho.n)
        throw DimensionError("cost: observable qubit count mismatch");
    double out = 0.0;
    for (const auto& [p, w] : o.terms())
        out += w * rho.c[PauliVector::index_of(p)];
    return out;
}

double cost(const Eigen::MatrixXcd& rho, const Observable& o) {
    return (o.matrix() * rho).trace().real();
}

double mixed_distance(const PauliVector& rho, const Observable& o) {
    return std::abs(cost(rho, o) - o.identity_coefficient());
}

double gradient(const Circuit& c, const PauliVector& rho_in, const Observable& o,
                int layer, int rotation_index, bool noisy, kernels::Exec exec) {
    if (layer < 0 || layer >= c.depth())
        throw DimensionError("gradient: layer index out of range");
    // locate the rotation
    int seen = 0;
    int gate_pos = -1;
    const auto& gates_in_layer = c.layers[layer].gates;
    for (size_t i = 0; i < gates_in_layer.size(); ++i) {
        if (std::holds_alternative<Rotation>(gates_in_layer[i])) {
            if (seen == rotation_index) {
                gate_pos = static_cast<int>(i);
                break;
            }
            ++seen;
        }
    }
    if (gate_pos < 0)
        throw DimensionError("gradient: rotation index out of range");

    auto shifted_cost = [&](double delta) {
        Circuit shifted = c;
        std::get<Rotation>(shifted.layers[layer].gates[gate_pos]).angle += delta;
        PauliVector state = rho_in;
        VectorEngine(shifted, exec).run(state, noisy);
        return cost(state, o);
    };
    constexpr double half_pi = 1.5707963267948966;
    return (shifted_cost(half_pi) - shifted_cost(-half_pi)) / 2.0;
}

}  // namespace qmeta
