#include "qmeta/tableau.hpp"

#include <sstream>

#include "qmeta/errors.hpp"

namespace qmeta {

namespace {

void check_images(const std::vector<PauliString>& xs,
                  const std::vector<PauliString>& zs) {
    const int n = static_cast<int>(xs.size());
    if (static_cast<int>(zs.size()) != n)
        throw DimensionError("tableau: generator image lists differ in size");
    for (int j = 0; j < n; ++j) {
        if (xs[j].num_qubits() != n || zs[j].num_qubits() != n)
            throw DimensionError("tableau: image qubit count mismatch");
        if (xs[j].phase_exp() % 2 != 0 || zs[j].phase_exp() % 2 != 0)
            throw PreconditionError("tableau: image phases must be +/-1");
    }
    // symplectic form: [X_j, Z_j] anticommute, everything else commutes
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (commutes(xs[j], zs[k]) != (j != k))
                throw PreconditionError(
                    "tableau: images do not preserve commutation relations");
            if (!commutes(xs[j], xs[k]) || !commutes(zs[j], zs[k]))
                throw PreconditionError(
                    "tableau: images do not preserve commutation relations");
        }
    }
}

}  // namespace

CliffordTableau CliffordTableau::identity(int n) {
    std::vector<PauliString> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (int j = 0; j < n; ++j) {
        xs.push_back(single_site(n, j, 'x'));
        zs.push_back(single_site(n, j, 'z'));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

CliffordTableau::CliffordTableau(std::vector<PauliString> images_x,
                                 std::vector<PauliString> images_z)
    : images_x_(std::move(images_x)), images_z_(std::move(images_z)) {
    check_images(images_x_, images_z_);
}

PauliString conjugate(const CliffordTableau& tableau, const PauliString& p) {
    const int n = tableau.num_qubits();
    if (p.num_qubits() != n)
        throw DimensionError("conjugate: qubit counts differ");
    // P = i^k * prod_j X_j^{x_j} Z_j^{z_j}  with k = phase + (# of Y sites,
    // since Y = i X Z); the image is the same ordered product over the
    // conjugated generators, with pauli_mul tracking phases exactly.
    PauliString out(n);
    int k = p.phase_exp();
    for (int j = 0; j < n; ++j) {
        if (p.x(j) && p.z(j)) ++k;
        if (p.x(j)) out = pauli_mul(out, tableau.image_x(j));
        if (p.z(j)) out = pauli_mul(out, tableau.image_z(j));
    }
    out.set_phase_exp(out.phase_exp() + k);
    return out;
}

CliffordTableau CliffordTableau::compose(const CliffordTableau& other) const {
    if (other.num_qubits() != num_qubits())
        throw DimensionError("compose: qubit counts differ");
    std::vector<PauliString> xs, zs;
    xs.reserve(num_qubits());
    zs.reserve(num_qubits());
    for (int j = 0; j < num_qubits(); ++j) {
        xs.push_back(conjugate(*this, other.image_x(j)));
        zs.push_back(conjugate(*this, other.image_z(j)));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

CliffordTableau CliffordTableau::embed(int n,
                                       const std::vector<int>& qubits) const {
    const int w = num_qubits();
    if (static_cast<int>(qubits.size()) != w)
        throw DimensionError("embed: qubit list does not match tableau width");
    auto lift = [&](const PauliString& local) {
        PauliString out(n);
        for (int j = 0; j < w; ++j) {
            out.set_x(qubits[j], local.x(j));
            out.set_z(qubits[j], local.z(j));
        }
        out.set_phase_exp(local.phase_exp());
        return out;
    };
    CliffordTableau id = identity(n);
    std::vector<PauliString> xs, zs;
    for (int q = 0; q < n; ++q) {
        xs.push_back(id.image_x(q));
        zs.push_back(id.image_z(q));
    }
    for (int j = 0; j < w; ++j) {
        xs[qubits[j]] = lift(image_x(j));
        zs[qubits[j]] = lift(image_z(j));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

std::string CliffordTableau::describe() const {
    std::ostringstream os;
    for (int j = 0; j < num_qubits(); ++j)
        os << "X" << j << " -> " << images_x_[j].label() << "\n"
           << "Z" << j << " -> " << images_z_[j].label() << "\n";
    return os.str();
}

namespace gates {

namespace {
CliffordTableau from_labels(const std::vector<std::string>& xs,
                            const std::vector<std::string>& zs) {
    std::vector<PauliString> ix, iz;
    for (const auto& s : xs) ix.push_back(PauliString::from_label(s));
    for (const auto& s : zs) iz.push_back(PauliString::from_label(s));
    return CliffordTableau(std::move(ix), std::move(iz));
}
}  // namespace

CliffordTableau h() { return from_labels({"+Z"}, {"+X"}); }
CliffordTableau s() { return from_labels({"+Y"}, {"+Z"}); }
CliffordTableau x() { return from_labels({"+X"}, {"-Z"}); }
CliffordTableau y() { return from_labels({"-X"}, {"-Z"}); }
CliffordTableau z() { return from_labels({"-X"}, {"+Z"}); }
CliffordTableau cz() { return from_labels({"+XZ", "+ZX"}, {"+ZI", "+IZ"}); }
CliffordTableau cnot() { return from_labels({"+XX", "+IX"}, {"+ZI", "+ZZ"}); }

}  // namespace gates

}  // namespace qmeta
