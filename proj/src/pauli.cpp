#include "qmeta/pauli.hpp"

#include <array>
#include <ostream>

#include <unsupported/Eigen/KroneckerProduct>

#include "qmeta/errors.hpp"

namespace qmeta {

namespace {

// site code 0..3 from (x,z): I=0, X=1, Z=2, Y=3
inline int site_code(bool x, bool z) { return (x ? 1 : 0) | (z ? 2 : 0); }

// product table for single-site Paulis: (a,b) -> (phase exponent k of i^k, code)
// codes: 0=I 1=X 2=Z 3=Y
struct SiteProd {
    int8_t k;
    int8_t code;
};
constexpr std::array<std::array<SiteProd, 4>, 4> kSiteProd = {{
    // I*. : I   X      Z      Y
    {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
    // X*. : X*I=X, X*X=I, X*Z=-iY, X*Y=iZ
    {{{0, 1}, {0, 0}, {3, 3}, {1, 2}}},
    // Z*. : Z*I=Z, Z*X=iY, Z*Z=I, Z*Y=-iX
    {{{0, 2}, {1, 3}, {0, 0}, {3, 1}}},
    // Y*. : Y*I=Y, Y*X=-iZ, Y*Z=iX, Y*Y=I
    {{{0, 3}, {3, 2}, {1, 1}, {0, 0}}},
}};

const char* kSiteChar = "IXZY";

}  // namespace

std::complex<double> PauliString::phase() const {
    switch (phase_) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

PauliString PauliString::canonical() const {
    PauliString p = *this;
    p.phase_ = 0;
    return p;
}

bool PauliString::is_identity() const {
    for (size_t j = 0; j < x_.size(); ++j)
        if (x_[j] || z_[j]) return false;
    return true;
}

bool operator<(const PauliString& a, const PauliString& b) {
    if (a.x_.size() != b.x_.size()) return a.x_.size() < b.x_.size();
    for (size_t j = 0; j < a.x_.size(); ++j) {
        int ca = site_code(a.x_[j], a.z_[j]);
        int cb = site_code(b.x_[j], b.z_[j]);
        if (ca != cb) return ca < cb;
    }
    return a.phase_ < b.phase_;
}

bool operator==(const PauliString& a, const PauliString& b) {
    return a.x_ == b.x_ && a.z_ == b.z_ && a.phase_ == b.phase_;
}

PauliString PauliString::from_label(const std::string& label) {
    size_t pos = 0;
    int k = 0;
    if (pos < label.size() && (label[pos] == '+' || label[pos] == '-')) {
        bool neg = label[pos] == '-';
        ++pos;
        if (pos < label.size() && label[pos] == 'i') {
            k = neg ? 3 : 1;
            ++pos;
        } else {
            k = neg ? 2 : 0;
        }
    } else if (pos < label.size() && label[pos] == 'i') {
        k = 1;
        ++pos;
    }
    PauliString p(static_cast<int>(label.size() - pos));
    for (int q = 0; pos < label.size(); ++pos, ++q) {
        switch (label[pos]) {
            case 'I': break;
            case 'X': p.set_x(q, true); break;
            case 'Z': p.set_z(q, true); break;
            case 'Y':
                p.set_x(q, true);
                p.set_z(q, true);
                break;
            default:
                throw ShapeError("invalid Pauli label character: " +
                                 std::string(1, label[pos]));
        }
    }
    p.set_phase_exp(k);
    return p;
}

std::string PauliString::label() const {
    std::string out;
    switch (phase_) {
        case 0: out = "+"; break;
        case 1: out = "+i"; break;
        case 2: out = "-"; break;
        default: out = "-i"; break;
    }
    for (size_t j = 0; j < x_.size(); ++j)
        out.push_back(kSiteChar[site_code(x_[j], z_[j])]);
    return out;
}

Eigen::MatrixXcd PauliString::matrix() const {
    using Eigen::MatrixXcd;
    const std::complex<double> i1(0.0, 1.0);
    MatrixXcd sig[4];
    sig[0] = MatrixXcd::Identity(2, 2);
    sig[1] = MatrixXcd::Zero(2, 2);
    sig[1] << 0, 1, 1, 0;
    sig[2] = MatrixXcd::Zero(2, 2);
    sig[2] << 1, 0, 0, -1;
    sig[3] = MatrixXcd::Zero(2, 2);
    sig[3] << 0, -i1, i1, 0;

    // qubit 0 is the leftmost tensor factor
    MatrixXcd m = MatrixXcd::Identity(1, 1);
    for (size_t j = 0; j < x_.size(); ++j) {
        const MatrixXcd& s = sig[site_code(x_[j], z_[j])];
        m = Eigen::kroneckerProduct(m, s).eval();
    }
    return phase() * m;
}

PauliString pauli_mul(const PauliString& p, const PauliString& q) {
    if (p.num_qubits() != q.num_qubits())
        throw DimensionError("pauli_mul: qubit counts differ");
    PauliString r(p.num_qubits());
    int k = p.phase_exp() + q.phase_exp();
    for (int j = 0; j < p.num_qubits(); ++j) {
        const SiteProd sp =
            kSiteProd[site_code(p.x(j), p.z(j))][site_code(q.x(j), q.z(j))];
        k += sp.k;
        r.set_x(j, sp.code & 1);
        r.set_z(j, sp.code & 2);
    }
    r.set_phase_exp(k);
    return r;
}

bool commutes(const PauliString& p, const PauliString& q) {
    if (p.num_qubits() != q.num_qubits())
        throw DimensionError("commutes: qubit counts differ");
    int acc = 0;
    for (int j = 0; j < p.num_qubits(); ++j)
        acc ^= (p.x(j) && q.z(j)) ^ (p.z(j) && q.x(j));
    return acc == 0;
}

PauliString single_site(int n, int qubit, char axis) {
    PauliString p(n);
    switch (axis) {
        case 'x': p.set_x(qubit, true); break;
        case 'z': p.set_z(qubit, true); break;
        case 'y':
            p.set_x(qubit, true);
            p.set_z(qubit, true);
            break;
        default: throw DomainError("single_site: axis must be x, y or z");
    }
    return p;
}

std::ostream& operator<<(std::ostream& os, const PauliString& p) {
    return os << p.label();
}

}  // namespace qmeta
