#include "qmeta/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmeta/errors.hpp"
#include "qmeta/version.hpp"

namespace qmeta {

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns)
    : path_(std::move(path)), columns_(std::move(columns)) {
    headers_.emplace_back("artifact_version", kVersion);
}

void CsvWriter::header(const std::string& key, const std::string& value) {
    headers_.emplace_back(key, value);
}

void CsvWriter::header(const std::string& key, double value) {
    headers_.emplace_back(key, format_double(value));
}

void CsvWriter::header(const std::string& key, std::int64_t value) {
    headers_.emplace_back(key, std::to_string(value));
}

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    std::string line;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) line.push_back(',');
        line += format_double(values[i]);
    }
    rows_.push_back(std::move(line));
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    std::string line;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) line.push_back(',');
        line += values[i];
    }
    rows_.push_back(std::move(line));
}

void CsvWriter::write() const {
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path_);
    for (const auto& [k, v] : headers_) out << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto& r : rows_) out << r << "\n";
    if (!out) throw ConfigError("failed writing output file: " + path_);
}

// ---------------------------------------------------------------------------
// Circuit files
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

[[noreturn]] void fail(const std::string& path, int lineno,
                       const std::string& msg) {
    throw ConfigError(path + ":" + std::to_string(lineno) + ": " + msg);
}

double parse_number(const std::string& path, int lineno, const std::string& s) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(path, lineno, "expected a number, got '" + s + "'");
    }
}

int parse_int(const std::string& path, int lineno, const std::string& s) {
    const double v = parse_number(path, lineno, s);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        fail(path, lineno, "expected an integer, got '" + s + "'");
    return i;
}

}  // namespace

CircuitFile parse_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open circuit file: " + path);

    int n = 0;
    bool in_layer = false;
    std::vector<Layer> layers;
    std::vector<CliffordTableau> layer_cliffords;
    std::vector<NoiseLayer> layer_noise;
    std::vector<Gate> gates;
    CliffordTableau composed = CliffordTableau::identity(1);
    NoiseLayer noise;

    auto require_n = [&](int lineno) {
        if (n == 0) fail(path, lineno, "'qubits N' must come first");
    };
    auto qubit_in_range = [&](int lineno, int q) {
        if (q < 0 || q >= n) fail(path, lineno, "qubit index out of range");
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];

        if (kw == "qubits") {
            if (n != 0) fail(path, lineno, "duplicate 'qubits'");
            if (tok.size() != 2) fail(path, lineno, "usage: qubits N");
            n = parse_int(path, lineno, tok[1]);
            if (n < 1 || n > 12) fail(path, lineno, "qubits must be in [1,12]");
        } else if (kw == "layer") {
            require_n(lineno);
            if (in_layer) fail(path, lineno, "nested 'layer'");
            in_layer = true;
            gates.clear();
            noise = NoiseLayer{};
            composed = CliffordTableau::identity(n);
        } else if (kw == "endlayer") {
            if (!in_layer) fail(path, lineno, "'endlayer' outside a layer");
            in_layer = false;
            try {
                layers.push_back(Layer{gates, noise.terms.empty()
                                                  ? PauliChannel::identity(n)
                                                  : PauliChannel::weighted(
                                                        n, noise.terms)});
            } catch (const std::exception& e) {
                fail(path, lineno, e.what());
            }
            layer_cliffords.push_back(composed);
            layer_noise.push_back(noise);
        } else if (kw == "rx" || kw == "ry" || kw == "rz") {
            if (!in_layer) fail(path, lineno, "gate outside a layer");
            if (tok.size() != 3) fail(path, lineno, "usage: r{x,y,z} QUBIT ANGLE");
            const int q = parse_int(path, lineno, tok[1]);
            qubit_in_range(lineno, q);
            gates.push_back(
                Rotation{kw[1], q, parse_number(path, lineno, tok[2])});
        } else if (kw == "cz" || kw == "cnot") {
            if (!in_layer) fail(path, lineno, "gate outside a layer");
            if (tok.size() != 3) fail(path, lineno, "usage: " + kw + " A B");
            const int a = parse_int(path, lineno, tok[1]);
            const int b = parse_int(path, lineno, tok[2]);
            qubit_in_range(lineno, a);
            qubit_in_range(lineno, b);
            if (a == b) fail(path, lineno, "two-qubit gate needs distinct qubits");
            const CliffordTableau local =
                kw == "cz" ? gates::cz() : gates::cnot();
            if (kw == "cz")
                gates.push_back(ControlledZ{a, b});
            else
                gates.push_back(CliffordGate{local, {a, b}});
            composed = local.embed(n, {a, b}).compose(composed);
        } else if (kw == "h" || kw == "s" || kw == "x" || kw == "y" ||
                   kw == "z") {
            if (!in_layer) fail(path, lineno, "gate outside a layer");
            if (tok.size() != 2) fail(path, lineno, "usage: " + kw + " QUBIT");
            const int q = parse_int(path, lineno, tok[1]);
            qubit_in_range(lineno, q);
            CliffordTableau local = kw == "h"   ? gates::h()
                                    : kw == "s" ? gates::s()
                                    : kw == "x" ? gates::x()
                                    : kw == "y" ? gates::y()
                                                : gates::z();
            gates.push_back(CliffordGate{local, {q}});
            composed = local.embed(n, {q}).compose(composed);
        } else if (kw == "tableau") {
            // arbitrary Clifford from generator images:
            //   tableau Q0 [Q1 ...]
            //     X0 -> +XZ
            //     Z0 -> +ZI
            //     ...
            //   endtableau
            if (!in_layer) fail(path, lineno, "'tableau' outside a layer");
            if (tok.size() < 2) fail(path, lineno, "usage: tableau Q0 [Q1 ...]");
            std::vector<int> qubits;
            for (size_t i = 1; i < tok.size(); ++i) {
                const int q = parse_int(path, lineno, tok[i]);
                qubit_in_range(lineno, q);
                qubits.push_back(q);
            }
            const int w = static_cast<int>(qubits.size());
            std::vector<PauliString> ix(w), iz(w);
            std::vector<bool> seen(2 * w, false);
            while (std::getline(in, line)) {
                ++lineno;
                const auto t2 = tokenize(line);
                if (t2.empty()) continue;
                if (t2[0] == "endtableau") break;
                if (t2.size() != 3 || t2[1] != "->")
                    fail(path, lineno, "expected 'X<j> -> <pauli>' image line");
                const char kind = t2[0][0];
                if ((kind != 'X' && kind != 'Z') || t2[0].size() < 2)
                    fail(path, lineno, "generator must be X<j> or Z<j>");
                const int j = parse_int(path, lineno, t2[0].substr(1));
                if (j < 0 || j >= w)
                    fail(path, lineno, "generator index out of range");
                PauliString img;
                try {
                    img = PauliString::from_label(t2[2]);
                } catch (const std::exception& e) {
                    fail(path, lineno, e.what());
                }
                if (img.num_qubits() != w)
                    fail(path, lineno, "image length must match tableau width");
                (kind == 'X' ? ix : iz)[j] = img;
                seen[(kind == 'X' ? 0 : w) + j] = true;
            }
            for (bool s_ : seen)
                if (!s_) fail(path, lineno, "tableau is missing generator images");
            CliffordTableau local = CliffordTableau::identity(1);
            try {
                local = CliffordTableau(std::move(ix), std::move(iz));
            } catch (const std::exception& e) {
                fail(path, lineno, e.what());
            }
            gates.push_back(CliffordGate{local, qubits});
            composed = local.embed(n, qubits).compose(composed);
        } else if (kw == "noise") {
            if (!in_layer) fail(path, lineno, "'noise' outside a layer");
            if (tok.size() < 3 || tok.size() % 2 == 0)
                fail(path, lineno, "usage: noise PAULI WEIGHT [...]");
            for (size_t i = 1; i + 1 < tok.size(); i += 2) {
                PauliString p;
                try {
                    p = PauliString::from_label(tok[i]);
                } catch (const std::exception& e) {
                    fail(path, lineno, e.what());
                }
                if (p.num_qubits() != n)
                    fail(path, lineno, "noise string has wrong length");
                noise.terms.emplace_back(
                    p, parse_number(path, lineno, tok[i + 1]));
            }
        } else {
            fail(path, lineno, "unknown directive '" + kw + "'");
        }
    }
    if (in_layer) fail(path, lineno, "missing 'endlayer'");
    if (n == 0) fail(path, lineno, "missing 'qubits'");
    if (layers.empty()) fail(path, lineno, "no layers");

    return CircuitFile{n, Circuit(n, std::move(layers)),
                       std::move(layer_cliffords), std::move(layer_noise)};
}

// ---------------------------------------------------------------------------
// Generator files
// ---------------------------------------------------------------------------

GeneratorFile parse_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open generator file: " + path);

    int n = 0;
    std::vector<std::pair<PauliString, double>> hterms;
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;
    std::optional<PauliChannel> channel;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "qubits") {
            if (tok.size() != 2) fail(path, lineno, "usage: qubits N");
            n = parse_int(path, lineno, tok[1]);
            if (n < 1 || n > 5)
                fail(path, lineno, "dense generators support 1..5 qubits");
        } else if (kw == "h") {
            if (n == 0) fail(path, lineno, "'qubits N' must come first");
            if (tok.size() != 3) fail(path, lineno, "usage: h PAULI COEFF");
            PauliString p = PauliString::from_label(tok[1]);
            if (p.num_qubits() != n) fail(path, lineno, "wrong Pauli length");
            hterms.emplace_back(p, parse_number(path, lineno, tok[2]));
        } else if (kw == "jump") {
            if (n == 0) fail(path, lineno, "'qubits N' must come first");
            if (tok.size() != 3) fail(path, lineno, "usage: jump PAULI RATE");
            PauliString p = PauliString::from_label(tok[1]);
            if (p.num_qubits() != n) fail(path, lineno, "wrong Pauli length");
            jumps.emplace_back(p.matrix(), parse_number(path, lineno, tok[2]));
        } else if (kw == "channel") {
            if (n == 0) fail(path, lineno, "'qubits N' must come first");
            if (tok.size() < 2) fail(path, lineno, "usage: channel KIND ...");
            if (tok[1] == "perqubit") {
                if (tok.size() != 5)
                    fail(path, lineno, "usage: channel perqubit QX QY QZ");
                PauliChannel::QTriple q = {
                    parse_number(path, lineno, tok[2]),
                    parse_number(path, lineno, tok[3]),
                    parse_number(path, lineno, tok[4])};
                channel = PauliChannel::uniform(n, q);
            } else if (tok[1] == "weighted") {
                if (tok.size() < 4 || tok.size() % 2 != 0)
                    fail(path, lineno,
                         "usage: channel weighted PAULI W [PAULI W ...]");
                std::vector<std::pair<PauliString, double>> terms;
                for (size_t i = 2; i + 1 < tok.size(); i += 2) {
                    PauliString p = PauliString::from_label(tok[i]);
                    if (p.num_qubits() != n)
                        fail(path, lineno, "wrong Pauli length");
                    terms.emplace_back(p,
                                       parse_number(path, lineno, tok[i + 1]));
                }
                channel = PauliChannel::weighted(n, terms);
            } else {
                fail(path, lineno, "channel kind must be perqubit or weighted");
            }
        } else {
            fail(path, lineno, "unknown directive '" + kw + "'");
        }
    }
    if (n == 0) fail(path, lineno, "missing 'qubits'");

    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, c] : hterms) h += c * p.matrix();
    return GeneratorFile{n, Liouvillian(h, std::move(jumps)),
                         std::move(channel)};
}

}  // namespace qmeta
