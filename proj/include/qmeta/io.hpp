#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmeta/channel.hpp"
#include "qmeta/circuit.hpp"
#include "qmeta/liouvillian.hpp"
#include "qmeta/resilience.hpp"
#include "qmeta/tableau.hpp"

namespace qmeta {

/// CSV emitter with a commented header block.  Every file starts with
/// "# key = value" lines echoing the resolved configuration (plus the
/// artifact version), then one column-name line, then the data rows.
/// Numbers are printed with "%.17g" so reruns are byte-identical.
class CsvWriter {
  public:
    CsvWriter(std::string path, std::vector<std::string> columns);

    void header(const std::string& key, const std::string& value);
    void header(const std::string& key, double value);
    void header(const std::string& key, std::int64_t value);

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

    /// Writes header block + rows to disk.
    void write() const;

    static std::string format_double(double v);

  private:
    std::string path_;
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> headers_;
    std::vector<std::string> rows_;
};

/// Parsed layered-circuit description for the resilience subcommand.
///
/// File format (one directive per line, '#' comments):
///   qubits N
///   layer
///     rx|ry|rz QUBIT ANGLE        # non-Clifford rotations
///     cz A B | h Q | s Q | x Q | y Q | z Q | cnot A B
///     noise PAULI WEIGHT [PAULI WEIGHT ...]
///   endlayer
/// Initial state is |0...0>.
struct CircuitFile {
    int n = 0;
    Circuit circuit;                        // rotations + cliffords + noise
    std::vector<CliffordTableau> cliffords; // per layer, composed
    std::vector<NoiseLayer> noise;          // per layer weighted lists
};

CircuitFile parse_circuit_file(const std::string& path);

/// Parsed generator description for the spectrum subcommand.
///
/// File format:
///   qubits N
///   h PAULI COEFF                 # Hamiltonian Pauli terms
///   jump PAULI RATE               # GKLS jump operators
///   channel perqubit QX QY QZ     # or: channel weighted P W [P W ...]
struct GeneratorFile {
    int n = 0;
    Liouvillian generator;
    std::optional<PauliChannel> channel;
};

GeneratorFile parse_generator_file(const std::string& path);

}  // namespace qmeta
