#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmeta/channel.hpp"

namespace qmeta {

/// Configuration of the barren-plateau depth sweep.
struct NibpConfig {
    int n = 8;
    std::vector<int> layer_grid;            // snapshot depths, ascending
    std::vector<char> axes = {'x', 'y'};
    PauliChannel::QTriple q = {0.5, 0.0, 0.5};
    int samples = 1000;
    std::uint64_t seed = 7;
    int grad_layer = 0;   // parameter theta_{1,1}
    int grad_qubit = 0;
};

/// One (axis, depth) row of sweep statistics.
struct NibpRow {
    char axis;
    int layers;
    double mean_abs_grad;
    double sem_abs_grad;
    double mean_distance;
    double sem_distance;
    double mean_signed_grad;   // mean of the signed derivative, for reference
    double sem_signed_grad;
    double mean_ideal_distance;
    double sem_ideal_distance;
};

/// Run the sweep.  Angles are i.i.d. uniform on [0, 2pi), drawn per sample
/// from a seed-derived stream; every depth in layer_grid is evaluated as a
/// prefix of the same depth-L_max draw.  Sample loops are OpenMP-parallel
/// with per-sample slots, so results do not depend on the thread count.
std::vector<NibpRow> run_nibp(const NibpConfig& config);

}  // namespace qmeta
