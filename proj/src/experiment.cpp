#include "qmeta/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "qmeta/circuit.hpp"
#include "qmeta/errors.hpp"
#include "qmeta/rng.hpp"
#include "qmeta/tableau.hpp"

namespace qmeta {

namespace {

struct MeanSem {
    double mean;
    double sem;
};

MeanSem mean_sem(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace

std::vector<NibpRow> run_nibp(const NibpConfig& config) {
    if (config.layer_grid.empty())
        throw ConfigError("run_nibp: empty layer grid");
    if (!std::is_sorted(config.layer_grid.begin(), config.layer_grid.end()))
        throw ConfigError("run_nibp: layer grid must be ascending");
    if (config.layer_grid.front() < 1)
        throw ConfigError("run_nibp: depths must be >= 1");
    if (config.samples < 2) throw ConfigError("run_nibp: need >= 2 samples");
    const int n = config.n;
    const int l_max = config.layer_grid.back();
    const int n_grid = static_cast<int>(config.layer_grid.size());
    const Observable obs = Observable::zz(n, 0, 1);
    const double mix = obs.identity_coefficient();
    constexpr double two_pi = 6.283185307179586;
    constexpr double half_pi = 1.5707963267948966;

    // shared per-run machinery: the channel factor vector is the same for
    // every layer and sample, and the whole CZ chain fuses into one
    // signed permutation of the index space
    const std::vector<double> factors =
        eigenvalue_vector(PauliChannel::uniform(n, config.q));
    const kernels::LocalCliffordTable cz_table =
        kernels::build_local_table(gates::cz());
    std::vector<std::pair<kernels::LocalCliffordTable, std::vector<int>>>
        chain;
    for (int q = 0; q + 1 < n; ++q)
        chain.emplace_back(cz_table, std::vector<int>{q, q + 1});
    const kernels::IndexMap chain_map = kernels::build_index_map(n, chain);

    std::vector<NibpRow> rows;
    for (char axis : config.axes) {
        // per-sample value slots, [sample][grid]
        std::vector<std::vector<double>> grad(config.samples),
            dist(config.samples), ideal(config.samples);

#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < config.samples; ++s) {
            SplitMix64 rng(derive_seed(config.seed, (std::uint64_t(axis) << 32) |
                                                        std::uint64_t(s)));
            std::vector<double> thetas(std::size_t(l_max) * n);
            for (auto& th : thetas) th = two_pi * rng.uniform();

            PauliVector state(n), scratch(n);
            auto curve = [&](double shift, bool noisy,
                             std::vector<double>& values) {
                state = PauliVector::zero_state(n);
                int next = 0;
                for (int k = 0; k < l_max; ++k) {
                    for (int q = 0; q < n; ++q) {
                        double th = thetas[std::size_t(k) * n + q];
                        if (k == config.grad_layer && q == config.grad_qubit)
                            th += shift;
                        kernels::apply_rotation(state, axis, q, th,
                                                kernels::Exec::serial);
                    }
                    kernels::apply_index_map(state, scratch, chain_map,
                                             kernels::Exec::serial);
                    std::swap(state.c, scratch.c);
                    if (noisy)
                        kernels::apply_scale(state, factors,
                                             kernels::Exec::serial);
                    while (next < n_grid && config.layer_grid[next] == k + 1)
                        values[next++] = cost(state, obs);
                }
            };

            std::vector<double> base(n_grid), plus(n_grid), minus(n_grid),
                noiseless(n_grid);
            curve(0.0, true, base);
            curve(half_pi, true, plus);
            curve(-half_pi, true, minus);
            curve(0.0, false, noiseless);

            grad[s].resize(n_grid);
            dist[s].resize(n_grid);
            ideal[s].resize(n_grid);
            for (int g = 0; g < n_grid; ++g) {
                grad[s][g] = (plus[g] - minus[g]) / 2.0;
                dist[s][g] = std::abs(base[g] - mix);
                ideal[s][g] = std::abs(noiseless[g] - mix);
            }
        }

        for (int g = 0; g < n_grid; ++g) {
            std::vector<double> abs_g(config.samples), signed_g(config.samples),
                d(config.samples), di(config.samples);
            for (int s = 0; s < config.samples; ++s) {
                signed_g[s] = grad[s][g];
                abs_g[s] = std::abs(grad[s][g]);
                d[s] = dist[s][g];
                di[s] = ideal[s][g];
            }
            const MeanSem ag = mean_sem(abs_g);
            const MeanSem sg = mean_sem(signed_g);
            const MeanSem dd = mean_sem(d);
            const MeanSem ii = mean_sem(di);
            rows.push_back({axis, config.layer_grid[g], ag.mean, ag.sem,
                            dd.mean, dd.sem, sg.mean, sg.sem, ii.mean,
                            ii.sem});
        }
    }
    return rows;
}

}  // namespace qmeta
