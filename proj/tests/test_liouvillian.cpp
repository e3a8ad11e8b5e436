#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "qmeta/channel.hpp"
#include "qmeta/errors.hpp"
#include "qmeta/liouvillian.hpp"
#include "qmeta/pauli.hpp"
#include "qmeta/rng.hpp"

using namespace qmeta;

namespace {

PauliString P(const std::string& label) { return PauliString::from_label(label); }

Eigen::MatrixXcd vec_to_mat(const Eigen::VectorXcd& v, int dim) {
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Eigen::VectorXcd mat_to_vec(const Eigen::MatrixXcd& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Liouvillian random_gkls(int n, SplitMix64& rng, int n_jumps = 2) {
    const int dim = 1 << n;
    Eigen::MatrixXcd h(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            h(i, j) = std::complex<double>(rng.uniform() - 0.5,
                                           rng.uniform() - 0.5);
    h = (h + h.adjoint()).eval();
    std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;
    for (int k = 0; k < n_jumps; ++k) {
        Eigen::MatrixXcd l(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                l(i, j) = std::complex<double>(rng.uniform() - 0.5,
                                               rng.uniform() - 0.5);
        jumps.emplace_back(l, 0.2 + rng.uniform());
    }
    return Liouvillian(h, jumps);
}

Eigen::MatrixXcd random_density(int dim, SplitMix64& rng) {
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = std::complex<double>(rng.uniform() - 0.5,
                                           rng.uniform() - 0.5);
    Eigen::MatrixXcd rho = a * a.adjoint();
    return rho / rho.trace();
}

}  // namespace

TEST_CASE("dephasing superoperator has the analytic spectrum {0,0,-2,-2}") {
    const Liouvillian gen(Eigen::MatrixXcd::Zero(2, 2),
                          {{P("Z").matrix(), 1.0}});
    const Eigen::MatrixXcd s = build_superoperator(gen);
    // eigenvalues on the Pauli basis: I,Z -> 0; X,Y -> -2
    for (const auto& [label, want] :
         {std::pair{"I", 0.0}, {"Z", 0.0}, {"X", -2.0}, {"Y", -2.0}}) {
        const Eigen::VectorXcd v = mat_to_vec(P(label).matrix());
        CHECK((s * v - want * v).norm() < 1e-12);
    }
    const SpectralDecomposition spec = spectral_decomposition(s);
    std::vector<double> re;
    for (auto l : spec.eigenvalues) re.push_back(l.real());
    CHECK(re[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(re[1] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(re[2] == doctest::Approx(-2.0));
    CHECK(re[3] == doctest::Approx(-2.0));
}

TEST_CASE("unitary-only generator has a purely imaginary spectrum") {
    const Liouvillian gen(P("Z").matrix(), {});
    const SpectralDecomposition spec =
        spectral_decomposition(build_superoperator(gen));
    std::vector<double> im;
    for (auto l : spec.eigenvalues) {
        CHECK(std::abs(l.real()) < 1e-12);
        im.push_back(l.imag());
    }
    std::sort(im.begin(), im.end());
    CHECK(im[0] == doctest::Approx(-2.0));
    CHECK(im[1] == doctest::Approx(0.0));
    CHECK(im[2] == doctest::Approx(0.0));
    CHECK(im[3] == doctest::Approx(2.0));
}

TEST_CASE("isotropic Pauli dissipator decays all non-identity strings at 4g") {
    const double g = 0.37;
    const Liouvillian gen(Eigen::MatrixXcd::Zero(2, 2),
                          {{P("X").matrix(), g},
                           {P("Y").matrix(), g},
                           {P("Z").matrix(), g}});
    const Eigen::MatrixXcd s = build_superoperator(gen);
    // matrix-exponential oracle: e^{tS} scales each Pauli by e^{-4 g t}
    const double t = 0.9;
    const Eigen::MatrixXcd prop = (t * s).exp();
    for (const char* label : {"X", "Y", "Z"}) {
        const Eigen::VectorXcd v = mat_to_vec(P(label).matrix());
        CHECK((prop * v - std::exp(-4 * g * t) * v).norm() < 1e-10);
    }
    const Eigen::VectorXcd vi = mat_to_vec(P("I").matrix());
    CHECK((prop * vi - vi).norm() < 1e-12);
}

TEST_CASE("unital generators annihilate the maximally mixed state") {
    SplitMix64 rng(31);
    const Liouvillian gen(Eigen::MatrixXcd::Zero(2, 2),
                          {{P("X").matrix(), 0.3}, {P("Z").matrix(), 0.8}});
    const Eigen::MatrixXcd s = build_superoperator(gen);
    const Eigen::VectorXcd v =
        mat_to_vec(Eigen::MatrixXcd::Identity(2, 2) / 2.0);
    CHECK((s * v).norm() < 1e-12);
}

TEST_CASE("spectral decomposition: biorthonormality and half-plane spectrum") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const Liouvillian gen = random_gkls(1, rng);
        const SpectralDecomposition spec =
            spectral_decomposition(build_superoperator(gen));
        for (size_t j = 0; j < spec.eigenvalues.size(); ++j) {
            CHECK(spec.eigenvalues[j].real() <= 1e-10);
            for (size_t k = 0; k < spec.eigenvalues.size(); ++k) {
                const std::complex<double> ip =
                    (spec.left[j].adjoint() * spec.right[k]).trace();
                CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-8);
            }
        }
        // a stationary state exists
        CHECK(std::abs(spec.eigenvalues[0]) < 1e-8);
    }
}

TEST_CASE("evolve_spectral") {
    SplitMix64 rng(41);
    const Liouvillian gen = random_gkls(1, rng);
    const Eigen::MatrixXcd s = build_superoperator(gen);
    const SpectralDecomposition spec = spectral_decomposition(s);
    const Eigen::MatrixXcd rho0 = random_density(2, rng);

    SUBCASE("t = 0 returns the initial state") {
        CHECK((evolve_spectral(spec, rho0, 0.0) - rho0).cwiseAbs().maxCoeff() <
              1e-8);
    }
    SUBCASE("negative time is rejected") {
        CHECK_THROWS_AS(evolve_spectral(spec, rho0, -1.0), DomainError);
    }
    SUBCASE("agrees with the matrix exponential") {
        for (double t : {0.1, 1.0, 10.0}) {
            const Eigen::MatrixXcd want =
                vec_to_mat(((t * s).exp() * mat_to_vec(rho0)).eval(), 2);
            CHECK((evolve_spectral(spec, rho0, t) - want).cwiseAbs().maxCoeff() <
                  1e-8);
        }
    }
    SUBCASE("long times reach the stationary state") {
        // slowest decaying mode sets the clock
        double slow = 0.0;
        for (auto l : spec.eigenvalues)
            if (l.real() < -1e-8)
                slow = slow == 0.0 ? l.real() : std::max(slow, l.real());
        const double t = -45.0 / slow;
        const Eigen::MatrixXcd inf1 = evolve_spectral(spec, rho0, t);
        const Eigen::MatrixXcd inf2 = evolve_spectral(spec, rho0, 2 * t);
        CHECK((inf1 - inf2).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("single-qubit dephasing damps coherences by e^{-2 gamma t}") {
    const double g = 1.0, t = 1.0;
    const Liouvillian gen(Eigen::MatrixXcd::Zero(2, 2), {{P("Z").matrix(), g}});
    const SpectralDecomposition spec =
        spectral_decomposition(build_superoperator(gen));
    Eigen::MatrixXcd plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    const Eigen::MatrixXcd rho_t = evolve_spectral(spec, plus, t);
    CHECK(std::abs(rho_t(0, 1)) ==
          doctest::Approx(0.5 * std::exp(-2.0 * g * t)));
}

TEST_CASE("exceptional points are rejected") {
    // a Jordan block is not diagonalizable
    Eigen::MatrixXcd jordan = Eigen::MatrixXcd::Zero(4, 4);
    jordan(0, 1) = 1.0;
    CHECK_THROWS_AS(spectral_decomposition(jordan), ExceptionalPointError);
}

TEST_CASE("metastable manifold selection and gap ratio") {
    SpectralDecomposition spec;
    const int dim = 2;
    for (double re : {0.0, -0.001, -5.0, -5.2}) {
        spec.eigenvalues.push_back({re, 0.0});
        spec.right.push_back(Eigen::MatrixXcd::Identity(dim, dim));
        spec.left.push_back(Eigen::MatrixXcd::Identity(dim, dim));
    }
    const MetastableManifold mm = metastable_manifold(spec, 100.0);
    CHECK(mm.indices == std::vector<int>{0, 1});
    CHECK(mm.tau1 == doctest::Approx(1.0 / 5.0));
    CHECK(mm.tau2 == doctest::Approx(1000.0));
    CHECK(mm.gap_ratio == doctest::Approx(2e-4));

    // tau2 -> 0+: only the stationary modes survive
    const MetastableManifold tiny = metastable_manifold(spec, 1e9);
    CHECK(tiny.indices == std::vector<int>{0});
    // tau2 -> inf: everything included
    const MetastableManifold all = metastable_manifold(spec, 1e-9);
    CHECK(all.indices.size() == 4);
    CHECK_THROWS_AS(metastable_manifold(spec, 0.0), DomainError);
}

// ---------------------------------------------------------------------------
// Pauli channels
// ---------------------------------------------------------------------------

TEST_CASE("channel eigenvalues, per-qubit and weighted") {
    const PauliChannel aniso = PauliChannel::uniform(1, {0.5, 0.0, 0.5});
    CHECK(channel_eigenvalue(aniso, P("X")) == doctest::Approx(0.5));
    CHECK(channel_eigenvalue(aniso, P("Y")) == doctest::Approx(0.0));
    CHECK(channel_eigenvalue(aniso, P("I")) == 1.0);

    const PauliChannel w = PauliChannel::weighted(1, {{P("X"), 0.1}});
    CHECK(channel_eigenvalue(w, P("Z")) == doctest::Approx(0.8));
    CHECK(channel_eigenvalue(w, P("X")) == doctest::Approx(1.0));
    CHECK(channel_eigenvalue(w, P("I")) == 1.0);

    // 2x2 channel-application oracle for the weighted form
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
    rho(0, 0) = 1.0;  // |0><0| = (I+Z)/2
    const Eigen::MatrixXcd xm = P("X").matrix();
    const Eigen::MatrixXcd out = 0.9 * rho + 0.1 * xm * rho * xm;
    CHECK(std::abs((P("Z").matrix() * out).trace().real() - 0.8) < 1e-14);
}

TEST_CASE("channel validation") {
    CHECK_THROWS_AS(PauliChannel::uniform(1, {1.0, 0.0, 0.0}),
                    PreconditionError);
    CHECK_THROWS_AS(PauliChannel::weighted(1, {{P("X"), 0.0}}),
                    PreconditionError);
    CHECK_THROWS_AS(PauliChannel::weighted(1, {{P("X"), 0.7}, {P("Z"), 0.7}}),
                    PreconditionError);
}

TEST_CASE("per-qubit and weighted forms agree on one qubit") {
    // q_x = 1 - 2(p_y + p_z) etc.
    const double px = 0.12, py = 0.07, pz = 0.2;
    const PauliChannel w = PauliChannel::weighted(
        1, {{P("X"), px}, {P("Y"), py}, {P("Z"), pz}});
    const PauliChannel q = PauliChannel::uniform(
        1, {1 - 2 * (py + pz), 1 - 2 * (px + pz), 1 - 2 * (px + py)});
    for (const char* label : {"I", "X", "Y", "Z"})
        CHECK(channel_eigenvalue(w, P(label)) ==
              doctest::Approx(channel_eigenvalue(q, P(label))).epsilon(1e-12));
}

TEST_CASE("apply_channel preserves trace exactly and positivity") {
    SplitMix64 rng(43);
    for (int n = 1; n <= 4; ++n) {
        const Eigen::MatrixXcd rho = random_density(1 << n, rng);
        const PauliChannel ch = PauliChannel::uniform(n, {0.7, -0.3, 0.5});
        const Eigen::MatrixXcd out = apply_channel(ch, rho);
        CHECK(std::abs(out.trace().real() - 1.0) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
    }
}

TEST_CASE("anisotropic channel on |0><0| halves the Z coefficient") {
    // Kraus oracle: (1-px-pz) rho + px X rho X + pz Z rho Z with the
    // per-qubit q-values corresponding to q_x = q_z = 0.5, q_y = 0
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
    rho(0, 0) = 1.0;
    const PauliChannel ch = PauliChannel::uniform(1, {0.5, 0.0, 0.5});
    const Eigen::MatrixXcd out = apply_channel(ch, rho);
    Eigen::MatrixXcd want(2, 2);
    want << 0.75, 0.0, 0.0, 0.25;  // (I + 0.5 Z)/2
    CHECK((out - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("channels fix the maximally mixed state and erase y-only support") {
    const int n = 2;
    const Eigen::Index dim = 1 << n;
    const PauliChannel ch = PauliChannel::uniform(n, {0.5, 0.0, 0.5});
    const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(dim, dim) /
                                   double(dim);
    CHECK((apply_channel(ch, mixed) - mixed).cwiseAbs().maxCoeff() < 1e-14);

    // a state whose only non-identity component is Y o Y
    const Eigen::MatrixXcd rho =
        mixed + 0.2 * P("YY").matrix() / double(dim);
    CHECK((apply_channel(ch, rho) - mixed).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("per-qubit channel superoperator is diagonal in the Pauli basis") {
    const PauliChannel ch = PauliChannel::uniform(2, {0.5, 0.5, 0.5});
    const Eigen::MatrixXcd s = channel_superoperator(ch);
    const std::vector<double> f = eigenvalue_vector(ch);
    PauliVector probe(2);
    for (std::uint64_t idx = 0; idx < 16; ++idx) {
        const Eigen::VectorXcd v = mat_to_vec(probe.string_at(idx).matrix());
        CHECK((s * v - f[idx] * v).norm() < 1e-12);
    }
    // spectrum is real
    const Eigen::VectorXcd lam =
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(s).eigenvalues();
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        CHECK(std::abs(lam(i).imag()) < 1e-12);
}

TEST_CASE("liouvillian input validation") {
    Eigen::MatrixXcd bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(Liouvillian(bad, {}), PreconditionError);
    CHECK_THROWS_AS(Liouvillian(Eigen::MatrixXcd::Zero(3, 3), {}), ShapeError);
    CHECK_THROWS_AS(
        Liouvillian(Eigen::MatrixXcd::Zero(2, 2), {{P("Z").matrix(), -1.0}}),
        PreconditionError);
    SuperoperatorOptions opts;
    opts.dense_limit = 0;
    CHECK_THROWS_AS(
        build_superoperator(Liouvillian(Eigen::MatrixXcd::Zero(2, 2), {}), opts),
        ResourceError);
}
