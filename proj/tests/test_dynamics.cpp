// test_dynamics.cpp — RK4 integration and state auditing

#include "doctest.h"

#include <cmath>
#include <random>

#include "noisent/dynamics.hpp"
#include "noisent/error.hpp"
#include "oracles.hpp"

using namespace noisent;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

ModelSpec three_atoms(NoiseModel noise) {
    ModelSpec s;
    s.noise = noise;
    return s;
}

double excited(const ComplexMatrix& rho) { return rho(1, 1).real(); }

} // namespace

TEST_CASE("lone qubit decays as exp(-2 gamma_D t)") {
    const auto terms = noise_terms(0.2, WhiteNoise{0}, RateConvention::Literal, 0, 1);
    IntegratorConfig cfg;
    const auto traj = evolve(ComplexMatrix(2), terms, ComplexMatrix::basis_projector(2, 1), cfg);
    CHECK(traj.times.back() == doctest::Approx(1.0));
    CHECK(std::abs(excited(traj.states.back()) - std::exp(-0.4)) < 1e-10);
    CHECK(std::abs(traj.populations[0].back() - std::exp(-0.4)) < 1e-10);

    const auto sym = noise_terms(0.2, WhiteNoise{0}, RateConvention::Symmetric, 0, 1);
    const auto traj_sym = evolve(ComplexMatrix(2), sym, ComplexMatrix::basis_projector(2, 1), cfg);
    CHECK(std::abs(excited(traj_sym.states.back()) - std::exp(-0.2)) < 1e-10);
}

TEST_CASE("lossless C,D exchange oscillates as cos^2(g t)") {
    const ReducedSpec r{1.3, 0.0, 0.0, WhiteNoise{0}, RateConvention::Literal};
    IntegratorConfig cfg;
    cfg.t_end = 2.0;
    const auto traj = evolve(build_hamiltonian_cd(r), build_liouvillian_cd(r), ComplexMatrix::basis_projector(4, 2), cfg);
    for (std::size_t k = 0; k < traj.times.size(); k += 17) {
        const double c = std::cos(1.3 * traj.times[k]);
        CHECK(std::abs(traj.populations[0][k] - c * c) < 1e-9);
        CHECK(std::abs(traj.populations[1][k] - (1 - c * c)) < 1e-9);
    }
}

TEST_CASE("thermal mediator relaxes to n/(2n+1)") {
    const auto terms = noise_terms(0.2, WhiteNoise{1}, RateConvention::Literal, 0, 1);
    const auto ss = steady_state_longtime(ComplexMatrix(2), terms, ComplexMatrix::basis_projector(2, 0), 60.0);
    CHECK(excited(ss.state) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(ss.residual < 1e-9);
}

TEST_CASE("RK4 global error shrinks about 16x per step halving") {
    const ModelSpec s = three_atoms(WhiteNoise{1});
    const auto h = build_hamiltonian_full(s);
    const auto terms = build_liouvillian_full(s);
    const ComplexMatrix rho0 = ComplexMatrix::basis_projector(8, 0);
    auto final_state = [&](double step) {
        IntegratorConfig cfg;
        cfg.step = step;
        cfg.t_end = 2.0;
        cfg.record_every = 1000000;
        return evolve(h, terms, rho0, cfg).states.back();
    };
    const ComplexMatrix ref = final_state(0.0125);
    const double e1 = max_abs_diff(final_state(0.2), ref);
    const double e2 = max_abs_diff(final_state(0.1), ref);
    const double ratio = e1 / e2;
    CHECK(ratio >= 4.0);
    CHECK(ratio <= 64.0);
}

TEST_CASE("precomputed generator equals direct right-hand side") {
    std::mt19937_64 rng(47);
    for (auto noise : {NoiseModel{WhiteNoise{0.4}}, NoiseModel{SqueezedWhiteNoise{1.1, Complex(0.3, -0.9)}}}) {
        ModelSpec s = three_atoms(noise);
        s.g_bd = 0.7;
        s.gamma = 0.15;
        const auto h = build_hamiltonian_full(s);
        const auto terms = build_liouvillian_full(s);
        const Generator gen(h, terms);
        CHECK(gen.dim() == 8);
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix rho = oracle::random_hermitian(8, rng);
            CHECK(max_abs_diff(gen(rho), rhs(h, terms, rho)) < 1e-12);
        }
    }
}

TEST_CASE("evolve recording schedule") {
    const auto terms = noise_terms(0.2, WhiteNoise{0}, RateConvention::Literal, 0, 1);
    const ComplexMatrix e = ComplexMatrix::basis_projector(2, 1);
    IntegratorConfig cfg;
    auto traj = evolve(ComplexMatrix(2), terms, e, cfg);
    CHECK(traj.times.size() == 101);
    CHECK(traj.times[0] == 0.0);
    CHECK(traj.times[37] == doctest::Approx(0.37));

    cfg.t_end = 0.0112;
    traj = evolve(ComplexMatrix(2), terms, e, cfg);
    REQUIRE(traj.times.size() == 3);
    CHECK(traj.times.back() == doctest::Approx(0.011)); // 11 steps, last one always kept

    cfg.t_end = 0.0;
    traj = evolve(ComplexMatrix(2), terms, e, cfg);
    REQUIRE(traj.times.size() == 1);
    CHECK(traj.states[0] == e);
}

TEST_CASE("integrator argument checks") {
    const auto terms = noise_terms(0.2, WhiteNoise{0}, RateConvention::Literal, 0, 1);
    IntegratorConfig cfg;
    cfg.step = 0.0;
    CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidArgument);
    cfg.step = 1e-3;
    cfg.t_end = -1.0;
    CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidArgument);
    cfg.t_end = 1.0;
    cfg.record_every = 0;
    CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidArgument);
    cfg.record_every = 10;

    CHECK(kind_of([&] { evolve(ComplexMatrix(2), terms, ComplexMatrix::identity(2), cfg); }) ==
          ErrorKind::InvalidState);
    CHECK(kind_of([&] { evolve(ComplexMatrix(2), terms, ComplexMatrix::diagonal({1.2, -0.2}), cfg); }) ==
          ErrorKind::InvalidState);
    CHECK(kind_of([&] { evolve(ComplexMatrix(2), terms, ComplexMatrix::basis_projector(4, 0), cfg); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("require_physical") {
    CHECK_NOTHROW(require_physical(ComplexMatrix::basis_projector(4, 0), 0.0, bounds::positivity));
    CHECK(kind_of([] { require_physical(ComplexMatrix::diagonal({1.0, 1e-7}), 0.5, bounds::positivity); }) ==
          ErrorKind::StateCorrupted);
    CHECK(kind_of([] { require_physical(ComplexMatrix::diagonal({1.0 + 1e-6, -1e-6}), 0.5, bounds::positivity); }) ==
          ErrorKind::StateCorrupted);
    ComplexMatrix skew = ComplexMatrix::diagonal({0.5, 0.5});
    skew(0, 1) = 1e-6;
    CHECK(kind_of([&] { require_physical(skew, 0.5, bounds::positivity); }) == ErrorKind::StateCorrupted);

    CHECK(positivity_floor(WhiteNoise{1}) == bounds::positivity);
    CHECK(positivity_floor(perfect_squeezing(1)) == bounds::positivity_squeezed);
    CHECK(positivity_floor(SqueezedWhiteNoise{1, 0.5}) == bounds::positivity);
}

TEST_CASE("excited_populations") {
    const auto pops = excited_populations(ComplexMatrix::basis_projector(8, 5)); // |e g e>
    REQUIRE(pops.size() == 3);
    CHECK(pops[0] == 1.0);
    CHECK(pops[1] == 0.0);
    CHECK(pops[2] == 1.0);
    CHECK(excited_populations(ComplexMatrix::identity(3)).empty());
}

TEST_CASE("trajectories stay physical") {
    const NoiseModel models[] = {WhiteNoise{0}, WhiteNoise{2.5}, perfect_squeezing(1.0), perfect_squeezing(3.0),
                                 SqueezedWhiteNoise{0.5, Complex(0.2, 0.4)}};
    std::mt19937_64 rng(53);
    for (const auto& noise : models) {
        for (auto conv : {RateConvention::Literal, RateConvention::Symmetric}) {
            ModelSpec s = three_atoms(noise);
            s.convention = conv;
            s.g_bd = 0.6;
            IntegratorConfig cfg;
            cfg.t_end = 3.0;
            cfg.positivity_floor = positivity_floor(noise);
            for (const ComplexMatrix& rho0 : {ComplexMatrix::basis_projector(8, 0), oracle::random_density(8, rng)}) {
                const auto traj = evolve(build_hamiltonian_full(s), build_liouvillian_full(s), rho0, cfg);
                CHECK(traj.audit.max_trace_error <= bounds::trace);
                CHECK(traj.audit.max_hermiticity_error <= bounds::hermiticity);
                CHECK(traj.audit.min_eigenvalue >= -cfg.positivity_floor);
            }
        }
    }
}

TEST_CASE("coherent exchange conserves the excitation number") {
    ModelSpec s = three_atoms(WhiteNoise{0});
    s.gamma = 0.0;
    s.gamma_d = 0.0;
    s.g_bd = 0.4;
    const ComplexMatrix n = excitation_number(3);
    IntegratorConfig cfg;
    cfg.t_end = 2.0;
    const ComplexMatrix rho0 = ComplexMatrix::basis_projector(8, 4);
    const auto traj = evolve(build_hamiltonian_full(s), build_liouvillian_full(s), rho0, cfg);
    for (const auto& rho : traj.states) CHECK(std::abs((n * rho).trace() - 1.0) < 1e-12);
}

TEST_CASE("StateAudit merge keeps the worst case") {
    StateAudit a, b;
    a.observe({1e-10, 0.0, 0.2});
    b.observe({0.0, 1e-11, -1e-9});
    b.observe({0.0, 0.0, 0.1});
    a.merge(b);
    CHECK(a.states == 3);
    CHECK(a.max_trace_error == 1e-10);
    CHECK(a.max_hermiticity_error == 1e-11);
    CHECK(a.min_eigenvalue == -1e-9);
}
