// test_model.cpp — Hamiltonians, Lindblad terms and the collective transform

#include "doctest.h"

#include <cmath>
#include <random>

#include "noisent/error.hpp"
#include "noisent/model.hpp"
#include "oracles.hpp"

using namespace noisent;

namespace {

ModelSpec spec_with(double g_ad, double g_bd, double gamma, double gamma_d, NoiseModel noise) {
    ModelSpec s;
    s.g_ad = g_ad;
    s.g_bd = g_bd;
    s.gamma = gamma;
    s.gamma_d = gamma_d;
    s.noise = noise;
    return s;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

// Projector onto states with at most one excitation shared by A and B (A,B,D ordering).
ComplexMatrix single_ab_sector() {
    return ComplexMatrix::diagonal({1, 1, 1, 1, 1, 1, 0, 0});
}

} // namespace

TEST_CASE("embed_op") {
    CHECK(embed_op(ops::sigma_plus(), 0, 2) == kron(ops::sigma_plus(), ComplexMatrix::identity(2)));
    for (std::size_t s = 0; s < 3; ++s) CHECK(embed_op(ComplexMatrix::identity(2), s, 3) == ComplexMatrix::identity(8));
    // sigma_D^+ |ggg> = |gge>, index 1.
    const ComplexMatrix up_d = embed_op(ops::sigma_plus(), 2, 3);
    const ComplexMatrix ggg = ComplexMatrix::basis_projector(8, 0);
    CHECK(up_d * ggg * up_d.adjoint() == ComplexMatrix::basis_projector(8, 1));
    CHECK(kind_of([] { embed_op(ops::sigma_plus(), 3, 3); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("full Hamiltonian structure") {
    CHECK(max_abs(build_hamiltonian_full(spec_with(0, 0, 0.2, 0.2, WhiteNoise{1}))) == 0.0);

    const ComplexMatrix h = build_hamiltonian_full(spec_with(1, 0, 0.2, 0.2, WhiteNoise{1}));
    // <g_A g_B e_D| H |e_A g_B g_D> = g_AD; index(a,b,d) = 4a + 2b + d.
    CHECK(h(1, 4) == Complex(1.0));
    CHECK(h(4, 1) == Complex(1.0));
    CHECK(h(1, 2) == Complex(0.0));
    CHECK(h(2, 1) == Complex(0.0));

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    const ComplexMatrix n = excitation_number(3);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix hr = build_hamiltonian_full(spec_with(coupling(rng), coupling(rng), 0.2, 0.2, WhiteNoise{}));
        CHECK(hermiticity_error(hr) == 0.0);
        CHECK(max_abs(commutator(hr, n)) < 1e-15);
        CHECK(max_abs(hr * ComplexMatrix::basis_projector(8, 0)) == 0.0);
        CHECK(max_abs(hr * ComplexMatrix::basis_projector(8, 7)) == 0.0);
    }
}

TEST_CASE("lab-frame Hamiltonian adds omega/2 sigma_z per atom") {
    ModelSpec s = spec_with(1, 1, 0.2, 0.2, WhiteNoise{});
    s.omega = 3.0;
    const ComplexMatrix diff = build_hamiltonian_lab(s) - build_hamiltonian_full(s);
    CHECK(diff(0, 0) == Complex(-4.5));
    CHECK(diff(7, 7) == Complex(4.5));
}

TEST_CASE("full Liouvillian terms") {
    SUBCASE("zero temperature, no atom decay") {
        const auto terms = build_liouvillian_full(spec_with(1, 1, 0.0, 0.2, WhiteNoise{0}));
        REQUIRE(terms.size() == 1);
        CHECK(terms[0].jump == embed_op(ops::sigma_minus(), 2, 3));
        CHECK(terms[0].rate == doctest::Approx(0.2));
    }
    SUBCASE("thermal rates") {
        const auto terms = build_liouvillian_full(spec_with(1, 1, 0.0, 0.2, WhiteNoise{1}));
        REQUIRE(terms.size() == 2);
        CHECK(terms[0].jump == embed_op(ops::sigma_minus(), 2, 3));
        CHECK(terms[0].rate == doctest::Approx(0.4));
        CHECK(terms[1].jump == embed_op(ops::sigma_plus(), 2, 3));
        CHECK(terms[1].rate == doctest::Approx(0.2));
    }
    SUBCASE("symmetric convention halves every rate") {
        ModelSpec s = spec_with(1, 1, 0.2, 0.2, perfect_squeezing(1));
        s.convention = RateConvention::Symmetric;
        const auto terms = build_liouvillian_full(s);
        REQUIRE(terms.size() == 5);
        CHECK(terms[0].rate == doctest::Approx(0.2));
        CHECK(terms[1].rate == doctest::Approx(0.1));
        CHECK(terms[2].amplitude.real() == doctest::Approx(0.1 * std::sqrt(2.0)));
        CHECK(terms[3].rate == doctest::Approx(0.1));
    }
    SUBCASE("squeezing bound") {
        CHECK_NOTHROW(build_liouvillian_full(spec_with(1, 1, 0.2, 0.2, SqueezedWhiteNoise{1, std::sqrt(2.0)})));
        CHECK(kind_of([] { build_liouvillian_full(spec_with(1, 1, 0.2, 0.2, SqueezedWhiteNoise{1, 1.5})); }) ==
              ErrorKind::InvalidNoise);
        CHECK(kind_of([] { build_liouvillian_full(spec_with(1, 1, 0.2, 0.2, WhiteNoise{-0.1})); }) ==
              ErrorKind::InvalidNoise);
        const auto terms = build_liouvillian_full(spec_with(1, 1, 0.2, 0.2, SqueezedWhiteNoise{1, Complex(0, 1.2)}));
        REQUIRE(terms.size() == 5);
        CHECK(terms[2].is_anomalous());
        CHECK(terms[2].amplitude == Complex(0.0, 0.2 * 1.2));
    }
    SUBCASE("negative rates rejected") {
        CHECK(kind_of([] { build_liouvillian_full(spec_with(1, 1, -0.1, 0.2, WhiteNoise{})); }) ==
              ErrorKind::InvalidArgument);
    }
}

TEST_CASE("apply_liouvillian on a lone mediator qubit") {
    const ComplexMatrix g = ComplexMatrix::basis_projector(2, 0);
    const auto cold = noise_terms(0.2, WhiteNoise{0}, RateConvention::Literal, 0, 1);
    CHECK(max_abs(apply_liouvillian(cold, g)) == 0.0);

    const auto warm = noise_terms(0.2, WhiteNoise{1}, RateConvention::Literal, 0, 1);
    const ComplexMatrix d = apply_liouvillian(warm, g);
    CHECK(d(1, 1).real() == doctest::Approx(0.4)); // 2 gamma_D n_T
    CHECK(d(0, 0).real() == doctest::Approx(-0.4));

    const auto warm_sym = noise_terms(0.2, WhiteNoise{1}, RateConvention::Symmetric, 0, 1);
    CHECK(apply_liouvillian(warm_sym, g)(1, 1).real() == doctest::Approx(0.2));

    // Squeezing only touches coherences on one qubit: 2 a sigma^- rho sigma^- + h.c.
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix plus = ComplexMatrix::projector({s, s});
    const Complex m(0.6, 0.8);
    const auto squeezed = noise_terms(0.2, SqueezedWhiteNoise{1, m}, RateConvention::Literal, 0, 1);
    const ComplexMatrix extra = apply_liouvillian(squeezed, plus) - apply_liouvillian(warm, plus);
    const Complex a = 0.2 * m;
    CHECK(std::abs(extra(0, 1) - 2.0 * a * plus(1, 0)) < 1e-15);
    CHECK(std::abs(extra(1, 0) - 2.0 * std::conj(a) * plus(0, 1)) < 1e-15);
    CHECK(std::abs(extra(0, 0)) < 1e-15);
    CHECK(std::abs(extra(1, 1)) < 1e-15);
}

TEST_CASE("apply_liouvillian is traceless and Hermitian-preserving") {
    std::mt19937_64 rng(29);
    const NoiseModel models[] = {WhiteNoise{0.7}, perfect_squeezing(1.3), SqueezedWhiteNoise{2, Complex(1.0, -1.5)}};
    for (const auto& noise : models) {
        for (auto conv : {RateConvention::Literal, RateConvention::Symmetric}) {
            ModelSpec s = spec_with(1, 0.6, 0.3, 0.25, noise);
            s.convention = conv;
            const auto terms = build_liouvillian_full(s);
            for (int trial = 0; trial < 5; ++trial) {
                const ComplexMatrix rho = oracle::random_hermitian(8, rng);
                const ComplexMatrix out = apply_liouvillian(terms, rho);
                CHECK(std::abs(out.trace()) < 1e-12);
                CHECK(hermiticity_error(out) < 1e-12);
            }
        }
    }
    const auto terms = build_liouvillian_full(spec_with(1, 1, 0.2, 0.2, WhiteNoise{1}));
    CHECK(kind_of([&] { apply_liouvillian(terms, ComplexMatrix::identity(4)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("collective transform examples") {
    SUBCASE("equal couplings") {
        const ModelSpec s = spec_with(1, 1, 0.2, 0.2, WhiteNoise{1});
        const auto ct = collective_transform(s);
        CHECK(ct.reduced.coupling == doctest::Approx(std::sqrt(2.0)));
        const auto [up_c, up_e] = collective_raising(s);
        const ComplexMatrix expected =
            (embed_op(ops::sigma_plus(), 0, 2) + embed_op(ops::sigma_plus(), 1, 2)) * (1.0 / std::sqrt(2.0));
        CHECK(max_abs_diff(up_c, expected) < 1e-15);
        // The basis change sends sigma_C^+|gg> to |e_C g_E> (index 2).
        const ComplexMatrix u = ct.basis_change;
        const ComplexMatrix mapped = u * up_c * ComplexMatrix::basis_projector(4, 0) * up_c.adjoint() * u.adjoint();
        CHECK(max_abs_diff(mapped, ComplexMatrix::basis_projector(4, 2)) < 1e-15);
        const ComplexMatrix mapped_e = u * up_e * ComplexMatrix::basis_projector(4, 0) * up_e.adjoint() * u.adjoint();
        CHECK(max_abs_diff(mapped_e, ComplexMatrix::basis_projector(4, 1)) < 1e-15);
    }
    SUBCASE("single coupling degenerates to relabelling") {
        const auto ct = collective_transform(spec_with(1, 0, 0.2, 0.2, WhiteNoise{1}));
        CHECK(ct.reduced.coupling == 1.0);
        // Mode C is atom A; mode E is atom B up to the sign fixed by sigma_E^+ = -sigma_B^+.
        CHECK(ct.basis_change == ComplexMatrix::diagonal({1, -1, 1, 1}));
    }
    SUBCASE("unitary for random couplings") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> coupling(-2.0, 2.0);
        for (int trial = 0; trial < 10; ++trial) {
            const auto u = collective_transform(spec_with(coupling(rng), coupling(rng), 0.2, 0.2, WhiteNoise{})).basis_change;
            CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(4)) < 1e-12);
        }
    }
    SUBCASE("zero coupling") {
        CHECK(kind_of([] { collective_transform(spec_with(0, 0, 0.2, 0.2, WhiteNoise{})); }) == ErrorKind::ZeroCoupling);
    }
}

TEST_CASE("atom decay is invariant under the mode rotation") {
    // sum_{A,B} D[sigma_i^-] == D[sigma_C^-] + D[sigma_E^-] on the whole A,B space.
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const ModelSpec s = spec_with(coupling(rng), coupling(rng), 0.3, 0.2, WhiteNoise{});
        const auto [up_c, up_e] = collective_raising(s);
        const std::vector<LindbladTerm> atoms{
            LindbladTerm::diagonal(embed_op(ops::sigma_minus(), 0, 2), 0.3),
            LindbladTerm::diagonal(embed_op(ops::sigma_minus(), 1, 2), 0.3)};
        const std::vector<LindbladTerm> modes{LindbladTerm::diagonal(up_c.adjoint(), 0.3),
                                              LindbladTerm::diagonal(up_e.adjoint(), 0.3)};
        const ComplexMatrix rho = oracle::random_density(4, rng);
        CHECK(max_abs_diff(apply_liouvillian(atoms, rho), apply_liouvillian(modes, rho)) < 1e-12);
    }
}

TEST_CASE("conjugated three-atom Liouvillian matches the C,E,D Liouvillian") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> coupling(0.2, 2.0);
    const ComplexMatrix p = single_ab_sector();
    for (auto noise : {NoiseModel{WhiteNoise{0.8}}, NoiseModel{perfect_squeezing(0.8)}}) {
        for (int trial = 0; trial < 5; ++trial) {
            const ModelSpec s = spec_with(coupling(rng), coupling(rng), 0.3, 0.2, noise);
            const auto ct = collective_transform(s);
            const ComplexMatrix v = kron(ct.basis_change, ComplexMatrix::identity(2));
            const auto full = build_liouvillian_full(s);
            const auto reduced = build_liouvillian_ced(ct.reduced);

            const ComplexMatrix rho = p * oracle::random_density(8, rng) * p;
            const ComplexMatrix lhs = v * apply_liouvillian(full, rho) * v.adjoint();
            const ComplexMatrix rhs = apply_liouvillian(reduced, v * rho * v.adjoint());
            CHECK(max_abs_diff(lhs, rhs) < 1e-12);

            const ComplexMatrix h_full = v * build_hamiltonian_full(s) * v.adjoint();
            const ComplexMatrix h_red = build_hamiltonian_ced(ct.reduced);
            // Total excitation <= 1: |ggg>, |gge>, |geg>, |egg>.
            for (std::size_t i : {0u, 1u, 2u, 4u})
                for (std::size_t j : {0u, 1u, 2u, 4u}) CHECK(std::abs(h_full(i, j) - h_red(i, j)) < 1e-12);
        }
    }
}

TEST_CASE("two-level reading of the modes fails once A and B share two excitations") {
    // Documented limitation: sigma_C^+ sigma_E^+ is proportional to (g_BD^2 - g_AD^2), so C and E
    // are not independent two-level modes in the |ee>_AB sector.
    const ModelSpec s = spec_with(1, 0.5, 0.3, 0.2, WhiteNoise{0.5});
    const auto ct = collective_transform(s);
    const ComplexMatrix v = kron(ct.basis_change, ComplexMatrix::identity(2));
    std::mt19937_64 rng(43);
    const ComplexMatrix rho = oracle::random_density(8, rng);
    const ComplexMatrix lhs = v * apply_liouvillian(build_liouvillian_full(s), rho) * v.adjoint();
    const ComplexMatrix rhs = apply_liouvillian(build_liouvillian_ced(ct.reduced), v * rho * v.adjoint());
    CHECK(max_abs_diff(lhs, rhs) > 0.01);
}

TEST_CASE("mode E is decoupled from the collective Hamiltonian") {
    ReducedSpec r{std::sqrt(2.0), 0.2, 0.2, WhiteNoise{1}, RateConvention::Literal};
    const ComplexMatrix h = build_hamiltonian_ced(r);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const bool e_i = (i >> 1) & 1U, e_j = (j >> 1) & 1U;
            if (e_i != e_j) CHECK(h(i, j) == Complex(0.0));
        }
    }
    CHECK(hermiticity_error(h) == 0.0);
    CHECK(h(1, 4) == Complex(std::sqrt(2.0))); // |g_C g_E e_D> <-> |e_C g_E g_D>
}

TEST_CASE("C,D model operators") {
    ReducedSpec r{std::sqrt(2.0), 0.1, 0.2, WhiteNoise{1}, RateConvention::Literal};
    const ComplexMatrix h = build_hamiltonian_cd(r);
    // |ge> (D excited) <-> |eg> (C excited)
    CHECK(h(1, 2) == Complex(std::sqrt(2.0)));
    CHECK(h(2, 1) == Complex(std::sqrt(2.0)));
    CHECK(max_abs(h * ComplexMatrix::basis_projector(4, 0)) == 0.0);
    const auto terms = build_liouvillian_cd(r);
    REQUIRE(terms.size() == 3);
    CHECK(terms[2].jump == embed_op(ops::sigma_minus(), 0, 2));
    CHECK(terms[2].rate == doctest::Approx(0.1));
}
