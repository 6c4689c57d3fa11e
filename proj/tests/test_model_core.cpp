#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "arma_geodesy/arma_geodesy.hpp"
#include "support/oracles.hpp"

using namespace arma_geodesy;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ArmaModel mk(double gain, std::vector<cplx> poles, std::vector<cplx> zeros) {
    return validate(gain, poles, zeros);
}

template <typename F>
errc code_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error to be thrown");
    return errc::invalid_argument;
}

} // namespace

TEST_CASE("validate accepts interior roots and rejects the rest") {
    const auto m = mk(1.0, {{0.5, 0.0}}, {});
    CHECK(m.p() == 1);
    CHECK(m.q() == 0);
    CHECK(m.gain() == 1.0);
    CHECK(m.max_root_modulus() == 0.5);

    CHECK(code_of([] { mk(1.0, {{1.2, 0.0}}, {}); }) == errc::unstable_point);
    CHECK(code_of([] { mk(1.0, {}, {{0.0, -1.0}}); }) == errc::unstable_point);
    CHECK(code_of([] { mk(0.0, {}, {}); }) == errc::non_positive_gain);
    CHECK(code_of([] { mk(-2.0, {{0.5, 0.0}}, {}); }) == errc::non_positive_gain);

    try {
        mk(1.0, {{0.1, 0.0}}, {{0.2, 0.0}, {1.5, 0.0}});
        FAIL("unstable zero accepted");
    } catch (const Error& e) {
        CHECK(e.code() == errc::unstable_point);
        CHECK(std::string(e.what()).find("zero[1]") != std::string::npos);
    }
}

TEST_CASE("empty model is the identity filter") {
    const auto id = ArmaModel::identity();
    CHECK(id.p() == 0);
    CHECK(id.q() == 0);
    CHECK(id.gain() == 1.0);
    CHECK(id.is_identity());
    CHECK_FALSE(mk(2.0, {}, {}).is_identity());
    CHECK_FALSE(mk(1.0, {{0.1, 0.0}}, {}).is_identity());
}

TEST_CASE("stability margin is enforced and configurable") {
    const double near = 1.0 - 5e-10; // inside the disk, inside the default margin band
    CHECK(code_of([&] { mk(1.0, {{near, 0.0}}, {}); }) == errc::unstable_point);
    const auto m = validate(1.0, std::vector<cplx>{{near, 0.0}}, {}, 1e-12);
    CHECK(m.max_root_modulus() == near);
    CHECK(code_of([&] {
              validate(1.0, std::vector<cplx>{{0.5, 0.0}}, {}, 0.0);
          }) == errc::invalid_argument);
}

TEST_CASE("transfer function values on the unit circle") {
    CHECK(transfer_at(ArmaModel::identity(), {1.0, 0.0}) == cplx(1.0, 0.0));
    CHECK_THAT(transfer_at(mk(1.0, {{0.5, 0.0}}, {}), {1.0, 0.0}).real(),
               WithinRel(2.0, 1e-15));
    const auto arma11 = mk(1.0, {{0.5, 0.0}}, {{0.3, 0.0}});
    CHECK_THAT(transfer_at(arma11, {-1.0, 0.0}).real(), WithinRel(1.3 / 1.5, 1e-15));
    CHECK_THAT(transfer_at(arma11, {-1.0, 0.0}).imag(), WithinAbs(0.0, 1e-16));
}

TEST_CASE("spectral density is the squared transfer modulus") {
    const auto ar1 = mk(1.0, {{0.5, 0.0}}, {});
    CHECK(spectral_density_at(ArmaModel::identity(), {0.0, 1.0}) == 1.0);
    CHECK_THAT(spectral_density_at(ar1, {1.0, 0.0}), WithinRel(4.0, 1e-15));
    CHECK_THAT(spectral_density_at(ar1, {-1.0, 0.0}), WithinRel(1.0 / 2.25, 1e-15));

    // |h|^2 at an off-axis circle point, against the direct formula.
    const cplx z = std::polar(1.0, 0.7);
    const auto m = mk(2.0, {{0.4, 0.2}}, {{-0.1, 0.3}});
    const double direct = std::norm(2.0 * (1.0 - cplx(-0.1, 0.3) / z) / (1.0 - cplx(0.4, 0.2) / z));
    CHECK_THAT(spectral_density_at(m, z), WithinRel(direct, 1e-14));
}

TEST_CASE("cepstrum coefficients: power sums over s, log gain at zero") {
    const auto ar1 = mk(1.0, {{0.5, 0.0}}, {});
    CHECK(cepstrum(ar1, 0) == cplx(0.0, 0.0));
    CHECK_THAT(cepstrum(ar1, 3).real(), WithinRel(0.125 / 3.0, 1e-15));
    CHECK(cepstrum(ar1, 3).imag() == 0.0);

    CHECK_THAT(cepstrum(mk(2.0, {}, {}), 0).real(), WithinRel(std::log(2.0), 1e-15));

    const auto arma11 = mk(1.0, {{0.5, 0.0}}, {{0.3, 0.0}});
    CHECK_THAT(cepstrum(arma11, 2).real(), WithinRel(0.08, 1e-14));

    // Coincident pole and zero cancel exactly, term by term.
    const auto cancel = mk(1.0, {{0.4, 0.0}}, {{0.4, 0.0}});
    for (long s = 1; s <= 20; ++s) CHECK(cepstrum(cancel, s) == cplx(0.0, 0.0));

    // Identity filter has zero cepstrum at every index.
    for (long s = 0; s <= 10; ++s) CHECK(cepstrum(ArmaModel::identity(), s) == cplx(0.0, 0.0));
}

TEST_CASE("cepstrum of conjugate-closed root sets is real up to roundoff") {
    const auto m = mk(1.0, {{0.4, 0.3}, {0.4, -0.3}}, {{-0.2, 0.5}, {-0.2, -0.5}});
    for (long s = 1; s <= 12; ++s) CHECK_THAT(cepstrum(m, s).imag(), WithinAbs(0.0, 1e-16));
}

TEST_CASE("swapping poles and zeros negates the cepstrum") {
    oracles::RandomModels gen(11u);
    for (int trial = 0; trial < 20; ++trial) {
        const auto poles = gen.root_list(std::uniform_int_distribution<int>(0, 3)(gen.rng()), 0.9);
        const auto zeros = gen.root_list(std::uniform_int_distribution<int>(0, 3)(gen.rng()), 0.9);
        const auto m = validate(1.0, poles, zeros);
        const auto swapped = validate(1.0, zeros, poles);
        for (long s = 1; s <= 8; ++s) {
            const cplx c = cepstrum(m, s);
            const cplx d = cepstrum(swapped, s);
            CHECK_THAT(std::abs(c + d), WithinAbs(0.0, 1e-15));
        }
    }
}

TEST_CASE("cepstrum magnitude obeys the (p+q) r^s / s bound") {
    oracles::RandomModels gen(29u);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = gen.nonempty_model(4, 4, 0.95);
        const double r = m.max_root_modulus();
        double rs = 1.0;
        for (long s = 1; s <= 30; ++s) {
            rs *= r;
            const double bound = (m.p() + m.q()) * rs / static_cast<double>(s);
            CHECK(std::abs(cepstrum(m, s)) <= bound * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("cepstrum matches contour quadrature on random stable models") {
    oracles::RandomModels gen(7u);
    for (int trial = 0; trial < 12; ++trial) {
        const auto m = gen.model(3, 3, 0.9, trial % 3 == 0 ? 2.5 : 1.0);
        for (long s = 0; s <= 10; ++s) {
            const cplx direct = cepstrum(m, s);
            const cplx quad = oracles::quadrature_cepstrum(m, s);
            CHECK_THAT(std::abs(direct - quad), WithinAbs(0.0, 1e-10));
        }
    }
}

TEST_CASE("polynomial coefficients map to pole and zero locations") {
    const auto single = roots_from_poly(std::vector<cplx>{{1.0, 0.0}, {-0.5, 0.0}},
                                        RootKind::pole);
    REQUIRE(single.size() == 1);
    CHECK_THAT(single[0].re, WithinAbs(0.5, 1e-12));
    CHECK_THAT(single[0].im, WithinAbs(0.0, 1e-12));

    // (1 - 0.5 w)(1 - 0.3 w) = 1 - 0.8 w + 0.15 w^2
    const auto pair = roots_from_poly(std::vector<cplx>{{1.0, 0.0}, {-0.8, 0.0}, {0.15, 0.0}},
                                      RootKind::zero);
    REQUIRE(pair.size() == 2);
    CHECK_THAT(pair[0].re, WithinAbs(0.3, 1e-10));
    CHECK_THAT(pair[1].re, WithinAbs(0.5, 1e-10));

    // Conjugate quadratic: (1 - z w)(1 - conj(z) w), z = 0.6 e^{i pi/4}.
    const cplx z = std::polar(0.6, std::numbers::pi / 4.0);
    const auto quad = roots_from_poly(
        std::vector<cplx>{{1.0, 0.0}, {-2.0 * z.real(), 0.0}, {std::norm(z), 0.0}},
        RootKind::pole);
    REQUIRE(quad.size() == 2);
    for (const cplx want : {z, std::conj(z)}) {
        const double best = std::min(std::abs(quad[0].value() - want),
                                     std::abs(quad[1].value() - want));
        CHECK_THAT(best, WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("root finding reports roots outside the disk and non-convergence") {
    CHECK(code_of([] {
              roots_from_poly(std::vector<cplx>{{1.0, 0.0}, {-1.1, 0.0}}, RootKind::pole);
          }) == errc::root_outside_disk);
    CHECK(code_of([] {
              roots_from_poly(std::vector<cplx>{{1.0, 0.0}, {-0.8, 0.0}, {0.15, 0.0}},
                              RootKind::pole, default_stability_margin, 1e-30, 2);
          }) == errc::no_convergence);
    CHECK(code_of([] { roots_from_poly(std::vector<cplx>{{1.0, 0.0}}, RootKind::pole); }) ==
          errc::invalid_argument);
    CHECK(code_of([] {
              roots_from_poly(std::vector<cplx>{{2.0, 0.0}, {1.0, 0.0}}, RootKind::pole);
          }) == errc::invalid_argument);
}

TEST_CASE("root finding handles repeated roots via the residual stop") {
    // (1 - 0.5 w)^2 = 1 - w + 0.25 w^2; the iteration stalls near sqrt(eps)
    // of the double root, the residual criterion accepts the cluster.
    const auto roots = roots_from_poly(
        std::vector<cplx>{{1.0, 0.0}, {-1.0, 0.0}, {0.25, 0.0}}, RootKind::pole);
    REQUIRE(roots.size() == 2);
    CHECK_THAT(roots[0].modulus(), WithinAbs(0.5, 1e-5));
    CHECK_THAT(roots[1].modulus(), WithinAbs(0.5, 1e-5));
}

TEST_CASE("random factored polynomials round-trip through the root finder") {
    oracles::RandomModels gen(101u);
    for (int trial = 0; trial < 25; ++trial) {
        const int degree = std::uniform_int_distribution<int>(1, 5)(gen.rng());
        auto roots = gen.root_list(degree, 0.9);
        // Expand prod (1 - r_i w) to coefficients.
        std::vector<cplx> coeffs{1.0};
        for (const auto& r : roots) {
            coeffs.push_back(0.0);
            for (std::size_t k = coeffs.size() - 1; k >= 1; --k) coeffs[k] -= r * coeffs[k - 1];
        }
        const auto found = roots_from_poly(coeffs, RootKind::pole);
        REQUIRE(found.size() == roots.size());
        for (const auto& want : roots) {
            double best = 1.0;
            for (const auto& got : found) best = std::min(best, std::abs(got.value() - want));
            CHECK_THAT(best, WithinAbs(0.0, 1e-8));
        }
    }
}
