#include <doctest.h>

#include <qrl/gaussian.hpp>
#include <qrl/gkp.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace qrl;

TEST_SUITE("gkp") {

TEST_CASE("lattice constants") {
    CHECK(kRootPi * kRootPi == doctest::Approx(M_PI));
    CHECK(kStabilizerSpacing == doctest::Approx(2 * kRootPi));
    CHECK(kQunaughtSpacing * kQunaughtSpacing == doctest::Approx(2 * M_PI));
}

TEST_CASE("decibel bookkeeping round-trips") {
    CHECK(db_from_variance(0.5) == doctest::Approx(0.0));    // vacuum variance
    CHECK(db_from_variance(0.05) == doctest::Approx(10.0));  // 10 dB below vacuum
    CHECK(variance_from_db(10.0) == doctest::Approx(0.05));
    CHECK(variance_from_db(0.0) == doctest::Approx(0.5));
    for (double db : {3.7, 10.0, 14.2, 20.0})
        CHECK(db_from_variance(variance_from_db(db)) == doctest::Approx(db).epsilon(1e-12));
    const SqueezingSpec spec = SqueezingSpec::from_db(12.0);
    CHECK(spec.db == doctest::Approx(12.0));
    CHECK(spec.delta_sq == doctest::Approx(0.5 * std::pow(10.0, -1.2)));
    const SqueezingSpec spec2 = SqueezingSpec::from_variance(0.05);
    CHECK(spec2.db == doctest::Approx(10.0));
    CHECK_THROWS_AS(db_from_variance(0.0), std::invalid_argument);
    CHECK_THROWS_AS(db_from_variance(-0.1), std::invalid_argument);
}

TEST_CASE("threshold error convention") {
    CHECK_FALSE(error_threshold_exceeded(0.0));
    CHECK_FALSE(error_threshold_exceeded(kRootPi / 2 - 1e-6));
    CHECK(error_threshold_exceeded(kRootPi / 2 + 1e-6));
    CHECK(error_threshold_exceeded(-1.0));  // |−1| > √π/2 ≈ 0.886
    CHECK_FALSE(error_threshold_exceeded(0.88));
    // A shift near a stabilizer multiple still counts as a threshold error.
    CHECK(error_threshold_exceeded(2 * kRootPi + 0.05));
}

TEST_CASE("modular decoding bins to the nearest logical multiple") {
    CHECK(modular_decode(0.0).correction == 0.0);
    CHECK_FALSE(modular_decode(0.0).logical_flip);
    CHECK_FALSE(modular_decode(0.05).logical_flip);
    {
        const BinResult r = modular_decode(kRootPi + 0.01);
        CHECK(r.correction == doctest::Approx(kRootPi));
        CHECK(r.logical_flip);
    }
    {
        // near a stabilizer (even) multiple: corrected with no logical flip
        const BinResult r = modular_decode(2 * kRootPi + 0.05);
        CHECK(r.correction == doctest::Approx(2 * kRootPi));
        CHECK_FALSE(r.logical_flip);
    }
    {
        const BinResult r = modular_decode(-kRootPi - 0.02);
        CHECK(r.correction == doctest::Approx(-kRootPi));
        CHECK(r.logical_flip);
    }
    {
        // −0.9/√π ≈ −0.51 rounds to −1: an odd multiple
        const BinResult r = modular_decode(-0.9);
        CHECK(r.correction == doctest::Approx(-kRootPi));
        CHECK(r.logical_flip);
    }
}

TEST_CASE("non-finite shifts are rejected") {
    CHECK_THROWS_AS(error_threshold_exceeded(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(modular_decode(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("qunaught lattice is square with spacing root-two-pi") {
    const ShiftLattice lat = qunaught_lattice(1);
    REQUIRE(lat.basis.size() == 2);
    CHECK(lat.basis[0][0] == doctest::Approx(kQunaughtSpacing));
    CHECK(lat.basis[0][1] == 0.0);
    CHECK(lat.basis[1][1] == doctest::Approx(kQunaughtSpacing));
}

TEST_CASE("two qunaughts on a balanced splitter form an encoded Bell pair") {
    const ShiftLattice before = qunaught_lattice(2);
    const ShiftLattice after = transform(before, beamsplitter(0, 1, M_PI / 4, 2));
    CHECK(lattices_equal(after, gkp_bell_lattice()));
    // the opposite splitter orientation works too (lattice is symmetric)
    const ShiftLattice after_flipped = transform(before, beamsplitter(1, 0, M_PI / 4, 2));
    CHECK(lattices_equal(after_flipped, gkp_bell_lattice()));
    // but without the splitter the lattices differ
    CHECK_FALSE(lattices_equal(before, gkp_bell_lattice()));
}

TEST_CASE("lattice equality is a point-set property, not a basis property") {
    const ShiftLattice bell = gkp_bell_lattice();
    CHECK(lattices_equal(bell, bell));
    // re-generate with a different basis of the same lattice
    ShiftLattice rebased = bell;
    rebased.basis[0] = vec_add(bell.basis[0], bell.basis[1]);  // (2√π, 0, 0, 0)
    CHECK(lattices_equal(rebased, bell));
    // a strict sublattice is not equal
    ShiftLattice doubled = bell;
    for (Vec& v : doubled.basis)
        for (double& x : v) x *= 2.0;
    CHECK_FALSE(lattices_equal(doubled, bell));
}

TEST_CASE("lattice plumbing rejects malformed inputs") {
    CHECK_THROWS_AS(lattices_equal(qunaught_lattice(1), gkp_bell_lattice()), std::invalid_argument);
    ShiftLattice short_basis = gkp_bell_lattice();
    short_basis.basis.pop_back();
    CHECK_THROWS_AS(lattices_equal(short_basis, gkp_bell_lattice()), std::invalid_argument);
    CHECK_THROWS_AS(transform(qunaught_lattice(1), beamsplitter(0, 1, 0.3, 2)), std::invalid_argument);
}

TEST_CASE("lattice transform maps basis vectors through the symplectic") {
    const ShiftLattice lat = qunaught_lattice(1);
    const ShiftLattice rot = transform(lat, fourier());
    // F maps (s, 0) -> (0, s) and (0, s) -> (−s, 0): same square lattice
    CHECK(lattices_equal(rot, lat));
    const ShiftLattice sq = transform(lat, squeeze(2.0));
    CHECK_FALSE(lattices_equal(sq, lat));
}

} // TEST_SUITE
