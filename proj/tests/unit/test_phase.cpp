#include "doctest.h"

#include <cmath>
#include <numbers>

#include "grs/invariants.hpp"
#include "grs/phase.hpp"

using namespace grs;

namespace {

constexpr double kS2 = std::numbers::sqrt2;

}  // namespace

TEST_CASE("phase variables of known states") {
    const SeedExpansion seed = compute_seed(SolitonParams::from_ell(0.0));
    const PhaseState o = to_phase(eval_seed(seed, 1e-7));
    CHECK(o.x == doctest::Approx(1.0));
    CHECK(o.y == doctest::Approx(2.0));
    CHECK(o.z == doctest::Approx(0.0));

    const double t = 1.1;
    const double u = t / kS2;
    const PhaseState b = to_phase({t, kS2 * std::sin(u), std::cos(u), 0.0, 0.0});
    CHECK(b.x == doctest::Approx(std::cos(u)));
    CHECK(b.y == doctest::Approx(2.0 * std::cos(u)));
    CHECK(b.z == doctest::Approx(kS2 * std::sin(u)));
    CHECK(b.phi_sq == doctest::Approx(2.0 * std::sin(u) * std::sin(u)));
}

TEST_CASE("phase vector field") {
    const PhaseDerivs fixed = phase_rhs({0.0, 1.0, 2.0, 0.0, 1.0});
    CHECK(fixed.dx == 0.0);
    CHECK(fixed.dy == 0.0);
    CHECK(fixed.dz == 0.0);

    const PhaseDerivs plane = phase_rhs({0.0, 0.3, 4.0, 0.0, 2.0}, 0.0);
    CHECK(plane.dz == 0.0);

    const PhaseState s{0.0, 0.4, 1.7, 0.25, 3.0};
    const PhaseDerivs d = phase_rhs(s);
    CHECK(d.dz / s.z == doctest::Approx(3.0 * s.x - s.y));
    CHECK(d.dphi_sq == doctest::Approx(2.0 * s.x * s.phi_sq));
}

TEST_CASE("first integral on the exact solution") {
    const SolitonParams p = SolitonParams::from_q(-0.5);
    for (double t : {0.4, 2.2, 4.1}) {
        const double u = t / kS2;
        const PhaseState s = to_phase({t, kS2 * std::sin(u), std::cos(u), 0.0, 0.0});
        CHECK(std::abs(first_integral_residual(s, p)) < 1e-13);
    }
}

TEST_CASE("first integral matches q2 pointwise") {
    const SolitonParams p = SolitonParams::from_ell(0.0);
    const Trajectory tr = integrate(p, compute_seed(p));
    for (const SolitonState& s : tr.samples) {
        const PhaseState ph = to_phase(s);
        const double q2 = conserved_at(s, p).q2;
        const double lhs = (2.0 * ph.x * ph.x - ph.y * ph.y + ph.z * ph.z + 2.0) / ph.phi_sq;
        CHECK(std::abs(lhs - q2) <= 1e-10 * std::max(1.0, std::abs(q2)));
    }
}

TEST_CASE("cross-check against the profile run") {
    const SolitonParams p = SolitonParams::from_ell(0.0);
    const SeedExpansion seed = compute_seed(p);
    const Trajectory tr = integrate(p, seed);
    const PhaseTrajectory ph = integrate_phase(p, seed, tr.radial);
    CHECK(ph.termination == Termination::ReachedTMax);
    REQUIRE(ph.samples.size() == tr.samples.size());
    const CrossValidation cv = cross_validate(tr, ph);
    CHECK(cv.compared == tr.samples.size());
    CHECK(cv.max_deviation <= 1e-6);
    CHECK(cv.max_first_integral_drift <= 1e-8);
    for (const PhaseState& s : ph.samples) {
        if (s.r > 0.0) {
            REQUIRE(s.y - 2.0 * s.x > 0.0);
        }
    }
}

TEST_CASE("phase run against the closed form") {
    SolitonParams p = SolitonParams::from_q(-0.5);
    p.t_max = 3.0;
    const SeedExpansion seed = compute_seed(p);
    std::vector<double> rs;
    for (double r = -6.0; r <= 1.0; r += 0.25) {
        rs.push_back(r);
    }
    const PhaseTrajectory ph = integrate_phase(p, seed, rs);
    double err = 0.0;
    for (const PhaseState& s : ph.samples) {
        const double u = 2.0 * std::atan(std::exp(s.r) / (2.0 * kS2));
        err = std::max({err, std::abs(s.x - std::cos(u)), std::abs(s.y - 2.0 * std::cos(u)),
                        std::abs(s.z - kS2 * std::sin(u))});
    }
    CHECK(err <= 1e-8);
}

TEST_CASE("mismatched sampling is rejected") {
    const SolitonParams p = SolitonParams::from_ell(0.0);
    const SeedExpansion seed = compute_seed(p);
    const Trajectory tr = integrate(p, seed);
    const std::vector<double> rs{0.0, 1.0};
    const PhaseTrajectory ph = integrate_phase(p, seed, rs);
    CHECK_THROWS_AS(cross_validate(tr, ph), std::invalid_argument);
}
