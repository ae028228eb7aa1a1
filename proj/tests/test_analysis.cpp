#include <doctest.h>

#include "fishsim/analysis.hpp"
#include "fishsim/conditions.hpp"
#include "fishsim/engine.hpp"

#include <cmath>
#include <stdexcept>

using namespace fishsim;

namespace {

ModelParams constants() {
    return ModelParams(1.0, CoefficientSpec::constant(2.0), CoefficientSpec::constant(1.0),
                       CoefficientSpec::constant(2.0), DelaySpec::constant_lag(0.5));
}

ModelParams seasonal() {
    return ModelParams(1.0, CoefficientSpec::sinusoid(2.0, 0.5, 1.0), CoefficientSpec::constant(1.0),
                       CoefficientSpec::constant(2.0), DelaySpec::constant_lag(0.1));
}

} // namespace

TEST_CASE("periodic search on constants returns the flat equilibrium orbit") {
    PeriodicOrbit orbit = find_periodic_solution(constants());
    CHECK(orbit.converged);
    CHECK(orbit.residual < 1e-8);
    CHECK(orbit.period == doctest::Approx(1.0));
    for (int k = 0; k <= 64; ++k) {
        double t = orbit.orbit.start() + orbit.period * k / 64.0;
        CHECK(orbit.orbit.eval(t) == doctest::Approx(2.0).epsilon(1e-8));
    }
}

TEST_CASE("periodic search on a seasonal rate converges to a genuine cycle") {
    PeriodicOrbit orbit = find_periodic_solution(seasonal());
    CHECK(orbit.converged);
    CHECK(orbit.residual < 1e-6);
    CHECK(orbit.period == doctest::Approx(1.0));
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k <= 512; ++k) {
        double v = orbit.orbit.eval(orbit.orbit.start() + orbit.period * k / 512.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo > 0.05);  // genuinely oscillating, not flat
    CHECK(lo > 1.8);
    CHECK(hi < 2.2);
}

TEST_CASE("longer transients tighten the periodic residual") {
    double r2 = find_periodic_solution(seasonal(), {}, 2).residual;
    double r4 = find_periodic_solution(seasonal(), {}, 4).residual;
    double r8 = find_periodic_solution(seasonal(), {}, 8).residual;
    CHECK(r4 < 1.2 * r2);
    CHECK(r8 < 1.2 * r4);
    CHECK(r8 < r2);
}

TEST_CASE("periodic orbit is independent of the starting guess") {
    PeriodicOrbit a = find_periodic_solution(seasonal());
    PeriodicOrbit b = find_periodic_solution(seasonal(), {}, 40, 1e-6, 6.0);
    double worst = 0.0;
    for (int k = 0; k <= 512; ++k) {
        double t = a.orbit.start() + a.period * k / 512.0;
        worst = std::max(worst, std::abs(a.orbit.eval(t) - b.orbit.eval(t)));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("periodic search refuses an unverified model unless told to proceed") {
    ModelParams bad(4.0, CoefficientSpec::constant(2.0), CoefficientSpec::constant(1.0),
                    CoefficientSpec::constant(2.0), DelaySpec::constant_lag(1.0));
    CHECK_THROWS_AS(find_periodic_solution(bad), std::invalid_argument);
    PeriodicOrbit forced = find_periodic_solution(bad, {}, 10, 1e-6, std::nullopt, true);
    CHECK(forced.period == doctest::Approx(1.0));  // search still runs
}

TEST_CASE("attraction verification on the standard pair") {
    std::vector<HistorySpec> hs{HistorySpec::constant(1.0, 1.0), HistorySpec::constant(4.0, 4.0)};
    auto reports = verify_attraction(constants(), hs);
    REQUIRE(reports.size() == 1);
    const ConvergenceReport& rep = reports.front();
    CHECK(rep.first == 0);
    CHECK(rep.second == 1);
    CHECK(rep.converged);
    CHECK(rep.sup_diff_last_period < 1e-4);
    CHECK(rep.rate_estimable);
    CHECK(rep.decay_rate_estimate > 0.0);
}

TEST_CASE("attraction verification covers all pairs") {
    std::vector<HistorySpec> hs{HistorySpec::constant(1.0, 1.0), HistorySpec::constant(2.0, 2.0),
                                HistorySpec::constant(4.0, 4.0)};
    auto reports = verify_attraction(constants(), hs);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].first == 0);
    CHECK(reports[0].second == 1);
    CHECK(reports[1].first == 0);
    CHECK(reports[1].second == 2);
    CHECK(reports[2].first == 1);
    CHECK(reports[2].second == 2);
    for (const auto& r : reports)
        CHECK(r.converged);
}

TEST_CASE("identical histories give an exactly zero gap") {
    std::vector<HistorySpec> hs{HistorySpec::constant(1.0, 1.0), HistorySpec::constant(1.0, 1.0)};
    auto reports = verify_attraction(constants(), hs);
    REQUIRE(reports.size() == 1);
    CHECK(reports.front().sup_diff_last_period == 0.0);
    CHECK(!reports.front().rate_estimable);
}

TEST_CASE("attraction verification needs two histories and reports blow-ups by index") {
    CHECK_THROWS_AS(verify_attraction(constants(), {HistorySpec::constant(1.0, 1.0)}),
                    std::invalid_argument);

    ModelParams dying(1.0, CoefficientSpec::constant(0.5), CoefficientSpec::constant(30.0),
                      CoefficientSpec::constant(2.0), DelaySpec::constant_lag(0.5));
    std::vector<HistorySpec> hs{HistorySpec::constant(1.0, 1.0), HistorySpec::constant(2.0, 2.0)};
    try {
        verify_attraction(dying, hs, {}, 60);
        FAIL("expected a blow-up");
    } catch (const BlowUpError& e) {
        CHECK(std::string(e.what()).find("history 0") == 0);
    }
}

TEST_CASE("local stability verification: linear and nonlinear legs settle") {
    ProportionalParams p(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                         DelaySpec::constant_lag(1.0));
    LocalStabilityReport rep = verify_local_stability(p, 0.1);
    CHECK(rep.equilibrium_value == doctest::Approx(2.0));
    CHECK(rep.linear.converged);
    CHECK(rep.linear.sup_diff_last_period < 1e-4);
    CHECK(rep.linear.rate_estimable);
    CHECK(rep.linear.decay_rate_estimate > 0.0);
    CHECK(rep.nonlinear.converged);
    CHECK(rep.nonlinear.sup_diff_last_period < 1e-3 * 2.0);
}

TEST_CASE("local stability refuses a failing candidate unless forced") {
    ProportionalParams p(2.0, 1.0, 4.0, 2.0, CoefficientSpec::constant(1.0),
                         DelaySpec::constant_lag(1.0));
    CHECK_THROWS_AS(verify_local_stability(p, 0.1), std::invalid_argument);
    LocalStabilityReport rep = verify_local_stability(p, 0.1, {}, 80.0, 1e-4, 1e-3, true);
    CHECK(std::isfinite(rep.equilibrium_value));
}

TEST_CASE("zero perturbation stays identically zero") {
    ProportionalParams p(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                         DelaySpec::constant_lag(1.0));
    LocalStabilityReport rep = verify_local_stability(p, 0.0);
    CHECK(rep.linear.sup_diff_last_period == 0.0);
}

TEST_CASE("persistence bounds on an equilibrium run collapse to the equilibrium") {
    Trajectory tr = integrate(constants(), HistorySpec::constant(2.0, 2.0), 50.0);
    PersistenceBoundsResult pb = persistence_bounds(tr, 10.0);
    CHECK(pb.alpha == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(pb.beta == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(pb.alpha <= pb.beta);
}

TEST_CASE("persistence bounds without discard bracket the start") {
    Trajectory tr = integrate(constants(), HistorySpec::constant(1.0, 1.0), 50.0);
    PersistenceBoundsResult pb = persistence_bounds(tr, 0.0);
    CHECK(pb.alpha <= 1.0 + 1e-12);
    CHECK(pb.beta >= 1.0 - 1e-12);
    CHECK(pb.alpha > 0.0);
}

TEST_CASE("persistence bounds agree with the periodic orbit extrema after transients") {
    Trajectory tr = integrate(seasonal(), HistorySpec::constant(1.0, 1.0), 60.0);
    PersistenceBoundsResult pb = persistence_bounds(tr, 40.0);
    PeriodicOrbit orbit = find_periodic_solution(seasonal());
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k <= 4096; ++k) {
        double v = orbit.orbit.eval(orbit.orbit.start() + orbit.period * k / 4096.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(pb.alpha == doctest::Approx(lo).epsilon(1e-6));
    CHECK(pb.beta == doctest::Approx(hi).epsilon(1e-6));
}

TEST_CASE("persistence bounds reject a discard window past the end") {
    Trajectory tr = integrate(constants(), HistorySpec::constant(2.0, 2.0), 10.0);
    CHECK_THROWS_AS(persistence_bounds(tr, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(persistence_bounds(tr, 12.0), std::invalid_argument);
}

TEST_CASE("single-cell sweep matches the standalone checkers") {
    ProportionalParams base(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(0.5));
    SweepAxis a1{SweepAxisKind::gamma, 1.0, 1.0, 1};
    SweepAxis a2{SweepAxisKind::lag, 0.5, 0.5, 1};
    SweepResult res = sweep(base, a1, a2, {});
    REQUIRE(res.cells.size() == 1);
    const SweepCell& cell = res.cells.front();

    ConditionReport attract = check_global_attraction(base);
    ConditionReport local = check_local_stability(base);
    CHECK(cell.has_proportional);
    CHECK(cell.proportional_quantity ==
          doctest::Approx(attract.find("proportional.gamma_a_sup_integral")->quantity)
              .epsilon(1e-12));
    CHECK(cell.local_quantity ==
          doctest::Approx(local.find("local.coefficient_sup_integral")->quantity).epsilon(1e-12));
    CHECK(cell.outcome == "converged");
    CHECK(cell.sup_diff < 1e-4);
}

TEST_CASE("sweep axes place cells row-major with linear spacing") {
    ProportionalParams base(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(0.5));
    SweepAxis a1{SweepAxisKind::gamma, 1.0, 3.0, 3};
    SweepAxis a2{SweepAxisKind::lag, 0.2, 0.4, 2};
    SweepOptions opts;
    opts.horizon_periods = 20;
    SweepResult res = sweep(base, a1, a2, opts);
    REQUIRE(res.cells.size() == 6);
    CHECK(res.cells[0].value1 == doctest::Approx(1.0));
    CHECK(res.cells[0].value2 == doctest::Approx(0.2));
    CHECK(res.cells[1].value2 == doctest::Approx(0.4));
    CHECK(res.cells[2].value1 == doctest::Approx(2.0));
    CHECK(res.cells[5].value1 == doctest::Approx(3.0));
    CHECK(res.cells[5].value2 == doctest::Approx(0.4));
}

TEST_CASE("sweep results are identical across jobs settings") {
    ProportionalParams base(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(0.5));
    SweepAxis a1{SweepAxisKind::gamma, 0.5, 6.0, 3};
    SweepAxis a2{SweepAxisKind::lag, 0.1, 1.5, 3};
    SweepOptions serial;
    serial.horizon_periods = 30;
    serial.jobs = 1;
    SweepOptions parallel = serial;
    parallel.jobs = 4;
    SweepResult a = sweep(base, a1, a2, serial);
    SweepResult b = sweep(base, a1, a2, parallel);
    CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("sweep flags the stability flip along the gamma axis") {
    // quantity gamma * 2 * lag crosses 6 between gamma 2 and gamma 4 at lag 1
    ProportionalParams base(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(1.0));
    SweepAxis a1{SweepAxisKind::gamma, 2.0, 4.0, 2};
    SweepAxis a2{SweepAxisKind::lag, 1.0, 1.0, 1};
    SweepOptions opts;
    opts.horizon_periods = 30;
    SweepResult res = sweep(base, a1, a2, opts);
    REQUIRE(res.cells.size() == 2);
    CHECK(res.cells[0].attraction_verdict == Verdict::holds);
    CHECK(res.cells[0].attraction_quantity == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(res.cells[1].attraction_verdict == Verdict::fails);
    CHECK(res.cells[1].attraction_quantity == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("amplitude axis requires a sinusoid rate") {
    ProportionalParams flat(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(0.5));
    SweepAxis a1{SweepAxisKind::amplitude, 0.0, 0.5, 2};
    SweepAxis a2{SweepAxisKind::lag, 0.5, 0.5, 1};
    SweepResult flat_res = sweep(flat, a1, a2, {});
    REQUIRE(flat_res.cells.size() == 2);
    for (const auto& cell : flat_res.cells) {
        CHECK(cell.outcome == "error");
        CHECK(cell.detail.find("amplitude axis requires a sinusoid") != std::string::npos);
        CHECK(std::isnan(cell.sup_diff));
    }

    ProportionalParams wavy(2.0, 1.0, 1.0, 2.0, CoefficientSpec::sinusoid(1.0, 0.1, 1.0),
                            DelaySpec::constant_lag(0.5));
    SweepOptions opts;
    opts.horizon_periods = 20;
    SweepResult res = sweep(wavy, a1, a2, opts);
    REQUIRE(res.cells.size() == 2);
    CHECK(res.cells[0].outcome == "converged");
}

TEST_CASE("sweep cells that overflow are labeled, not fatal") {
    // huge gamma with a surplus makes the empirical run oscillate into the
    // guard rails while the condition checks simply fail
    ProportionalParams base(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(1.0));
    SweepAxis a1{SweepAxisKind::gamma, 60.0, 60.0, 1};
    SweepAxis a2{SweepAxisKind::lag, 3.0, 3.0, 1};
    SweepOptions opts;
    opts.horizon_periods = 40;
    SweepResult res = sweep(base, a1, a2, opts);
    REQUIRE(res.cells.size() == 1);
    CHECK((res.cells[0].outcome == "overflow" || res.cells[0].outcome == "not-converged"));
    CHECK(res.cells[0].attraction_verdict == Verdict::fails);
}

TEST_CASE("sweep csv carries the documented header") {
    ProportionalParams base(2.0, 1.0, 1.0, 2.0, CoefficientSpec::constant(1.0),
                            DelaySpec::constant_lag(0.5));
    SweepAxis a1{SweepAxisKind::gamma, 1.0, 1.0, 1};
    SweepAxis a2{SweepAxisKind::lag, 0.5, 0.5, 1};
    SweepOptions opts;
    opts.horizon_periods = 20;
    SweepResult res = sweep(base, a1, a2, opts);
    std::string csv = res.to_csv();
    CHECK(csv.find("axis1,value1,axis2,value2,attraction_quantity,attraction_verdict,"
                   "attraction_overall,proportional_quantity,proportional_verdict,local_quantity,"
                   "local_verdict,outcome,detail,sup_diff") == 0);
    CHECK(csv.find("gamma") != std::string::npos);
    CHECK(csv.find("lag") != std::string::npos);
}
