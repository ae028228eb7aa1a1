#include <doctest.h>

#include "fishsim/config.hpp"

#include <cmath>

using namespace fishsim;

TEST_CASE("minimal document resolves with run defaults") {
    ExperimentConfig cfg = parse_config(R"(
proportional {
  a = 2
  b = 1
  gamma = 1
  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 1 }
}
)");
    REQUIRE(cfg.proportional);
    CHECK(!cfg.model);
    CHECK(cfg.proportional->a == 2.0);
    CHECK(cfg.proportional->K == 2.0);
    CHECK(cfg.run.horizon_periods == 60);
    CHECK(cfg.run.tol == 1e-4);
    CHECK(cfg.run.step == 0.0);
    CHECK(cfg.run.transient_periods == 40);
    CHECK(cfg.run.residual_tol == 1e-6);
    CHECK(cfg.run.x0 == 0.1);
    CHECK(cfg.run.horizon == 80.0);
    CHECK(!cfg.run.t_end);
    CHECK(!cfg.run.guess);
    CHECK(cfg.run.control().vanishing_lag_tol == 1e-12);
}

TEST_CASE("full model section with every coefficient shape") {
    ExperimentConfig cfg = parse_config(R"(
model {
  gamma = 2
  a { kind = sinusoid  mean = 2  amplitude = 0.5  period = 1  phase = 0.25 }
  b { kind = constant  value = 1 }
  K { kind = piecewise_linear  period = 1  times = [0, 0.5]  values = [2, 3] }
  delay { kind = fourier  period = 1  c0 = 0.3  cos = [0.1]  sin = [0.05] }
}
history { kind = formula  spec { kind = constant  value = 1.5 }  n0 = 1.5 }
)");
    REQUIRE(cfg.model);
    CHECK(cfg.model->gamma == 2.0);
    CHECK(cfg.model->a.eval(0.0) == doctest::Approx(2.0 + 0.5 * std::sin(0.25)));
    CHECK(cfg.model->K.eval(0.25) == doctest::Approx(2.5));
    CHECK(!cfg.model->delay.is_constant());
    CHECK(cfg.model->delay.lag(0.0) == doctest::Approx(0.4));
    REQUIRE(cfg.history);
    CHECK(cfg.history->phi(-2.0) == doctest::Approx(1.5));
    CHECK(cfg.history->n0() == 1.5);
}

TEST_CASE("sinusoid coefficient example evaluates as documented") {
    ExperimentConfig cfg = parse_config(R"(
model {
  gamma = 1
  a { kind = sinusoid  mean = 2  amplitude = 0.5  period = 1 }
  b { kind = constant  value = 1 }
  K { kind = constant  value = 2 }
  delay { kind = constant  value = 0.1 }
}
)");
    REQUIRE(cfg.model);
    CHECK(cfg.model->a.eval(0.25) == doctest::Approx(2.5));
}

TEST_CASE("table history parses times, values, and start") {
    ExperimentConfig cfg = parse_config(R"(
model {
  gamma = 1
  a { kind = constant  value = 2 }
  b { kind = constant  value = 1 }
  K { kind = constant  value = 2 }
  delay { kind = constant  value = 1 }
}
history { kind = table  times = [-1, -0.5]  values = [1, 3]  n0 = 2 }
)");
    REQUIRE(cfg.history);
    CHECK(cfg.history->phi(-0.75) == doctest::Approx(2.0));
    CHECK(cfg.history->n0() == 2.0);
}

TEST_CASE("converge section collects history list") {
    ExperimentConfig cfg = parse_config(R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 0.5 }
}
converge {
  history { kind = constant  value = 1  n0 = 1 }
  history { kind = constant  value = 4  n0 = 4 }
}
)");
    REQUIRE(cfg.converge_histories.size() == 2);
    CHECK(cfg.converge_histories[0].phi(-1.0) == 1.0);
    CHECK(cfg.converge_histories[1].phi(-1.0) == 4.0);
}

TEST_CASE("a single converge history is rejected") {
    CHECK_THROWS_WITH_AS(parse_config(R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 0.5 }
}
converge {
  history { kind = constant  value = 1  n0 = 1 }
}
)"),
                         doctest::Contains("at least two history sections"), ConfigError);
}

TEST_CASE("sweep section resolves both axes") {
    ExperimentConfig cfg = parse_config(R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 0.5 }
}
sweep {
  axis1 { kind = gamma  lo = 0.5  hi = 8  count = 8 }
  axis2 { kind = lag  lo = 0.1  hi = 2  count = 8 }
}
)");
    REQUIRE(cfg.sweep_axis1);
    REQUIRE(cfg.sweep_axis2);
    CHECK(cfg.sweep_axis1->kind == SweepAxisKind::gamma);
    CHECK(cfg.sweep_axis1->count == 8);
    CHECK(cfg.sweep_axis2->kind == SweepAxisKind::lag);
    CHECK(cfg.sweep_axis2->value(7) == doctest::Approx(2.0));
}

TEST_CASE("model and proportional sections are mutually exclusive") {
    CHECK_THROWS_WITH_AS(parse_config(R"(
model {
  gamma = 1
  a { kind = constant  value = 2 }
  b { kind = constant  value = 1 }
  K { kind = constant  value = 2 }
  delay { kind = constant  value = 1 }
}
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 1 }
}
)"),
                         doctest::Contains("not both"), ConfigError);
}

TEST_CASE("bad gamma is reported with its config path") {
    CHECK_THROWS_WITH_AS(parse_config(R"(
model {
  gamma = -1
  a { kind = constant  value = 2 }
  b { kind = constant  value = 1 }
  K { kind = constant  value = 2 }
  delay { kind = constant  value = 1 }
}
)"),
                         doctest::Contains("model.gamma"), ConfigError);
}

TEST_CASE("negative lag is rejected at its path") {
    CHECK_THROWS_WITH_AS(parse_config(R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = -0.5 }
}
)"),
                         doctest::Contains("lag must be nonnegative"), ConfigError);
}

TEST_CASE("syntax errors carry line numbers") {
    try {
        parse_config_tree("model {\n  gamma = 1\n  a = }\n");
        FAIL("expected a syntax error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("unbalanced braces are a syntax error") {
    CHECK_THROWS_AS(parse_config_tree("model {\n  gamma = 1\n"), ConfigError);
}

TEST_CASE("numbers must consume the whole token") {
    CHECK_THROWS_WITH_AS(parse_config(R"(
proportional {
  a = 2x  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 1 }
}
)"),
                         doctest::Contains("not a number"), ConfigError);
}

TEST_CASE("unknown keys: strict raises, lenient warns") {
    std::string doc = R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  typo_key = 3
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 1 }
}
)";
    CHECK_THROWS_WITH_AS(parse_config(doc, true), doctest::Contains("unknown key"), ConfigError);

    std::vector<std::string> warnings;
    ExperimentConfig cfg = parse_config(doc, false, &warnings);
    REQUIRE(cfg.proportional);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("proportional.typo_key") != std::string::npos);
}

TEST_CASE("unknown coefficient kind lists the alternatives") {
    CHECK_THROWS_WITH_AS(parse_config(R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = wobble  value = 1 }
  delay { kind = constant  value = 1 }
}
)"),
                         doctest::Contains("unknown coefficient kind"), ConfigError);
}

TEST_CASE("axis validation: counts and ranges") {
    std::string head = R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 0.5 }
}
)";
    CHECK_THROWS_AS(parse_config(head + R"(
sweep {
  axis1 { kind = gamma  lo = 2  hi = 1  count = 4 }
  axis2 { kind = lag  lo = 0.1  hi = 2  count = 4 }
}
)"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(head + R"(
sweep {
  axis1 { kind = gamma  lo = 0  hi = 1  count = 4 }
  axis2 { kind = lag  lo = 0.1  hi = 2  count = 4 }
}
)"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(head + R"(
sweep {
  axis1 { kind = spin  lo = 0.5  hi = 1  count = 4 }
  axis2 { kind = lag  lo = 0.1  hi = 2  count = 4 }
}
)"),
                    ConfigError);
}

TEST_CASE("run knobs are validated") {
    std::string head = R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 0.5 }
}
)";
    CHECK_THROWS_AS(parse_config(head + "run { tol = 0 }\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "run { step = -0.1 }\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "run { horizon_periods = 2.5 }\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "run { t_end = -1 }\n"), ConfigError);
    ExperimentConfig ok = parse_config(head + "run { t_end = 12.5  step = 0.01 }\n");
    REQUIRE(ok.run.t_end);
    CHECK(*ok.run.t_end == 12.5);
    CHECK(ok.run.control().step == 0.01);
}

TEST_CASE("serialization round-trips byte for byte") {
    std::string doc = R"(
model {
  gamma = 1.5
  a { kind = sinusoid  mean = 2  amplitude = 0.5  period = 1  phase = 0.1 }
  b { kind = constant  value = 1 }
  K { kind = piecewise_linear  period = 2  times = [0, 0.5, 1.2]  values = [2, 3, 2.5] }
  delay { kind = constant  value = 0.25 }
  period = 2
}
history { kind = table  times = [-1, -0.25]  values = [1, 2]  n0 = 1.75 }
run { t_end = 30  horizon_periods = 50  tol = 0.001  guess = 2.5 }
sweep {
  axis1 { kind = gamma  lo = 0.5  hi = 4  count = 6 }
  axis2 { kind = amplitude  lo = 0  hi = 0.8  count = 5 }
}
converge {
  history { kind = constant  value = 1  n0 = 1 }
  history { kind = formula  spec { kind = sinusoid  mean = 2  amplitude = 0.1  period = 1 }  n0 = 2 }
}
)";
    ExperimentConfig cfg = parse_config(doc);
    std::string first = serialize_config(cfg);
    ExperimentConfig reparsed = parse_config(first);
    std::string second = serialize_config(reparsed);
    CHECK(first == second);
    REQUIRE(reparsed.model);
    CHECK(reparsed.model->gamma == cfg.model->gamma);
    CHECK(reparsed.model->a.eval(0.3) == cfg.model->a.eval(0.3));
    CHECK(reparsed.run.horizon_periods == 50);
    REQUIRE(reparsed.run.guess);
    CHECK(*reparsed.run.guess == 2.5);
    REQUIRE(reparsed.sweep_axis2);
    CHECK(reparsed.sweep_axis2->kind == SweepAxisKind::amplitude);
    CHECK(reparsed.converge_histories.size() == 2);
}

TEST_CASE("proportional round-trip covers the fourier rate") {
    std::string doc = R"(
proportional {
  a = 2  b = 0.5  gamma = 2  K = 1.5
  r { kind = fourier  period = 2  c0 = 1  cos = [0.2, 0.1]  sin = [0.05] }
  delay { kind = sinusoid  mean = 0.4  amplitude = 0.2  period = 2 }
}
run { horizon_periods = 25 }
)";
    ExperimentConfig cfg = parse_config(doc);
    std::string first = serialize_config(cfg);
    ExperimentConfig reparsed = parse_config(first);
    CHECK(serialize_config(reparsed) == first);
    REQUIRE(reparsed.proportional);
    CHECK(reparsed.proportional->r.eval(0.7) == cfg.proportional->r.eval(0.7));
    CHECK(reparsed.proportional->delay.lag(0.3) == cfg.proportional->delay.lag(0.3));
}

TEST_CASE("resolved model helper expands either section") {
    ExperimentConfig viaProp = parse_config(R"(
proportional {
  a = 2  b = 1  gamma = 1  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 1 }
}
)");
    ModelParams m = viaProp.resolved_model();
    CHECK(m.a.eval(0.0) == doctest::Approx(2.0));
    CHECK(m.b.eval(0.0) == doctest::Approx(1.0));

    ExperimentConfig neither;
    CHECK_THROWS_AS(neither.resolved_model(), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    ExperimentConfig cfg = parse_config(R"(
# leading comment
proportional {
  a = 2  # trailing comment
  b = 1
  gamma = 1
  K = 2
  r { kind = constant  value = 1 }
  delay { kind = constant  value = 1 }
}

# closing note
)");
    REQUIRE(cfg.proportional);
    CHECK(cfg.proportional->a == 2.0);
}
