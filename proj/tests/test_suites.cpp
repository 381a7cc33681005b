#include <doctest.h>

#include "rdual/suites.hpp"

using namespace rdual;

TEST_CASE("every suite passes a short run") {
  SuiteConfig cfg;
  cfg.trials = 40;
  cfg.seed = 2024;
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    const SuiteReport r = run_suite(name, cfg);
    CHECK(r.all_passed());
    CHECK(r.passed == 40);
  }
}

TEST_CASE("suite reports are deterministic and replayable") {
  SuiteConfig cfg;
  cfg.trials = 25;
  cfg.seed = 9;
  const std::string a = suite_report_to_json(run_suite("prop3_2", cfg)).dump();
  const std::string b = suite_report_to_json(run_suite("prop3_2", cfg)).dump();
  CHECK(a == b);
  cfg.seed = 10;
  CHECK(suite_report_to_json(run_suite("prop3_2", cfg)).dump() != a);

  cfg.only_trial = 3;
  const SuiteReport one = run_suite("thm3_5", cfg);
  CHECK(one.passed + one.failed == 1);

  SuiteReport fake{"thm1_2", cfg, 0, 1, 0.0, {TrialOutcome{7, 0, false, 0.0, ""}}};
  CHECK(fake.replay_command(fake.failures[0]) ==
        "rdual prop run --suite thm1_2 --seed 10 --trials 25 --dims 2,3,4,5,6,7,8 --trial 7");
}

TEST_CASE("csv export has one row per suite") {
  SuiteConfig cfg;
  cfg.trials = 3;
  const std::string csv = suite_reports_to_csv({run_suite("thm1_2", cfg), run_suite("gabor_duality", cfg)});
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.rfind("suite,seed,trials", 0) == 0);
}

TEST_CASE("bad configurations") {
  SuiteConfig cfg;
  CHECK_THROWS_AS(run_suite("nope", cfg), std::invalid_argument);
  cfg.trials = 0;
  CHECK_THROWS_AS(run_suite("thm1_2", cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.dims = {};
  CHECK_THROWS_AS(run_suite("thm1_2", cfg), std::invalid_argument);
  CHECK(is_suite("gabor_duality"));
  CHECK_FALSE(is_suite("thm9"));
}
