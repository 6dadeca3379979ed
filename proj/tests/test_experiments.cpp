#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "lamfrag/experiments.hpp"

using namespace lamfrag;

TEST_CASE("mass identity experiment is exact") {
  auto r = exp_mass_identity(11, 400, 300);
  CHECK(r.verdict);
  CHECK(r.stat("mismatches") == 0.0);
  CHECK(r.name == "mass_identity");
  CHECK_THROWS_AS((void)r.stat("no_such_stat"), std::out_of_range);
}

TEST_CASE("report serializes to json") {
  auto r = exp_mass_identity(11, 50, 100);
  auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["name"] == "mass_identity");
  CHECK(j["seed"] == 11);
  CHECK(j["verdict"] == "pass");
  CHECK(j["stats"]["mismatches"] == 0.0);
  CHECK(j["config"]["samples"] == 50.0);
}

TEST_CASE("factorization vs fragmentation marginals agree") {
  auto r = exp_factorization_vs_fragmentation(2000, 1.0, 2000, 12);
  CHECK(r.verdict);
  CHECK(r.stat("p_largest_face_mass") >= 0.01);
  CHECK(r.stat("p_longest_chord") >= 0.01);
  CHECK(!r.raw_csv.empty());
  CHECK_THROWS_AS(exp_factorization_vs_fragmentation(100, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("factorization vs fragmentation at c = 0 is the bare circle") {
  auto r = exp_factorization_vs_fragmentation(500, 0.0, 50, 12);
  CHECK(r.verdict);
  CHECK(r.stat("ks_largest_face_mass") == 0.0);
  CHECK(r.stat("p_largest_face_mass") == 1.0);
}

TEST_CASE("levy marginal experiment passes for alpha 2") {
  auto r = exp_levy_marginal(2000, 10.0, 2.0, 2000, 13);
  CHECK(r.verdict);
  for (int k = 1; k <= 3; ++k)
    CHECK(r.stat("p_extent_" + std::to_string(k)) >= 0.01);
}

TEST_CASE("levy marginal trivial and error cases") {
  auto r = exp_levy_marginal(2000, 0.0, 2.0, 20, 13);
  CHECK(r.verdict);
  CHECK(r.stat("p_extent_1") == 1.0);
  CHECK_THROWS_AS(exp_levy_marginal(100, 50.0, 2.0, 10, 1), std::invalid_argument);
}

TEST_CASE("local limit sup error within the scaled gate") {
  auto r = exp_local_limit(10000, 1.0, 2.0);
  CHECK(r.verdict);
  CHECK(r.stat("sup_error_j0") <= r.threshold);
  // the +-n^{3/8} walks are far off u=1 at this scale; reported, not gated
  CHECK(r.stat("sup_error_jminus") > r.stat("sup_error_j0"));
  CHECK(r.stat("sup_error_jplus") > r.stat("sup_error_j0"));
  CHECK(r.stat("qmax") == doctest::Approx(1.4638).epsilon(1e-3));
}

TEST_CASE("reduced tree law matches the mu_n-GW shapes") {
  auto r = exp_reduced_tree_law(3, 0.5, 60000, 15);
  CHECK(r.verdict);
  CHECK(r.stat("shapes") == 2.0);
  CHECK(r.stat("p_value") >= 0.01);

  auto r4 = exp_reduced_tree_law(4, 0.5, 60000, 16);
  CHECK(r4.verdict);
  CHECK(r4.stat("shapes") == 5.0);

  // s = 1 has a single shape: trivially consistent
  auto r1 = exp_reduced_tree_law(1, 0.5, 2000, 17);
  CHECK(r1.verdict);
  CHECK(r1.stat("p_value") == 1.0);
  CHECK_THROWS_AS(exp_reduced_tree_law(9, 0.5, 10, 1), std::invalid_argument);
}

TEST_CASE("lukasiewicz vs contour laminations within the height bound") {
  auto r = exp_luka_vs_contour(2000, 8, 16);
  CHECK(r.verdict);
  CHECK(r.stat("violations") == 0.0);
  CHECK(r.stat("min_slack") >= 0.0);

  auto r1 = exp_luka_vs_contour(1, 1, 16);
  CHECK(r1.verdict);
}

TEST_CASE("partition process approaches the prefix laminations") {
  auto r = exp_partition_process({500, 2000}, 1.0, 200, 17);
  CHECK(r.verdict);
  CHECK(r.stat("p95_prefix_n2000") < r.stat("p95_prefix_n500"));
  CHECK(r.stat("p95_suffix_n2000") < r.stat("p95_suffix_n500"));
  CHECK(r.stat("p_largest_block_vs_face") >= 0.01);
  CHECK_THROWS_AS(exp_partition_process({500}, 1.0, 10, 1), std::invalid_argument);
}
