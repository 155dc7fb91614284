#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "slotpaging/adversary.hpp"
#include "slotpaging/registry.hpp"

using namespace slotpag;

TEST_CASE("family checks accept all half-rounded subsets") {
  GZFamilies f = family_half_subsets(5);
  CHECK(f.G.size() == 10u);  // C(5,3)
  CHECK(f.Z.size() == 10u);
  GZCheckResult r = check_gz(f);
  CHECK(r.ok);
  CHECK(r.gz0_checked);
}

TEST_CASE("family checks reject a set next to its complement") {
  GZFamilies f;
  f.k = 5;
  f.G = {0b00111};
  f.Z = {0b00111, 0b11000};
  GZCheckResult r = check_gz(f);
  CHECK_FALSE(r.ok);
  bool gz1 = false;
  for (const std::string& v : r.violations)
    if (v.find("gz1") != std::string::npos) gz1 = true;
  CHECK(gz1);
}

TEST_CASE("family checks reject an empty request family") {
  GZFamilies f;
  f.k = 3;
  GZCheckResult r = check_gz(f);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("gz0") != std::string::npos);
}

TEST_CASE("family checks reject a set matched by two strategies") {
  GZFamilies f;
  f.k = 5;
  f.G = {0b00001};
  f.Z = {0b00001, 0b00011};
  GZCheckResult r = check_gz(f);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("gz2") != std::string::npos);
}

TEST_CASE("half-rounded families have binomial sizes and pass all checks") {
  std::size_t expect[] = {0, 0, 0, 3, 0, 10, 0, 35, 0, 126, 0, 462, 0, 1716};
  for (int k = 3; k <= 13; k += 2) {
    GZFamilies f = family_half_subsets(k);
    INFO("k " << k);
    CHECK(f.G.size() == expect[k]);
    GZCheckResult r = check_gz(f);
    CHECK(r.ok);
    CHECK(r.gz0_checked);
  }
  CHECK_THROWS_AS(family_half_subsets(4), std::invalid_argument);
}

TEST_CASE("cycle families have the product size and pass all checks") {
  struct Case {
    int k, m;
    std::size_t size;
    bool exhaustive;
  };
  // |G| = C(m-1, m/2) * l^(m/2), l = k/(m-1).
  for (Case c : {Case{9, 4, 27, true}, Case{15, 4, 75, true},
                 Case{35, 6, 3430, false}}) {
    CycleFamilies fam = family_cycles(c.k, c.m);
    INFO("k " << c.k << " m " << c.m);
    CHECK(fam.ell == c.k / (c.m - 1));
    CHECK(fam.gz.G.size() == c.size);
    CHECK(fam.gz.Z.size() == c.size);
    GZCheckResult r = check_gz(fam.gz);
    CHECK(r.ok);
    CHECK(r.gz0_checked == c.exhaustive);
    // Each strategy holds exactly m/2 cycle edges, its complement m/2 - 1.
    WideSet full = wide_full(c.k);
    for (WideSet z : fam.gz.Z) {
      CHECK(count_cycle_edges(z, c.m, fam.ell) == c.m / 2);
      CHECK(count_cycle_edges(full & ~z, c.m, fam.ell) == c.m / 2 - 1);
    }
  }
}

TEST_CASE("cycle family parameter validation") {
  CHECK_THROWS_AS(family_cycles(9, 3), std::invalid_argument);
  CHECK_THROWS_AS(family_cycles(8, 4), std::invalid_argument);
  CHECK_THROWS_AS(family_cycles(12, 4), std::invalid_argument);  // even l
  CHECK_THROWS_AS(family_cycles(3, 4), std::invalid_argument);   // k <= m
}

TEST_CASE("two-page adversary beats deterministic algorithms") {
  GZFamilies f = family_half_subsets(5);
  for (const std::string& name : {std::string("exh"), std::string("lru")}) {
    auto alg = make_online_algorithm(name, 1);
    TwoPageResult r = two_page_adversary(f, *alg, 200);
    INFO("alg " << name);
    CHECK(r.alg_cost >= 200u);  // every round faults
    CHECK(r.max_faulting_strategies <= 1);
    CHECK(r.ratio_lb >= 9.0);  // tends to 2 * C(5,3) / 2 = 10
  }
}

TEST_CASE("forcing sequence pins a single configuration") {
  BalancedConfigSet c;
  c.k = 4;
  c.configs = {make_slots({1, 2})};
  RequestSequence psi = forcing_sequence(c);
  CHECK_FALSE(psi.requests.empty());
  CHECK(verify_forcing(c, psi));
}

TEST_CASE("forcing sequence pins greedy balanced codes exactly") {
  for (int k : {4, 6}) {
    BalancedConfigSet c = greedy_balanced_code(k);
    REQUIRE(c.configs.size() >= 2u);
    RequestSequence psi = forcing_sequence(c);
    INFO("k " << k << " with " << c.configs.size() << " configurations");
    CHECK(verify_forcing(c, psi));
    // The check is order-insensitive: the sequence acts as a set.
    std::mt19937_64 rng(7);
    std::shuffle(psi.requests.begin(), psi.requests.end(), rng);
    CHECK(verify_forcing(c, psi));
  }
}

TEST_CASE("forcing sequence rejects bad configuration sets") {
  BalancedConfigSet close;
  close.k = 4;
  close.configs = {make_slots({1, 2}), make_slots({1, 3})};  // distance 2
  CHECK_THROWS_AS(forcing_sequence(close), std::invalid_argument);
  BalancedConfigSet unbalanced;
  unbalanced.k = 4;
  unbalanced.configs = {make_slots({1})};
  CHECK_THROWS_AS(forcing_sequence(unbalanced), std::invalid_argument);
  BalancedConfigSet big = greedy_balanced_code(10);
  CHECK_THROWS_AS(verify_forcing(big, forcing_sequence(big)), CapError);
}

TEST_CASE("repeat adversary pays one swap per phase") {
  auto alg = make_online_algorithm("lru", 3);
  AooAdversaryResult r = all_or_one_adversary(3, 50, 8, 11, *alg);
  CHECK(r.adv_cost == 50);
  CHECK(r.ratio > 1.0);
}

TEST_CASE("repeat adversary with one slot gets ratio one from lru") {
  auto alg = make_online_algorithm("lru", 0);
  AooAdversaryResult r = all_or_one_adversary(1, 20, 4, 5, *alg);
  CHECK(r.adv_cost == 20);
  CHECK(r.alg_cost == 20u);
  CHECK(r.ratio == 1.0);
}
