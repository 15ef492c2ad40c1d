#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "halfrib/errors.hpp"
#include "halfrib/root_datum.hpp"

using namespace halfrib;

TEST_CASE("A1 datum") {
  const RootDatum& rd = RootDatum::get('A', 1);
  CHECK(rd.cartan == std::vector<std::vector<long>>{{2}});
  CHECK(rd.L == 4);
  CHECK(rd.fw_form[0][0] == mpq_class(1, 2));
  CHECK(rd.pq_order == 2);
  // (alpha, alpha) = 2, (w, w) = 1/2
  Weight alpha = rd.simple_root(0);
  CHECK(rd.form(alpha, alpha) == 2);
  CHECK(rd.form(Weight({1}), Weight({1})) == mpq_class(1, 2));
  CHECK(rd.longest_word == std::vector<int>{0});
}

TEST_CASE("A2 datum") {
  const RootDatum& rd = RootDatum::get('A', 2);
  CHECK(rd.L == 6);
  // <alpha_i, rho^vee> = 1 for both nodes
  for (int i = 0; i < 2; ++i) CHECK(rd.two_rho_check_pairing(rd.simple_root(i)) == 2);
  CHECK(rd.form(Weight({1, 0}), Weight({0, 1})) == mpq_class(1, 3));
  CHECK(rd.pq_order == 3);
  CHECK(rd.longest_word.size() == 3);
}

TEST_CASE("A3 datum") {
  const RootDatum& rd = RootDatum::get('A', 3);
  CHECK(rd.L == 8);
  CHECK(rd.longest_word.size() == 6);
  CHECK(rd.positive_roots.size() == 6);
  CHECK(rd.pq_order == 4);
  // theta is the flip of the diagram
  CHECK(rd.theta == std::vector<int>{2, 1, 0});
  // w0(w1) = -w3
  CHECK(rd.w0_action(Weight({1, 0, 0})) == Weight({0, 0, -1}));
}

TEST_CASE("rejects unknown types") {
  CHECK_THROWS_AS(RootDatum::get('Z', 2), Error);
  CHECK_THROWS_AS(RootDatum::get('A', 0), Error);
  CHECK_THROWS_AS(RootDatum::get('A', 99), Error);
}

TEST_CASE("structural non-simply-laced tables stay self-consistent") {
  // construction re-derives theta from the longest word and cross-checks
  const RootDatum& b2 = RootDatum::get('B', 2);
  CHECK(b2.positive_roots.size() == 4);
  const RootDatum& g2 = RootDatum::get('G', 2);
  CHECK(g2.positive_roots.size() == 6);
  CHECK(g2.pq_order == 1);
}

TEST_CASE("order-2 characters") {
  CHECK(RootDatum::get('A', 1).order2_characters().size() == 2);
  CHECK(RootDatum::get('A', 2).order2_characters().size() == 1);
  auto a3 = RootDatum::get('A', 3).order2_characters();
  REQUIRE(a3.size() == 2);
  CHECK(a3[0].is_trivial());
  CHECK_FALSE(a3[1].is_trivial());
  // the nontrivial one is -1 on the standard weight, +1 on the middle one
  CHECK(a3[1].eval_sign(Weight({1, 0, 0})) == -1);
  CHECK(a3[1].eval_sign(Weight({0, 1, 0})) == 1);
}

TEST_CASE("root lattice pairing parity") {
  // <2 gamma, rho^vee> is even for gamma in the root lattice
  std::mt19937 gen(11);
  for (char rank : {1, 2, 3}) {
    const RootDatum& rd = RootDatum::get('A', rank);
    for (int trial = 0; trial < 200; ++trial) {
      Weight gamma = Weight::zero(rd.rank);
      for (int i = 0; i < rd.rank; ++i) {
        long c = std::uniform_int_distribution<long>(-3, 3)(gen);
        gamma = gamma + rd.simple_root(i).scaled(c);
      }
      CHECK(rd.in_root_lattice(gamma));
      CHECK(rd.two_rho_check_pairing(gamma) % 2 == 0);
    }
  }
}

TEST_CASE("theta involution preserving the Cartan matrix") {
  for (char rank : {1, 2, 3}) {
    const RootDatum& rd = RootDatum::get('A', rank);
    for (int i = 0; i < rd.rank; ++i) {
      CHECK(rd.theta[rd.theta[i]] == i);
      for (int j = 0; j < rd.rank; ++j)
        CHECK(rd.cartan[rd.theta[i]][rd.theta[j]] == rd.cartan[i][j]);
    }
  }
}

TEST_CASE("root order integrality for all weights in scope") {
  std::mt19937 gen(12);
  for (char rank : {1, 2, 3}) {
    const RootDatum& rd = RootDatum::get('A', rank);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<long> c(rd.rank), cm(rd.rank);
      for (int i = 0; i < rd.rank; ++i) {
        c[i] = std::uniform_int_distribution<long>(-6, 6)(gen);
        cm[i] = std::uniform_int_distribution<long>(-6, 6)(gen);
      }
      Weight lam{c}, mu{cm};
      mpq_class a = rd.form(lam, mu) * rd.L / 2;
      a.canonicalize();
      CHECK(a.get_den() == 1);
      mpq_class b = rd.j_exponent(lam) * rd.L;
      b.canonicalize();
      CHECK(b.get_den() == 1);
    }
  }
}

TEST_CASE("weyl dimensions") {
  const RootDatum& a1 = RootDatum::get('A', 1);
  CHECK(a1.weyl_dim(Weight({0})) == 1);
  CHECK(a1.weyl_dim(Weight({5})) == 6);
  const RootDatum& a2 = RootDatum::get('A', 2);
  CHECK(a2.weyl_dim(Weight({1, 1})) == 8);
  CHECK(a2.weyl_dim(Weight({2, 1})) == 15);
  const RootDatum& a3 = RootDatum::get('A', 3);
  CHECK(a3.weyl_dim(Weight({0, 1, 0})) == 6);
  CHECK(a3.weyl_dim(Weight({1, 0, 1})) == 15);
}

TEST_CASE("datum json dump") {
  nlohmann::json j = RootDatum::get('A', 2).to_json();
  CHECK(j["type"] == "A2");
  CHECK(j["L"] == 6);
  CHECK(j["longest_word"].size() == 3);
}
