#include "doctest.h"

#include <set>

#include "polydeck/verify.hpp"

using namespace polydeck;
using namespace polydeck::verify;
using kocay::Family;
using kocay::FamilySpec;

namespace {

bool all_pass(const std::vector<Claim>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

std::size_t failures(const std::vector<Claim>& cs) {
  std::size_t k = 0;
  for (const auto& c : cs) k += !c.pass;
  return k;
}

}  // namespace

TEST_CASE("identities at fixed parameters") {
  CHECK(verify_basis_step(3).pass);
  const Claim c = verify_induction_cycles(3, 0, 3);
  CHECK(c.pass);
  CHECK(verify_induction_cycles(4, 1, 2).pass);
  CHECK(verify_induction_neigh(3, 0, 3).pass);
  CHECK(verify_induction_neigh(4, 1, 3).pass);
  CHECK_THROWS_AS(verify_induction_neigh(4, 2, 2), kocay::InvalidParameter);
  CHECK_THROWS_AS(verify_induction_cycles(3, 2, 3), kocay::InvalidParameter);
  CHECK_THROWS_AS(verify_basis_step(2), kocay::InvalidParameter);
}

TEST_CASE("f_r^n branches") {
  // r = n-2 branch: 2^{n-1} (x_1 - x_{1+2^{n-1}}) x_1 (-x_{1+2^{n-1}}).
  const Polynomial f = f_poly(3, 1);
  CHECK(f == 4 * (var(1) - var(5)) * var(1) * (-var(5)));
  CHECK(f_poly(3, 0).degree() == 3);
  CHECK_THROWS_AS(f_poly(3, 2), kocay::InvalidParameter);
}

TEST_CASE("explicit formulas reproduce the recursions") {
  for (int n = 3; n <= 5; ++n) {
    CHECK(explicit_t(n) == kocay::family_poly({Family::T, n}));
    for (int k = 2; k <= n; ++k) CHECK(explicit_g(n, k) == kocay::family_poly({Family::G, n, k}));
  }
}

TEST_CASE("identity suite passes for n = 3..5") {
  for (int n = 3; n <= 5; ++n) {
    const auto claims = verify_identity_suite(n);
    CHECK(all_pass(claims));
    std::set<std::string> ids;
    for (const auto& c : claims) ids.insert(c.id);
    for (const char* id : {"basis-step", "rec-defn-gn", "explicit-formulas", "helper-cycle-1",
                           "odd-even-eight", "even-odd-f", "induction-cycles", "sigma-general",
                           "induction-neigh", "neigh-general", "helper-parity", "kocay-degrees"})
      CHECK(ids.count(id) == 1);
  }
}

TEST_CASE("endomorphism-only identities at n = 6") {
  CHECK(verify_odd_even_eight(6).pass);
  CHECK(verify_even_odd_f(6).pass);
  CHECK(verify_helper_parity(6).pass);
}

TEST_CASE("verdicts do not depend on the thread count") {
  const auto serial = to_json(verify_identity_suite(3));
  setenv("POLYDECK_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  const auto parallel = to_json(verify_identity_suite(3));
  unsetenv("POLYDECK_THREADS");
  CHECK(serial == parallel);
}

TEST_CASE("mutation: one edge dropped from G_2^n") {
  kocay::Construction mutated(6, [](const FamilySpec& s, Polynomial& p) {
    if (s.family == Family::G && s.k == 2 && s.n == 3) p -= Polynomial::term(p.terms().begin()->first);
  });
  const Context ctx{mutated};
  const auto claims = verify_identity_suite(4, ctx);
  CHECK(failures(claims) > 0);
  for (const auto& c : claims)
    if (!c.pass) CHECK_FALSE(c.detail.empty());
  CHECK_FALSE(verify_kocay_degrees(4, ctx).pass);
}

TEST_CASE("mutation: M_1 replaced by M_0") {
  kocay::Construction mutated(6, [](const FamilySpec& s, Polynomial& p) {
    if (s.family == Family::M1) p = kocay::family_poly({Family::M0, s.n});
  });
  const Context ctx{mutated};
  const Claim c = verify_basis_step(3, ctx);
  CHECK_FALSE(c.pass);
  CHECK(c.detail.find("x_0") != std::string::npos);
  CHECK_FALSE(verify_main_theorem(3, {}, ctx).pass);
}

TEST_CASE("dropping the symmetry hypotheses breaks the conditional identities") {
  const Context ctx{kocay::default_construction(), true};
  CHECK_FALSE(verify_basis_step(3, ctx).pass);
  CHECK_FALSE(verify_induction_cycles(3, 0, 3, ctx).pass);
  CHECK_FALSE(verify_induction_neigh(3, 0, 3, ctx).pass);
  CHECK_FALSE(verify_sigma_general(4, 1, ctx).pass);
  CHECK_FALSE(verify_neigh_general(4, 1, ctx).pass);
  for (int part = 1; part <= 3; ++part) CHECK_FALSE(verify_helper_cycle(3, part, ctx).pass);
}

TEST_CASE("planted faults in the index maps are caught") {
  const PEpsFn bad_peps = [](int n, std::span<const int> eps, Vertex i) {
    const Vertex v = kocay::p_eps_index(n, eps, i);
    return v == 1 ? Vertex{3} : v;
  };
  CHECK_FALSE(verify_helper_parity(5, bad_peps).pass);
  const PEpsFn bad_closed = [](int n, std::span<const int> eps, Vertex i) {
    return kocay::mod_v(n, kocay::p_eps_closed_form(n, eps, i) + (eps.size() == 2 ? 1 : 0));
  };
  CHECK_FALSE(verify_repeated_app(4, bad_closed).pass);
  const SigmaFn bad_sigma = [](int i, long long j) {
    return i == 1 && j == 3 ? 3 : kocay::sigma_index(i, j);
  };
  CHECK_FALSE(verify_interaction_sigma_p(4, bad_sigma).pass);
  const EMapFn bad_e = [](int n, int r) { return r == 2 ? Endomorphism::identity() : kocay::e_map(n, r); };
  CHECK_FALSE(verify_sigma_exceeds_threshold(4, bad_e).pass);
}

TEST_CASE("X^n and Y^n separate for n = 3..5") {
  for (int n = 3; n <= 5; ++n) {
    const Claim c = verify_main_theorem(n);
    CHECK_MESSAGE(c.pass, c.detail);
    CHECK(c.data["double_residual"].get<double>() < 1e-12);
  }
}

TEST_CASE("control: relabeled copies of X^3 are not different") {
  const Hypergraph x = kocay::family_hypergraph({Family::X, 3});
  std::map<Vertex, Vertex> shift;
  for (Vertex v : x.vertices()) shift[v] = 100 + (8 - v);
  const Comparison c = compare_spectra(x, x.relabeled(shift));
  CHECK(c.verdict == Comparison::Verdict::NotDifferent);
}

TEST_CASE("eigenvector symmetry") {
  for (int n = 3; n <= 5; ++n) CHECK(verify_eigenvector_symmetry(n).pass);
}

TEST_CASE("regular cones") {
  CHECK(verify_regular_cone(regular_cycle_cone()).pass);
  CHECK(verify_regular_cone(kocay_cone(3)).pass);
  ConeSample bad = regular_cycle_cone();
  bad.apex_link.pop_back();
  CHECK_THROWS_AS(cone(bad), kocay::InvalidParameter);
}

TEST_CASE("claim JSON") {
  const auto j = to_json(verify_basis_step(3));
  CHECK(j["id"] == "basis-step");
  CHECK(j["verdict"] == "pass");
  CHECK(j["kind"] == "exact-identity");
  CHECK(j["params"]["n"] == 3);
}
