#ifndef POLYDECK_VERIFY_HPP
#define POLYDECK_VERIFY_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polydeck/hypergraph.hpp"
#include "polydeck/kocay.hpp"
#include "polydeck/spectral.hpp"

// Claim checkers for the identities behind the X^n / Y^n spectral separation.
// Symmetry hypotheses (x fixed by theta_n, sigma_i, ...) are imposed by
// substituting orbit representatives, so every exact claim is a zero test.
namespace polydeck::verify {

enum class ClaimKind { ExactIdentity, BruteForce, Numeric };

std::string kind_name(ClaimKind k);

struct Claim {
  std::string id;
  nlohmann::json params = nlohmann::json::object();
  ClaimKind kind = ClaimKind::ExactIdentity;
  bool pass = false;
  std::string detail;  // certificate on pass, counterexample on fail
  nlohmann::json data = nlohmann::json::object();  // numeric claims: brackets etc.
  double seconds = 0;  // wall time, not serialized
};

/// {id, params, kind, verdict, detail[, data]}.
nlohmann::json to_json(const Claim& c);
nlohmann::json to_json(std::span<const Claim> claims);

/// Checks that depend on the family constructions take one of these.  With
/// drop_symmetry set, orbit substitutions become the identity; the
/// conditional identities should then fail (harness self-test).
struct Context {
  kocay::Construction& construction = kocay::default_construction();
  bool drop_symmetry = false;
};

// f_r^n per its two-branch definition, 0 <= r <= n-2.
Polynomial f_poly(int n, int r);

// Lagrangians built from the closed-form p_eps without the recursions.
Polynomial explicit_g(int n, int k);
Polynomial explicit_t(int n);

Claim verify_basis_step(int n, const Context& ctx = {});
Claim verify_rec_defn_gn(int n, const Context& ctx = {});
Claim verify_explicit_formulas(int n, const Context& ctx = {});
Claim verify_d3_reindex(const Context& ctx = {});
Claim verify_helper_cycle(int n, int part, const Context& ctx = {});
Claim verify_odd_even_eight(int n, const Context& ctx = {});
Claim verify_even_odd_f(int n, const Context& ctx = {});
Claim verify_induction_cycles(int n, int r, int k, const Context& ctx = {});
Claim verify_sigma_general(int n, int r, const Context& ctx = {});
/// Throws kocay::InvalidParameter for (r, k) = (n-2, 2), where the expected
/// square involves E_{n+1}^n.
Claim verify_induction_neigh(int n, int r, int k, const Context& ctx = {});
Claim verify_neigh_general(int n, int r, const Context& ctx = {});
Claim verify_kocay_degrees(int n, const Context& ctx = {});
Claim verify_link_coherence(int n, const Context& ctx = {});
Claim verify_tn_parity(int n, const Context& ctx = {});

// Index-level claims.  The maps are injectable so a planted fault can be
// shown to be caught.
using PEpsFn = std::function<Vertex(int n, std::span<const int> eps, Vertex i)>;
using SigmaFn = std::function<long long(int i, long long j)>;
using EMapFn = std::function<Endomorphism(int n, int r)>;

Claim verify_helper_parity(int n, const PEpsFn& p_eps = kocay::p_eps_index);
Claim verify_repeated_app(int n, const PEpsFn& closed_form = kocay::p_eps_closed_form);
Claim verify_interaction_sigma_p(int n, const SigmaFn& sigma = kocay::sigma_index);
Claim verify_sigma_exceeds_threshold(int n, const EMapFn& e = kocay::e_map);

/// Every exact claim at this n, each (r, k) as its own claim.
std::vector<Claim> verify_identity_suite(int n, const Context& ctx = {});

struct Comparison {
  spectral::EigenPair first, second;
  enum class Verdict { FirstGreater, SecondGreater, NotDifferent } verdict;
  // Set when the double brackets overlapped and both inputs were refined.
  std::optional<spectral::ExtendedEigenPair> first_ext, second_ext;
};

/// Vertex count above which overlapping brackets are reported without the
/// dense extended-precision refinement.
inline constexpr std::size_t kRefineVertexBound = 600;

/// Throws whatever principal_eigenpair throws.
Comparison compare_spectra(const Hypergraph& a, const Hypergraph& b,
                           const spectral::SolverConfig& cfg = {});

Claim verify_main_theorem(int n, const spectral::SolverConfig& cfg = {}, const Context& ctx = {});
Claim verify_eigenvector_symmetry(int n, const spectral::SolverConfig& cfg = {},
                                  const Context& ctx = {});

struct ConeSample {
  std::string name;
  Hypergraph base;
  std::vector<Edge> apex_link;  // (m-1)-sets joined to the apex
  Vertex apex = 0;
};

/// base plus {apex} ∪ l for each l in apex_link.  Throws
/// kocay::InvalidParameter when the apex codegree is not constant on V(base).
Hypergraph cone(const ConeSample& s);

ConeSample regular_cycle_cone();   // C^3 with apex edges {0, i, i+1}
ConeSample kocay_cone(int n, kocay::Construction& c = kocay::default_construction());  // X^n

/// Checks that "base regular", "base eigenvector ~ 1" and "cone eigenvector
/// constant off the apex" agree, and for a regular base that the apex ratio
/// solves deg(0) = lambda_G u^{m-1} + gamma u^m.
Claim verify_regular_cone(const ConeSample& s, const spectral::SolverConfig& cfg = {});

/// Identity suite plus the numeric claims at n.
std::vector<Claim> verify_all(int n, const spectral::SolverConfig& cfg = {}, const Context& ctx = {});

/// Worker count from POLYDECK_THREADS, default 1.
unsigned thread_count();

}  // namespace polydeck::verify

#endif  // POLYDECK_VERIFY_HPP
