#ifndef POLYDECK_KOCAY_HPP
#define POLYDECK_KOCAY_HPP

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polydeck/hypergraph.hpp"
#include "polydeck/poly.hpp"

// Kocay's hypomorphic pairs (X^n, Y^n) on the vertex set {0, 1, ..., 2^n}.
// Vertex 0 is the apex; vertices 1..2^n carry the cyclic arithmetic below.
namespace polydeck::kocay {

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultMaxN = 12;

/// Representative of x modulo 2^n in {1, ..., 2^n} (never 0).
Vertex mod_v(int n, long long x);

/// Vertex permutation of {0, ..., 2^n}: perm[i] is the image of i.
using Permutation = std::vector<Vertex>;

// Index maps.  All of them fix the apex 0.
/// p_0(i) = 2i, p_1(i) = 2i - 1, reduced mod V_n.
Vertex p_index(int n, int j, Vertex i);
/// p_{eps[0]}^n ∘ p_{eps[1]}^{n-1} ∘ ... applied step by step; eps.back() acts first.
Vertex p_eps_index(int n, std::span<const int> eps, Vertex i);
/// 2^r i - sum_j eps[j] 2^j, reduced mod V_n.
Vertex p_eps_closed_form(int n, std::span<const int> eps, Vertex i);
long long sigma_index(int i, long long j);  // acts on positive integers; sigma_{-1} = id
Vertex theta_index(int n, Vertex v);
Vertex tau_index(Vertex i);

// Endomorphisms of Z[x_0, ..., x_{2^n}].
Endomorphism p_map(int n, int j);  // p_0: x_i -> x_{2i}, p_1: x_i -> x_{2i-1}  (mod V_n)
/// p_eps = p_{eps[0]} ∘ ... ∘ p_{eps[r-1]} landing in V_n.
Endomorphism p_eps_map(int n, std::span<const int> eps);
/// E_r^n(x_i) = sum of x_j over j in V_n with j ≡ i (mod 2^r); the identity for r = n.
Endomorphism e_map(int n, int r);
/// q^n(x_i) = x_i + x_{i + 2^{n-1}}, indices mod V_n; coincides with E_{n-1}^n.
Endomorphism q_map(int n);
Endomorphism sigma_map(int n, int i);
Endomorphism theta_map(int n);
Endomorphism tau_map();

enum class EndoKind { P0, P1, PEps, E, Q, Sigma, Theta, Tau };

struct EndoSpec {
  EndoKind kind;
  int param = 0;          // r for E, i for Sigma
  std::vector<int> eps;   // PEps only
};

/// Dispatches on the spec; throws InvalidParameter when out of range.
Endomorphism make_endomorphism(const EndoSpec& spec, int n);

Permutation sigma_permutation(int n, int i);
Permutation theta_permutation(int n);
Permutation tau_permutation();  // on {0, ..., 8}

/// x_j -> x_{rep(j)} with rep(j) the least element of j's orbit under the
/// group generated by `generators`.  Throws InvalidParameter on a
/// non-permutation or a size other than 2^n + 1.
Endomorphism orbit_substitution(int n, std::span<const Permutation> generators);

enum class Family { C3, D3, G, H, T, Gamma, M0, M1, X, Y };

struct FamilySpec {
  Family family;
  int n = 3;
  int k = 0;  // G only

  std::string label() const;
  friend auto operator<=>(const FamilySpec&, const FamilySpec&) = default;
};

std::optional<Family> parse_family(std::string_view name);
std::string family_name(Family f);

/// C^3 = sum_i x_{i-1} x_i x_{i+1} and D^3 = C^3 ∘ tau, indices mod V_3.
std::pair<Polynomial, Polynomial> base_cycles();

/// Memoized constructor for the family Lagrangians.  A mutation hook, when
/// set, rewrites every freshly built family before it is cached, and the
/// rewrite propagates into every family assembled from it.
class Construction {
 public:
  using Mutation = std::function<void(const FamilySpec&, Polynomial&)>;

  explicit Construction(int max_n = kDefaultMaxN, Mutation mutation = {});

  Construction(const Construction&) = delete;
  Construction& operator=(const Construction&) = delete;

  int max_n() const { return max_n_; }
  void validate(const FamilySpec& spec) const;

  Polynomial poly(const FamilySpec& spec);
  Hypergraph hypergraph(const FamilySpec& spec);

 private:
  Polynomial build(const FamilySpec& spec);

  int max_n_;
  Mutation mutation_;
  std::recursive_mutex mutex_;
  std::map<FamilySpec, Polynomial> cache_;
};

/// Process-wide construction with default limits.
Construction& default_construction();

Polynomial family_poly(const FamilySpec& spec);
Hypergraph family_hypergraph(const FamilySpec& spec);

/// Vertex set of the ambient ring: {0, ..., 2^n} for families with the apex,
/// {1, ..., 2^n} otherwise.
std::vector<Vertex> family_vertices(const FamilySpec& spec);

}  // namespace polydeck::kocay

#endif  // POLYDECK_KOCAY_HPP
