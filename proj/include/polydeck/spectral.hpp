#ifndef POLYDECK_SPECTRAL_HPP
#define POLYDECK_SPECTRAL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polydeck/hypergraph.hpp"

// Perron-Frobenius machinery for uniform hypergraphs.  Vectors are positional:
// entry i belongs to h.vertices()[i].
//
// Eigenvalues follow the eigen equation
//     sum_{e ∋ j} prod_{u ∈ e, u ≠ j} x_u = lambda * x_j^{m-1},
// which is the normalized adjacency tensor contraction.  Under this
// convention lambda = m * F_H(v) at the principal eigenvector.
namespace polydeck::spectral {

class NotConnected : public std::runtime_error {
 public:
  NotConnected() : std::runtime_error("hypergraph is not connected") {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got);
};

struct SolverConfig {
  double tolerance = 1e-12;            // on the Collatz-Wielandt bracket width
  long long max_iterations = 1'000'000;
  double shift = 1.0;
  std::uint64_t seed = 0;              // 0 starts from the all-ones vector

  /// Throws std::invalid_argument on a non-positive tolerance, negative
  /// shift, or non-positive iteration budget.
  void validate() const;
};

struct EigenPair {
  double lambda = 0;     // bracket midpoint
  double lambda_lo = 0;  // certified Collatz-Wielandt bounds, rounded outward
  double lambda_hi = 0;
  std::vector<double> vector;
  double residual = 0;   // max_j |(A v^{m-1})_j - lambda v_j^{m-1}|
  long long iterations = 0;
  bool converged = false;
  double lagrangian = 0;  // F_H(v); m * lagrangian equals lambda

  double entry(const Hypergraph& h, Vertex v) const { return vector.at(h.index_of(v)); }
};

class MaxIterationsExceeded : public std::runtime_error {
 public:
  explicit MaxIterationsExceeded(EigenPair best);
  const EigenPair& best() const { return best_; }

 private:
  EigenPair best_;
};

/// Component j is sum over edges e ∋ j of the product of the other entries of e.
std::vector<double> tensor_apply(const Hypergraph& h, std::span<const double> x);
std::vector<long double> tensor_apply(const Hypergraph& h, std::span<const long double> x);

/// F_H(x) = sum over edges of the product of their entries.
double lagrangian_value(const Hypergraph& h, std::span<const double> x);

std::size_t degree(const Hypergraph& h, Vertex v);
std::size_t codegree(const Hypergraph& h, Vertex u, Vertex v);
std::vector<std::size_t> degree_sequence(const Hypergraph& h);

/// Connected under edge overlap; a single vertex counts as connected.
bool is_connected(const Hypergraph& h);

/// Lower and upper bounds min_j, max_j of (A x^{m-1})_j / x_j^{m-1} for positive x.
std::pair<long double, long double> collatz_wielandt(const Hypergraph& h,
                                                     std::span<const long double> x);

/// Shifted power iteration y = A x^{m-1} + shift x^{[m-1]}, x <- y^{[1/(m-1)]}
/// renormalized in l_m.  Runs in double, then polishes and certifies the
/// bracket in long double.  Throws NotConnected, or MaxIterationsExceeded
/// carrying the best iterate.
EigenPair principal_eigenpair(const Hypergraph& h, const SolverConfig& cfg = {});

struct ExtendedEigenPair {
  Extended lambda_lo = 0;  // certified bracket at 100 digits
  Extended lambda_hi = 0;
  std::vector<Extended> vector;
  Extended residual = 0;
  int newton_steps = 0;

  Extended entry(const Hypergraph& h, Vertex v) const { return vector.at(h.index_of(v)); }
};

/// Newton iteration on the eigen equations with the l_m normalization,
/// started from a power-iteration result, followed by a Collatz-Wielandt
/// bracket widened by the accumulated rounding.  Separates eigenvalues whose
/// gap is far below double resolution.
ExtendedEigenPair refine_extended(const Hypergraph& h, const EigenPair& start);

/// `digits` significant decimal digits in scientific notation.
std::string to_decimal(const Extended& v, int digits = 40);

struct OracleConfig {
  int restarts = 8;
  std::uint64_t seed = 1;
  long long max_steps = 200'000;
};

/// Multi-start projected gradient ascent of F_H on the nonnegative l_m unit
/// sphere.  Returns m * max F, comparable to principal_eigenpair().lambda.
double oracle_radius(const Hypergraph& h, const OracleConfig& cfg = {});
double oracle_radius(const Hypergraph& h, int restarts, std::uint64_t seed);

/// FNV-1a of the vector rendered with 12 decimals, as 16 hex digits.
std::string vector_digest(std::span<const double> v);

/// {family, n, lambda_lo, lambda_hi, residual, iterations, vector_digest}
/// plus lambda, lagrangian and converged.
nlohmann::json report_record(const std::string& family, std::optional<int> n,
                             const EigenPair& ep);

}  // namespace polydeck::spectral

#endif  // POLYDECK_SPECTRAL_HPP
