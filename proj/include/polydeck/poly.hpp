#ifndef POLYDECK_POLY_HPP
#define POLYDECK_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace polydeck {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// 100 significant decimal digits, for spectral gaps below long double resolution.
using Extended = boost::multiprecision::cpp_bin_float_100;
using Var = std::uint32_t;

/// Product of variables with positive exponents, kept sorted by variable index.
class Monomial {
 public:
  struct Factor {
    Var var;
    std::uint32_t exp;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Monomial() = default;
  /// Merges repeated variables and drops zero exponents.
  explicit Monomial(std::vector<Factor> factors);

  static Monomial variable(Var v, std::uint32_t exp = 1);
  /// Product of the listed variables; repeats raise the exponent.
  static Monomial product(std::initializer_list<Var> vars);
  static Monomial product(std::span<const Var> vars);

  std::span<const Factor> factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(Var v) const;
  bool is_constant() const { return factors_.empty(); }
  bool is_squarefree() const;

  Monomial operator*(const Monomial& other) const;

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order: total degree first, then the sorted
/// (index, exponent) sequences compared lexicographically.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class MissingVariable : public std::out_of_range {
 public:
  explicit MissingVariable(Var v);
  Var variable() const { return var_; }

 private:
  Var var_;
};

/// Exact sparse polynomial over the integers.  Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, BigInt, GradedLex>;

  Polynomial() = default;
  Polynomial(long long c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const BigInt& c);

  static Polynomial variable(Var v);
  static Polynomial term(const Monomial& m, const BigInt& c = 1);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of `m`, zero when absent.
  BigInt coefficient(const Monomial& m) const;
  /// Highest total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  std::vector<Var> variables() const;

  /// Adds c*m in place.
  void add_term(const Monomial& m, const BigInt& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const BigInt& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const BigInt& c) { return a *= c; }
  friend Polynomial operator*(const BigInt& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(Polynomial a, long long c) { return a *= BigInt(c); }
  friend Polynomial operator*(long long c, Polynomial a) { return a *= BigInt(c); }
  Polynomial operator-() const;

  Polynomial pow(unsigned e) const;
  Polynomial derivative(Var v) const;

  /// Double-precision evaluation; `x[v]` is the value of variable v.
  double evaluate(std::span<const double> x) const;
  long double evaluate(std::span<const long double> x) const;
  Extended evaluate(std::span<const Extended> x) const;
  Rational evaluate_exact(std::span<const Rational> x) const;

  /// Terms in ascending graded-lex order, `coef*x_i^e*x_j` joined by " + ".
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  TermMap terms_;
};

/// Ring endomorphism given by the images of individual variables.
/// Variables without an image are fixed.
class Endomorphism {
 public:
  explicit Endomorphism(std::string name = "id") : name_(std::move(name)) {}

  static Endomorphism identity() { return Endomorphism("id"); }
  /// x_v -> x_{targets[v]} for every v outside `targets` fixed.
  static Endomorphism from_index_map(std::string name, std::span<const Var> targets);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  void set_image(Var v, Polynomial image);
  Polynomial image(Var v) const;
  const std::map<Var, Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& p) const;
  Polynomial operator()(const Polynomial& p) const { return apply(p); }

 private:
  std::string name_;
  std::map<Var, Polynomial> images_;
};

Polynomial substitute(const Polynomial& p, const Endomorphism& e);

/// outer ∘ inner, i.e. inner is applied first.
Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner);

inline Polynomial var(Var v) { return Polynomial::variable(v); }

}  // namespace polydeck

#endif  // POLYDECK_POLY_HPP
