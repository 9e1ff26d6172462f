#include "polydeck/poly.hpp"

#include <algorithm>
#include <sstream>

namespace polydeck {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.var < b.var; });
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    if (!factors_.empty() && factors_.back().var == f.var) {
      factors_.back().exp += f.exp;
    } else {
      factors_.push_back(f);
    }
    degree_ += f.exp;
  }
}

Monomial Monomial::variable(Var v, std::uint32_t exp) {
  return Monomial(std::vector<Factor>{{v, exp}});
}

Monomial Monomial::product(std::initializer_list<Var> vars) {
  return product(std::span<const Var>(vars.begin(), vars.size()));
}

Monomial Monomial::product(std::span<const Var> vars) {
  std::vector<Factor> fs;
  fs.reserve(vars.size());
  for (Var v : vars) fs.push_back({v, 1});
  return Monomial(std::move(fs));
}

std::uint32_t Monomial::exponent(Var v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, Var w) { return f.var < w; });
  return (it != factors_.end() && it->var == v) ? it->exp : 0;
}

bool Monomial::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.exp == 1; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->var < b->var)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->var < a->var) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : factors_) {
    if (!first) os << '*';
    first = false;
    os << "x_" << f.var;
    if (f.exp != 1) os << '^' << f.exp;
  }
  return os.str();
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto fa = a.factors();
  auto fb = b.factors();
  return std::lexicographical_compare(
      fa.begin(), fa.end(), fb.begin(), fb.end(),
      [](const Monomial::Factor& l, const Monomial::Factor& r) {
        return l.var != r.var ? l.var < r.var : l.exp < r.exp;
      });
}

MissingVariable::MissingVariable(Var v)
    : std::out_of_range("no value supplied for variable x_" + std::to_string(v)), var_(v) {}

Polynomial::Polynomial(long long c) {
  if (c != 0) terms_.emplace(Monomial(), BigInt(c));
}

Polynomial::Polynomial(const BigInt& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

Polynomial Polynomial::variable(Var v) { return term(Monomial::variable(v)); }

Polynomial Polynomial::term(const Monomial& m, const BigInt& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

BigInt Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

int Polynomial::degree() const {
  // Graded order puts the highest degree last.
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
}

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

std::vector<Var> Polynomial::variables() const {
  std::vector<Var> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) vs.push_back(f.var);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

void Polynomial::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(Var v) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    std::vector<Monomial::Factor> fs(m.factors().begin(), m.factors().end());
    for (auto& f : fs)
      if (f.var == v) f.exp -= 1;
    out.add_term(Monomial(std::move(fs)), c * e);
  }
  return out;
}

namespace {

template <class T>
T evaluate_impl(const Polynomial::TermMap& terms, std::span<const T> x) {
  T total = 0;
  for (const auto& [m, c] : terms) {
    T prod = static_cast<T>(c);
    for (const auto& f : m.factors()) {
      if (f.var >= x.size()) throw MissingVariable(f.var);
      for (std::uint32_t k = 0; k < f.exp; ++k) prod *= x[f.var];
    }
    total += prod;
  }
  return total;
}

}  // namespace

double Polynomial::evaluate(std::span<const double> x) const {
  return evaluate_impl<double>(terms_, x);
}

long double Polynomial::evaluate(std::span<const long double> x) const {
  return evaluate_impl<long double>(terms_, x);
}

Extended Polynomial::evaluate(std::span<const Extended> x) const {
  return evaluate_impl<Extended>(terms_, x);
}

Rational Polynomial::evaluate_exact(std::span<const Rational> x) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational prod = c;
    for (const auto& f : m.factors()) {
      if (f.var >= x.size()) throw MissingVariable(f.var);
      for (std::uint32_t k = 0; k < f.exp; ++k) prod *= x[f.var];
    }
    total += prod;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (!m.is_constant()) os << '*' << m.to_string();
  }
  return os.str();
}

Endomorphism Endomorphism::from_index_map(std::string name, std::span<const Var> targets) {
  Endomorphism e(std::move(name));
  for (Var v = 0; v < targets.size(); ++v)
    if (targets[v] != v) e.images_.emplace(v, Polynomial::variable(targets[v]));
  return e;
}

void Endomorphism::set_image(Var v, Polynomial image) {
  if (image == Polynomial::variable(v)) {
    images_.erase(v);
  } else {
    images_.insert_or_assign(v, std::move(image));
  }
}

Polynomial Endomorphism::image(Var v) const {
  auto it = images_.find(v);
  return it == images_.end() ? Polynomial::variable(v) : it->second;
}

Polynomial Endomorphism::apply(const Polynomial& p) const {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    // Fixed variables stay in a residual monomial so they cost nothing.
    std::vector<Monomial::Factor> fixed;
    Polynomial acc = Polynomial::term(Monomial(), c);
    for (const auto& f : m.factors()) {
      auto it = images_.find(f.var);
      if (it == images_.end()) {
        fixed.push_back(f);
        continue;
      }
      for (std::uint32_t k = 0; k < f.exp; ++k) acc = acc * it->second;
    }
    if (!fixed.empty()) acc = acc * Polynomial::term(Monomial(std::move(fixed)));
    out += acc;
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const Endomorphism& e) { return e.apply(p); }

Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner) {
  Endomorphism out(outer.name() + "." + inner.name());
  for (const auto& [v, img] : inner.images()) out.set_image(v, outer.apply(img));
  for (const auto& [v, img] : outer.images())
    if (!inner.images().contains(v)) out.set_image(v, img);
  return out;
}

}  // namespace polydeck
