#include "polydeck/kocay.hpp"

#include <numeric>

namespace polydeck::kocay {

namespace {

long long pow2(int e) { return 1LL << e; }

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

void require_n(int n) { require(n >= 1 && n <= 30, "n out of range: " + std::to_string(n)); }

Vertex top(int n) { return static_cast<Vertex>(pow2(n)); }

}  // namespace

Vertex mod_v(int n, long long x) {
  require(n >= 0 && n <= 62, "mod_v: n out of range");
  const long long m = pow2(n);
  long long r = (x - 1) % m;
  if (r < 0) r += m;
  return static_cast<Vertex>(r + 1);
}

Vertex p_index(int n, int j, Vertex i) {
  require(j == 0 || j == 1, "p map index must be 0 or 1");
  if (i == 0) return 0;
  return mod_v(n, 2LL * i - j);
}

Vertex p_eps_index(int n, std::span<const int> eps, Vertex i) {
  const int r = static_cast<int>(eps.size());
  require(n - r >= 0, "p_eps: word longer than n");
  Vertex v = i;
  for (int step = r - 1; step >= 0; --step) v = p_index(n - step, eps[step], v);
  return v;
}

Vertex p_eps_closed_form(int n, std::span<const int> eps, Vertex i) {
  if (i == 0) return 0;
  const int r = static_cast<int>(eps.size());
  long long value = pow2(r) * static_cast<long long>(i);
  for (int j = 0; j < r; ++j) value -= static_cast<long long>(eps[j]) * pow2(j);
  return mod_v(n, value);
}

long long sigma_index(int i, long long j) {
  require(i >= -1 && i < 62, "sigma index out of range");
  require(j >= 1, "sigma acts on positive integers");
  if (i == -1) return j;
  const long long block = pow2(i);
  const long long rem = (j - 1) % (2 * block) + 1;
  return rem <= block ? j + block : j - block;
}

Vertex theta_index(int n, Vertex v) { return v == 0 ? 0 : top(n) - v + 1; }

Vertex tau_index(Vertex i) { return i == 0 ? 0 : mod_v(3, 3LL * i); }

namespace {

Endomorphism index_endomorphism(std::string name, int n, const std::function<Vertex(Vertex)>& f) {
  std::vector<Var> targets(top(n) + 1);
  for (Vertex v = 0; v <= top(n); ++v) targets[v] = f(v);
  return Endomorphism::from_index_map(std::move(name), targets);
}

std::string eps_string(std::span<const int> eps) {
  std::string s;
  for (int e : eps) s += static_cast<char>('0' + e);
  return s;
}

}  // namespace

Endomorphism p_map(int n, int j) {
  require_n(n);
  require(j == 0 || j == 1, "p map index must be 0 or 1");
  return index_endomorphism("p" + std::to_string(j) + "^" + std::to_string(n), n,
                            [&](Vertex i) { return p_index(n, j, i); });
}

Endomorphism p_eps_map(int n, std::span<const int> eps) {
  require_n(n);
  for (int e : eps) require(e == 0 || e == 1, "eps entries must be 0 or 1");
  require(static_cast<int>(eps.size()) <= n, "p_eps: word longer than n");
  return index_endomorphism("p[" + eps_string(eps) + "]^" + std::to_string(n), n,
                            [&](Vertex i) { return p_eps_index(n, eps, i); });
}

Endomorphism e_map(int n, int r) {
  require_n(n);
  require(r >= 2 && r <= n, "E_r^n needs 2 <= r <= n (r=" + std::to_string(r) +
                                ", n=" + std::to_string(n) + ")");
  Endomorphism e("E_" + std::to_string(r) + "^" + std::to_string(n));
  if (r == n) return e;
  const long long stride = pow2(r);
  for (Vertex i = 1; i <= top(n); ++i) {
    Polynomial img;
    for (long long j = (i - 1) % stride + 1; j <= top(n); j += stride)
      img += var(static_cast<Var>(j));
    e.set_image(i, std::move(img));
  }
  return e;
}

Endomorphism q_map(int n) {
  require(n >= 3, "q^n needs n >= 3");
  require_n(n);
  Endomorphism e("q^" + std::to_string(n));
  const long long half = pow2(n - 1);
  for (Vertex i = 1; i <= top(n); ++i) e.set_image(i, var(i) + var(mod_v(n, i + half)));
  return e;
}

Endomorphism sigma_map(int n, int i) {
  require_n(n);
  require(i >= -1, "sigma_i needs i >= -1");
  return index_endomorphism("sigma" + std::to_string(i) + "^" + std::to_string(n), n,
                            [&](Vertex v) {
                              return v == 0 ? Vertex{0} : mod_v(n, sigma_index(i, v));
                            });
}

Endomorphism theta_map(int n) {
  require_n(n);
  return index_endomorphism("theta^" + std::to_string(n), n,
                            [&](Vertex v) { return theta_index(n, v); });
}

Endomorphism tau_map() { return index_endomorphism("tau", 3, tau_index); }

Endomorphism make_endomorphism(const EndoSpec& spec, int n) {
  switch (spec.kind) {
    case EndoKind::P0:
      return p_map(n, 0);
    case EndoKind::P1:
      return p_map(n, 1);
    case EndoKind::PEps:
      return p_eps_map(n, spec.eps);
    case EndoKind::E:
      return e_map(n, spec.param);
    case EndoKind::Q:
      return q_map(n);
    case EndoKind::Sigma:
      return sigma_map(n, spec.param);
    case EndoKind::Theta:
      return theta_map(n);
    case EndoKind::Tau:
      require(n == 3, "tau is defined for n = 3 only");
      return tau_map();
  }
  throw InvalidParameter("unknown endomorphism kind");
}

namespace {

Permutation permutation_from(int n, const std::function<Vertex(Vertex)>& f) {
  Permutation p(top(n) + 1);
  for (Vertex v = 0; v <= top(n); ++v) p[v] = f(v);
  return p;
}

}  // namespace

Permutation sigma_permutation(int n, int i) {
  require_n(n);
  require(i >= -1, "sigma_i needs i >= -1");
  return permutation_from(
      n, [&](Vertex v) { return v == 0 ? Vertex{0} : mod_v(n, sigma_index(i, v)); });
}

Permutation theta_permutation(int n) {
  require_n(n);
  return permutation_from(n, [&](Vertex v) { return theta_index(n, v); });
}

Permutation tau_permutation() { return permutation_from(3, tau_index); }

Endomorphism orbit_substitution(int n, std::span<const Permutation> generators) {
  require_n(n);
  const std::size_t size = top(n) + 1;
  std::vector<Vertex> parent(size);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& g : generators) {
    require(g.size() == size, "generator is not a permutation of {0..2^n}");
    std::vector<bool> seen(size, false);
    for (Vertex v : g) {
      require(v < size && !seen[v], "generator is not a permutation of {0..2^n}");
      seen[v] = true;
    }
    for (Vertex v = 0; v < size; ++v) {
      Vertex a = find(v), b = find(g[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  // The smaller root always wins, so each root is its class minimum.
  std::vector<Var> targets(size);
  for (Vertex v = 0; v < size; ++v) targets[v] = find(v);
  return Endomorphism::from_index_map("orbit^" + std::to_string(n), targets);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::C3: return "C3";
    case Family::D3: return "D3";
    case Family::G: return "G";
    case Family::H: return "H";
    case Family::T: return "T";
    case Family::Gamma: return "Gamma";
    case Family::M0: return "M0";
    case Family::M1: return "M1";
    case Family::X: return "X";
    case Family::Y: return "Y";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::C3, Family::D3, Family::G, Family::H, Family::T, Family::Gamma,
                   Family::M0, Family::M1, Family::X, Family::Y})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

std::string FamilySpec::label() const {
  std::string s = family_name(family) + "^" + std::to_string(n);
  if (family == Family::G) s = "G_" + std::to_string(k) + "^" + std::to_string(n);
  return s;
}

std::pair<Polynomial, Polynomial> base_cycles() {
  Polynomial c;
  for (long long i = 1; i <= 8; ++i)
    c.add_term(Monomial::product({mod_v(3, i - 1), mod_v(3, i), mod_v(3, i + 1)}), 1);
  Polynomial d = tau_map().apply(c);
  return {std::move(c), std::move(d)};
}

Construction::Construction(int max_n, Mutation mutation)
    : max_n_(max_n), mutation_(std::move(mutation)) {
  require(max_n >= 3 && max_n <= 20, "max_n must lie in 3..20");
}

void Construction::validate(const FamilySpec& spec) const {
  require(spec.n >= 3, spec.label() + ": n must be at least 3");
  require(spec.n <= max_n_, spec.label() + ": n exceeds the cap " + std::to_string(max_n_));
  if (spec.family == Family::C3 || spec.family == Family::D3)
    require(spec.n == 3, spec.label() + ": base cycles exist for n = 3 only");
  if (spec.family == Family::G)
    require(spec.k >= 2 && spec.k <= spec.n, spec.label() + ": k must satisfy 2 <= k <= n");
}

Polynomial Construction::poly(const FamilySpec& spec) {
  validate(spec);
  FamilySpec key = spec;
  if (key.family != Family::G) key.k = 0;
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Polynomial p = build(key);
  if (mutation_) mutation_(key, p);
  cache_.emplace(key, p);
  return p;
}

Polynomial Construction::build(const FamilySpec& s) {
  const int n = s.n;
  auto sub = [&](Family f, int nn, int k = 0) { return poly(FamilySpec{f, nn, k}); };
  switch (s.family) {
    case Family::C3:
      return base_cycles().first;
    case Family::D3:
      return base_cycles().second;
    case Family::G:
      if (s.k == n) {
        if (n == 3) return sub(Family::C3, 3) + sub(Family::D3, 3);
        return e_map(n, 3).apply(sub(Family::G, 3, 3));
      }
      if (n == 3) {
        Polynomial g;
        for (Var i = 1; i <= 4; ++i) g.add_term(Monomial::product({i, i + 2, i + 4}), 1);
        return g;
      } else {
        const Polynomial prev = sub(Family::G, n - 1, s.k);
        return p_map(n, 0).apply(prev) + p_map(n, 1).apply(prev);
      }
    case Family::H:
      if (n == 3) return sub(Family::G, 3, 3);
      return q_map(n).apply(sub(Family::H, n - 1));
    case Family::T: {
      Polynomial t;
      for (int k = 2; k <= n - 1; ++k) t += sub(Family::G, n, k);
      return t;
    }
    case Family::Gamma:
      return sub(Family::T, n) + sub(Family::G, n, n);
    case Family::M0:
      return var(0) * e_map(n, 2).apply(var(1) * var(2) + var(3) * var(4));
    case Family::M1:
      return var(0) * e_map(n, 2).apply(var(1) * var(4) + var(2) * var(3));
    case Family::X:
      return sub(Family::Gamma, n) + sub(Family::M0, n);
    case Family::Y:
      return sub(Family::Gamma, n) + sub(Family::M1, n);
  }
  throw InvalidParameter("unknown family");
}

std::vector<Vertex> family_vertices(const FamilySpec& spec) {
  const bool apex = spec.family == Family::M0 || spec.family == Family::M1 ||
                    spec.family == Family::X || spec.family == Family::Y;
  std::vector<Vertex> vs;
  for (Vertex v = apex ? 0 : 1; v <= top(spec.n); ++v) vs.push_back(v);
  return vs;
}

Hypergraph Construction::hypergraph(const FamilySpec& spec) {
  const Polynomial p = poly(spec);
  const auto vs = family_vertices(spec);
  return hypergraph_from_lagrangian(p, 3, vs);
}

Construction& default_construction() {
  static Construction instance;
  return instance;
}

Polynomial family_poly(const FamilySpec& spec) { return default_construction().poly(spec); }

Hypergraph family_hypergraph(const FamilySpec& spec) {
  return default_construction().hypergraph(spec);
}

}  // namespace polydeck::kocay
