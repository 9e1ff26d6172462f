#include "polydeck/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <limits>
#include <numeric>
#include <random>

namespace polydeck::spectral {

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t got)
    : std::invalid_argument("vector has " + std::to_string(got) + " entries, hypergraph has " +
                            std::to_string(expected) + " vertices") {}

MaxIterationsExceeded::MaxIterationsExceeded(EigenPair best)
    : std::runtime_error("power iteration did not reach the tolerance after " +
                         std::to_string(best.iterations) + " iterations (bracket width " +
                         std::to_string(best.lambda_hi - best.lambda_lo) + ")"),
      best_(std::move(best)) {}

void SolverConfig::validate() const {
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (!(shift >= 0)) throw std::invalid_argument("shift must be nonnegative");
  if (max_iterations <= 0) throw std::invalid_argument("max_iterations must be positive");
}

namespace {

/// Edges rewritten as positions into h.vertices().
struct Incidence {
  unsigned m = 0;
  std::size_t n = 0;
  std::vector<std::size_t> flat;  // m entries per edge
  std::size_t max_degree = 0;

  explicit Incidence(const Hypergraph& h) : m(h.rank()), n(h.num_vertices()) {
    flat.reserve(h.num_edges() * m);
    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : h.edges())
      for (Vertex v : e) {
        const std::size_t i = h.index_of(v);
        flat.push_back(i);
        ++deg[i];
      }
    if (n) max_degree = *std::max_element(deg.begin(), deg.end());
  }

  std::size_t edges() const { return m ? flat.size() / m : 0; }
};

template <class T>
void apply_into(const Incidence& inc, std::span<const T> x, std::vector<T>& out) {
  out.assign(inc.n, T(0));
  const unsigned m = inc.m;
  std::vector<T> prefix(m + 1), suffix(m + 1);
  for (std::size_t e = 0; e < inc.edges(); ++e) {
    const std::size_t* idx = inc.flat.data() + e * m;
    if (m == 3) {
      const T a = x[idx[0]], b = x[idx[1]], c = x[idx[2]];
      out[idx[0]] += b * c;
      out[idx[1]] += a * c;
      out[idx[2]] += a * b;
      continue;
    }
    prefix[0] = T(1);
    for (unsigned k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * x[idx[k]];
    suffix[m] = T(1);
    for (unsigned k = m; k-- > 0;) suffix[k] = suffix[k + 1] * x[idx[k]];
    for (unsigned k = 0; k < m; ++k) out[idx[k]] += prefix[k] * suffix[k + 1];
  }
}

template <class T>
T power(T v, unsigned e) {
  T r = 1;
  for (unsigned k = 0; k < e; ++k) r *= v;
  return r;
}

template <class T>
void normalize_lm(std::vector<T>& x, unsigned m) {
  T s = 0;
  for (T v : x) s += power(std::abs(v), m);
  const T scale = std::pow(s, T(1) / T(m));
  for (T& v : x) v /= scale;
}

template <class T>
std::pair<T, T> bracket(const Incidence& inc, std::span<const T> x, const std::vector<T>& ax) {
  T lo = std::numeric_limits<T>::infinity();
  T hi = -std::numeric_limits<T>::infinity();
  for (std::size_t j = 0; j < inc.n; ++j) {
    const T denom = power(x[j], inc.m - 1);
    const T r = denom > 0 ? ax[j] / denom : std::numeric_limits<T>::infinity();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

struct PhaseResult {
  long long iterations = 0;
  bool converged = false;
};

/// Shifted power iteration on x in place.  Stops at the tolerance, after the
/// budget, or once the bracket width has not improved for `stall_limit` steps.
template <class T>
PhaseResult iterate(const Incidence& inc, std::vector<T>& x, const SolverConfig& cfg,
                    long long budget, long long stall_limit) {
  PhaseResult res;
  std::vector<T> ax;
  std::vector<T> best_x = x;
  T best_width = std::numeric_limits<T>::infinity();
  long long since_best = 0;
  const T shift = static_cast<T>(cfg.shift);
  const T tol = static_cast<T>(cfg.tolerance);
  const T root = T(1) / T(inc.m - 1);
  for (long long it = 0; it < budget; ++it) {
    apply_into<T>(inc, x, ax);
    auto [lo, hi] = bracket<T>(inc, x, ax);
    const T width = hi - lo;
    if (width < best_width) {
      best_width = width;
      best_x = x;
      since_best = 0;
    } else if (++since_best > stall_limit) {
      break;
    }
    if (width < tol) {
      res.converged = true;
      break;
    }
    for (std::size_t j = 0; j < inc.n; ++j) {
      const T y = ax[j] + shift * power(x[j], inc.m - 1);
      x[j] = inc.m == 2 ? y : std::pow(y, root);
    }
    normalize_lm(x, inc.m);
    ++res.iterations;
  }
  x = best_x;
  return res;
}

std::vector<std::size_t> component_labels(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : h.edges()) {
    const std::size_t r = find(h.index_of(e.front()));
    for (Vertex v : e) parent[find(h.index_of(v))] = r;
  }
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = find(i);
  return out;
}

template <class T>
std::vector<T> checked_apply(const Hypergraph& h, std::span<const T> x) {
  if (x.size() != h.num_vertices()) throw DimensionMismatch(h.num_vertices(), x.size());
  Incidence inc(h);
  std::vector<T> out;
  apply_into<T>(inc, x, out);
  return out;
}

}  // namespace

std::vector<double> tensor_apply(const Hypergraph& h, std::span<const double> x) {
  return checked_apply<double>(h, x);
}

std::vector<long double> tensor_apply(const Hypergraph& h, std::span<const long double> x) {
  return checked_apply<long double>(h, x);
}

double lagrangian_value(const Hypergraph& h, std::span<const double> x) {
  if (x.size() != h.num_vertices()) throw DimensionMismatch(h.num_vertices(), x.size());
  double total = 0;
  for (const auto& e : h.edges()) {
    double p = 1;
    for (Vertex v : e) p *= x[h.index_of(v)];
    total += p;
  }
  return total;
}

std::size_t degree(const Hypergraph& h, Vertex v) {
  h.index_of(v);
  return static_cast<std::size_t>(std::count_if(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
    return std::binary_search(e.begin(), e.end(), v);
  }));
}

std::size_t codegree(const Hypergraph& h, Vertex u, Vertex v) {
  h.index_of(u);
  h.index_of(v);
  if (u == v) throw std::invalid_argument("codegree needs two distinct vertices");
  return static_cast<std::size_t>(std::count_if(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
    return std::binary_search(e.begin(), e.end(), u) && std::binary_search(e.begin(), e.end(), v);
  }));
}

std::vector<std::size_t> degree_sequence(const Hypergraph& h) {
  std::vector<std::size_t> deg(h.num_vertices(), 0);
  for (const auto& e : h.edges())
    for (Vertex v : e) ++deg[h.index_of(v)];
  std::sort(deg.begin(), deg.end());
  return deg;
}

bool is_connected(const Hypergraph& h) {
  if (h.num_vertices() <= 1) return true;
  const auto labels = component_labels(h);
  return std::all_of(labels.begin(), labels.end(),
                     [&](std::size_t l) { return l == labels.front(); });
}

std::pair<long double, long double> collatz_wielandt(const Hypergraph& h,
                                                     std::span<const long double> x) {
  if (x.size() != h.num_vertices()) throw DimensionMismatch(h.num_vertices(), x.size());
  Incidence inc(h);
  std::vector<long double> ax;
  apply_into<long double>(inc, x, ax);
  return bracket<long double>(inc, x, ax);
}

EigenPair principal_eigenpair(const Hypergraph& h, const SolverConfig& cfg) {
  cfg.validate();
  if (h.rank() < 2) throw std::invalid_argument("principal eigenpair needs rank >= 2");
  if (h.num_vertices() == 0 || !is_connected(h) || h.num_edges() == 0) throw NotConnected();
  const Incidence inc(h);

  std::vector<double> x(inc.n, 1.0);
  if (cfg.seed != 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> perturb(0.5, 1.5);
    for (double& v : x) v *= perturb(rng);
  }
  normalize_lm(x, inc.m);

  const PhaseResult coarse = iterate<double>(inc, x, cfg, cfg.max_iterations, 2000);

  std::vector<long double> xl(x.begin(), x.end());
  normalize_lm(xl, inc.m);
  const long long remaining = std::max<long long>(cfg.max_iterations - coarse.iterations, 1);
  const PhaseResult fine = iterate<long double>(inc, xl, cfg, remaining, 200);

  std::vector<long double> ax;
  apply_into<long double>(inc, xl, ax);
  auto [lo, hi] = bracket<long double>(inc, xl, ax);
  // Each ratio carries at most (degree + m + 2) roundings.
  const long double slack =
      static_cast<long double>(inc.max_degree + inc.m + 2) * LDBL_EPSILON * std::abs(hi);
  lo -= slack;
  hi += slack;
  const long double mid = (lo + hi) / 2;

  long double residual = 0;
  for (std::size_t j = 0; j < inc.n; ++j)
    residual = std::max(residual, std::abs(ax[j] - mid * power(xl[j], inc.m - 1)));

  EigenPair ep;
  ep.lambda_lo = std::nextafter(static_cast<double>(lo), -HUGE_VAL);
  ep.lambda_hi = std::nextafter(static_cast<double>(hi), HUGE_VAL);
  ep.lambda = static_cast<double>(mid);
  ep.vector.assign(xl.begin(), xl.end());
  ep.residual = static_cast<double>(residual);
  ep.iterations = coarse.iterations + fine.iterations;
  ep.converged = (hi - lo) < static_cast<long double>(cfg.tolerance) &&
                 ep.residual < cfg.tolerance;
  ep.lagrangian = lagrangian_value(h, ep.vector);
  if (!ep.converged) throw MaxIterationsExceeded(std::move(ep));
  return ep;
}

double oracle_radius(const Hypergraph& h, const OracleConfig& cfg) {
  if (h.num_vertices() == 0 || h.num_edges() == 0 || !is_connected(h)) throw NotConnected();
  if (cfg.restarts < 1) throw std::invalid_argument("oracle needs at least one restart");
  const Incidence inc(h);
  const unsigned m = inc.m;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> start(0.1, 1.0);

  auto objective = [&](const std::vector<double>& v) { return lagrangian_value(h, v); };

  double best = 0;
  std::vector<double> g, trial(inc.n);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x(inc.n);
    for (double& v : x) v = start(rng);
    normalize_lm(x, m);
    double value = objective(x);
    double step = 1.0;
    for (long long s = 0; s < cfg.max_steps; ++s) {
      apply_into<double>(inc, x, g);
      // Gradient of the scale-free objective F(x) / ||x||_m^m on the sphere.
      const double mf = m * value;
      double dmax = 0;
      for (std::size_t j = 0; j < inc.n; ++j) {
        g[j] -= mf * power(x[j], m - 1);
        dmax = std::max(dmax, std::abs(g[j]));
      }
      if (dmax < 1e-15 * std::max(1.0, mf)) break;
      bool accepted = false;
      while (step > 1e-18) {
        for (std::size_t j = 0; j < inc.n; ++j) trial[j] = std::max(0.0, x[j] + step * g[j]);
        normalize_lm(trial, m);
        const double tv = objective(trial);
        if (tv > value) {
          x.swap(trial);
          value = tv;
          step *= 2;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    best = std::max(best, m * value);
  }
  return best;
}

double oracle_radius(const Hypergraph& h, int restarts, std::uint64_t seed) {
  OracleConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return oracle_radius(h, cfg);
}

std::string vector_digest(std::span<const double> v) {
  std::uint64_t hash = 1469598103934665603ULL;
  char buf[64];
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int len = std::snprintf(buf, sizeof buf, "%s%.12f", i ? "," : "", v[i]);
    for (int k = 0; k < len; ++k) {
      hash ^= static_cast<unsigned char>(buf[k]);
      hash *= 1099511628211ULL;
    }
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

nlohmann::json report_record(const std::string& family, std::optional<int> n,
                             const EigenPair& ep) {
  nlohmann::json j;
  j["family"] = family;
  j["n"] = n ? nlohmann::json(*n) : nlohmann::json(nullptr);
  j["lambda_lo"] = ep.lambda_lo;
  j["lambda_hi"] = ep.lambda_hi;
  j["lambda"] = ep.lambda;
  j["lagrangian"] = ep.lagrangian;
  j["residual"] = ep.residual;
  j["iterations"] = ep.iterations;
  j["converged"] = ep.converged;
  j["vector_digest"] = vector_digest(ep.vector);
  return j;
}

}  // namespace polydeck::spectral

namespace polydeck::spectral {

namespace {

Extended ext_pow(const Extended& v, unsigned e) {
  Extended r = 1;
  for (unsigned k = 0; k < e; ++k) r *= v;
  return r;
}

/// Solves a x = b in place by Gaussian elimination with partial pivoting.
/// Returns false on a singular pivot.
bool solve_dense(std::vector<std::vector<Extended>>& a, std::vector<Extended>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Extended f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t c = col + 1; c < n; ++c) b[col] -= a[col][c] * b[c];
    b[col] /= a[col][col];
  }
  return true;
}

}  // namespace

ExtendedEigenPair refine_extended(const Hypergraph& h, const EigenPair& start) {
  if (start.vector.size() != h.num_vertices())
    throw DimensionMismatch(h.num_vertices(), start.vector.size());
  const Incidence inc(h);
  const std::size_t n = inc.n;
  const unsigned m = inc.m;
  std::vector<Extended> x(start.vector.begin(), start.vector.end());
  Extended lambda = start.lambda;

  auto apply = [&](const std::vector<Extended>& v) {
    std::vector<Extended> out(n, Extended(0));
    for (std::size_t e = 0; e < inc.edges(); ++e) {
      const std::size_t* idx = inc.flat.data() + e * m;
      for (unsigned a = 0; a < m; ++a) {
        Extended p = 1;
        for (unsigned b = 0; b < m; ++b)
          if (b != a) p *= v[idx[b]];
        out[idx[a]] += p;
      }
    }
    return out;
  };
  auto defect = [&](const std::vector<Extended>& v, const Extended& lam, std::vector<Extended>& f) {
    const auto av = apply(v);
    f.assign(n + 1, Extended(0));
    Extended norm = 0;
    for (std::size_t j = 0; j < n; ++j) {
      f[j] = av[j] - lam * ext_pow(v[j], m - 1);
      norm += ext_pow(v[j], m);
    }
    f[n] = norm - 1;
    Extended worst = 0;
    for (const auto& fj : f) worst = std::max(worst, Extended(abs(fj)));
    return worst;
  };

  ExtendedEigenPair out;
  std::vector<Extended> f;
  Extended current = defect(x, lambda, f);
  const Extended target = std::numeric_limits<Extended>::epsilon() * 1e4;
  for (int step = 0; step < 60 && current > target; ++step) {
    std::vector<std::vector<Extended>> jac(n + 1, std::vector<Extended>(n + 1, Extended(0)));
    for (std::size_t e = 0; e < inc.edges(); ++e) {
      const std::size_t* idx = inc.flat.data() + e * m;
      for (unsigned a = 0; a < m; ++a)
        for (unsigned b = 0; b < m; ++b) {
          if (a == b) continue;
          Extended p = 1;
          for (unsigned c = 0; c < m; ++c)
            if (c != a && c != b) p *= x[idx[c]];
          jac[idx[a]][idx[b]] += p;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
      jac[j][j] -= lambda * (m - 1) * ext_pow(x[j], m - 2);
      jac[j][n] = -ext_pow(x[j], m - 1);
      jac[n][j] = m * ext_pow(x[j], m - 1);
    }
    std::vector<Extended> delta = f;
    if (!solve_dense(jac, delta)) break;
    std::vector<Extended> next(n);
    for (std::size_t j = 0; j < n; ++j) next[j] = x[j] - delta[j];
    const Extended next_lambda = lambda - delta[n];
    if (*std::min_element(next.begin(), next.end()) <= 0) break;
    std::vector<Extended> next_f;
    const Extended next_defect = defect(next, next_lambda, next_f);
    if (!(next_defect < current)) break;
    x = std::move(next);
    lambda = next_lambda;
    f = std::move(next_f);
    current = next_defect;
    ++out.newton_steps;
  }

  const auto ax = apply(x);
  Extended lo = std::numeric_limits<Extended>::max(), hi = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Extended r = ax[j] / ext_pow(x[j], m - 1);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const Extended slack = Extended(inc.max_degree + m + 2) * std::numeric_limits<Extended>::epsilon() * hi;
  out.lambda_lo = lo - slack;
  out.lambda_hi = hi + slack;
  const Extended mid = (out.lambda_lo + out.lambda_hi) / 2;
  for (std::size_t j = 0; j < n; ++j)
    out.residual = std::max(out.residual, Extended(abs(ax[j] - mid * ext_pow(x[j], m - 1))));
  out.vector = std::move(x);
  return out;
}

std::string to_decimal(const Extended& v, int digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits - 1) << v;
  return os.str();
}

}  // namespace polydeck::spectral
