// polydeck command-line front end.
//
// Exit status: 0 success, 1 failed claim or comparison, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polydeck/hypergraph.hpp"
#include "polydeck/iso.hpp"
#include "polydeck/kocay.hpp"
#include "polydeck/spectral.hpp"
#include "polydeck/verify.hpp"

namespace {

using namespace polydeck;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_range(const std::string& s) {
  auto to_int = [&](const std::string& t) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size()) throw UsageError("--n: cannot parse '" + s + "'");
    return v;
  };
  int lo, hi;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    lo = to_int(s.substr(0, dots));
    hi = to_int(s.substr(dots + 2));
  } else {
    lo = hi = to_int(s);
  }
  if (lo > hi) throw UsageError("--n: empty range '" + s + "'");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

bool looks_like_json(const std::string& text) {
  auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

Hypergraph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    if (looks_like_json(text)) return hypergraph_from_json(json::parse(text));
    return parse_hg(text);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const InvalidHypergraph& e) {
    throw UsageError(path + ": " + e.what());
  }
}

/// Text goes to --out when given, stdout otherwise.
void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

struct SolverFlags {
  double tol = 1e-12;
  long long max_iter = 1'000'000;
  double shift = 1.0;
  std::uint64_t seed = 0;

  void add(CLI::App* app) {
    app->add_option("--tol", tol, "Bracket width tolerance")->capture_default_str();
    app->add_option("--max-iter", max_iter, "Iteration budget")->capture_default_str();
    app->add_option("--shift", shift, "Power iteration shift")->capture_default_str();
    app->add_option("--seed", seed, "Start vector seed (0 = all ones)")->capture_default_str();
  }

  spectral::SolverConfig config() const {
    spectral::SolverConfig c;
    c.tolerance = tol;
    c.max_iterations = max_iter;
    c.shift = shift;
    c.seed = seed;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }

  std::string header() const {
    std::ostringstream os;
    os << "tol=" << short_fmt(tol) << " max-iter=" << max_iter << " shift=" << short_fmt(shift)
       << " seed=" << seed;
    return os.str();
  }

  json to_json() const {
    return {{"tol", tol}, {"max_iter", max_iter}, {"shift", shift}, {"seed", seed}};
  }
};

class Timer {
 public:
  explicit Timer(std::string what) : what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    std::fprintf(stderr, "[time] %s: %.3f s\n", what_.c_str(), s);
  }

 private:
  std::string what_;
  std::chrono::steady_clock::time_point t0_;
};

int run(int argc, char** argv) {
  CLI::App app{"Kocay hypergraph pairs: constructions, spectra, decks and claim verification"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  int max_n = kocay::kDefaultMaxN;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--max-n", max_n, "Cap on n for family constructions")->check(CLI::Range(3, 20))->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Write a family hypergraph as .hg (or JSON)");
  std::string family, gen_out;
  int gen_n = 3, gen_k = 0;
  gen->add_option("--family", family, "C3, D3, G, H, T, Gamma, M0, M1, X or Y")->required();
  gen->add_option("--n", gen_n, "Ring exponent")->capture_default_str();
  gen->add_option("--k", gen_k, "Index k for G");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "Principal eigenpair of a hypergraph file");
  std::string spec_file, spec_out;
  SolverFlags spec_flags;
  bool oracle = false;
  int restarts = 8;
  spec->add_option("file", spec_file, ".hg or JSON hypergraph")->required();
  spec_flags.add(spec);
  spec->add_flag("--oracle", oracle, "Also run the gradient-ascent oracle");
  spec->add_option("--restarts", restarts, "Oracle restarts")->check(CLI::PositiveNumber)->capture_default_str();
  spec->add_option("--out", spec_out, "Output path (default stdout)");

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare principal eigenvalues of X^n and Y^n, or of two files");
  std::string cmp_n = "3", cmp_out;
  std::vector<std::string> cmp_files;
  SolverFlags cmp_flags;
  cmp->add_option("--n", cmp_n, "n or an inclusive range a..b")->capture_default_str();
  cmp->add_option("files", cmp_files, "Two hypergraph files instead of a family pair")->expected(0, 2);
  cmp_flags.add(cmp);
  cmp->add_option("--out", cmp_out, "Output path (default stdout)");

  // deck
  auto* dk = app.add_subcommand("deck", "Vertex deck as canonical forms");
  std::string deck_file, deck_out;
  std::size_t bound = iso::kDefaultVertexBound;
  dk->add_option("file", deck_file, ".hg or JSON hypergraph")->required();
  dk->add_option("--out", deck_out, "Output path (default stdout)");
  dk->add_option("--bound", bound, "Vertex bound for canonical labeling")->capture_default_str();

  // hypomorphic
  auto* hyp = app.add_subcommand("hypomorphic", "Decide whether two hypergraphs are hypomorphic");
  std::string hyp_a, hyp_b, hyp_out;
  std::size_t hyp_bound = iso::kDefaultVertexBound;
  hyp->add_option("first", hyp_a)->required();
  hyp->add_option("second", hyp_b)->required();
  hyp->add_option("--bound", hyp_bound, "Vertex bound for canonical labeling")->capture_default_str();
  hyp->add_option("--out", hyp_out, "Output path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the claim suite and write the verdict file");
  std::string ver_n = "3", ver_out = "verdict.json";
  bool exact_only = false;
  SolverFlags ver_flags;
  ver->add_option("--n", ver_n, "n or an inclusive range a..b")->capture_default_str();
  ver->add_option("--out", ver_out, "Verdict JSON path")->capture_default_str();
  ver->add_flag("--exact-only", exact_only, "Skip the numeric claims");
  ver_flags.add(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const bool as_json = format == "json";
  kocay::Construction construction(max_n);

  if (*gen) {
    auto f = kocay::parse_family(family);
    if (!f) throw UsageError("--family: unknown family '" + family + "'");
    kocay::FamilySpec fs{*f, gen_n, gen_k};
    if (*f == kocay::Family::G && gen_k == 0) throw UsageError("--k is required for family G");
    try {
      construction.validate(fs);
    } catch (const kocay::InvalidParameter& e) {
      throw UsageError(std::string("--n/--k: ") + e.what());
    }
    const Hypergraph h = construction.hypergraph(fs);
    emit(as_json ? to_json(h).dump(2) + "\n" : to_hg(h), gen_out);
    std::fprintf(stderr, "%s: %zu vertices, %zu edges\n", fs.label().c_str(), h.num_vertices(),
                 h.num_edges());
    return 0;
  }

  if (*spec) {
    const auto cfg = spec_flags.config();
    const Hypergraph h = load(spec_file);
    spectral::EigenPair ep;
    bool converged = true;
    {
      Timer t("spectrum");
      try {
        ep = spectral::principal_eigenpair(h, cfg);
      } catch (const spectral::MaxIterationsExceeded& e) {
        ep = e.best();
        converged = false;
      } catch (const spectral::NotConnected& e) {
        std::cerr << "spectrum: " << e.what() << "\n";
        return 1;
      }
    }
    json rec = spectral::report_record(spec_file, std::nullopt, ep);
    std::optional<double> oracle_value;
    if (oracle) oracle_value = spectral::oracle_radius(h, restarts, 1);
    std::ostringstream os;
    if (as_json) {
      rec["config"] = spec_flags.to_json();
      if (oracle_value) rec["oracle"] = *oracle_value;
      os << rec.dump(2) << "\n";
    } else {
      os << "# polydeck spectrum " << spec_flags.header() << "\n";
      os << "family: " << spec_file << "\n";
      os << "vertices: " << h.num_vertices() << "\nedges: " << h.num_edges() << "\n";
      os << "lambda_lo: " << fmt(ep.lambda_lo) << "\nlambda_hi: " << fmt(ep.lambda_hi) << "\n";
      os << "lambda: " << fmt(ep.lambda) << "\nlagrangian: " << fmt(ep.lagrangian) << "\n";
      os << "residual: " << fmt(ep.residual) << "\niterations: " << ep.iterations << "\n";
      os << "converged: " << (ep.converged ? "true" : "false") << "\n";
      os << "vector_digest: " << rec["vector_digest"].get<std::string>() << "\n";
      if (oracle_value) os << "oracle: " << fmt(*oracle_value) << "\n";
    }
    emit(os.str(), spec_out);
    return converged ? 0 : 1;
  }

  if (*cmp) {
    const auto cfg = cmp_flags.config();
    std::ostringstream os;
    bool ok = true;
    if (!cmp_files.empty()) {
      if (cmp_files.size() != 2) throw UsageError("compare needs exactly two files");
      const Hypergraph a = load(cmp_files[0]), b = load(cmp_files[1]);
      auto c = verify::compare_spectra(a, b, cfg);
      using V = verify::Comparison::Verdict;
      const char* verdict = c.verdict == V::SecondGreater ? "second > first"
                            : c.verdict == V::FirstGreater ? "first > second"
                                                           : "not different";
      ok = c.verdict != V::NotDifferent;
      auto ext_bracket = [](const spectral::ExtendedEigenPair& e) {
        return "[" + spectral::to_decimal(e.lambda_lo, 30) + ", " + spectral::to_decimal(e.lambda_hi, 30) + "]";
      };
      if (as_json) {
        json out{{"first", spectral::report_record(cmp_files[0], std::nullopt, c.first)},
                 {"second", spectral::report_record(cmp_files[1], std::nullopt, c.second)},
                 {"verdict", verdict},
                 {"config", cmp_flags.to_json()}};
        if (c.first_ext) {
          out["first"]["extended_bracket"] = ext_bracket(*c.first_ext);
          out["second"]["extended_bracket"] = ext_bracket(*c.second_ext);
        }
        os << out.dump(2) << "\n";
      } else {
        os << "# polydeck compare " << cmp_flags.header() << "\n";
        os << "first in [" << fmt(c.first.lambda_lo) << ", " << fmt(c.first.lambda_hi) << "]\n";
        os << "second in [" << fmt(c.second.lambda_lo) << ", " << fmt(c.second.lambda_hi) << "]\n";
        if (c.first_ext) {
          os << "first refined " << ext_bracket(*c.first_ext) << "\n";
          os << "second refined " << ext_bracket(*c.second_ext) << "\n";
        }
        os << verdict << "\n";
      }
    } else {
      std::vector<int> ns = parse_range(cmp_n);
      json all = json::array();
      if (!as_json) os << "# polydeck compare " << cmp_flags.header() << "\n";
      for (int n : ns) {
        if (n < 3 || n > max_n) throw UsageError("--n: " + std::to_string(n) + " outside 3.." + std::to_string(max_n));
        verify::Context ctx{construction};
        verify::Claim c;
        {
          Timer t("compare n=" + std::to_string(n));
          c = verify::verify_main_theorem(n, cfg, ctx);
        }
        ok = ok && c.pass;
        if (as_json) {
          all.push_back(verify::to_json(c));
        } else {
          os << "n=" << n << ": ";
          if (c.pass)
            os << "mu > lambda: " << c.detail << "\n";
          else
            os << "FAIL " << c.detail << "\n";
        }
      }
      if (as_json) os << json{{"config", cmp_flags.to_json()}, {"claims", all}}.dump(2) << "\n";
    }
    emit(os.str(), cmp_out);
    return ok ? 0 : 1;
  }

  if (*dk) {
    const Hypergraph h = load(deck_file);
    iso::Deck d;
    {
      Timer t("deck");
      d = iso::deck(h, bound);
    }
    emit(iso::deck_to_json(d).dump(2) + "\n", deck_out);
    return 0;
  }

  if (*hyp) {
    const Hypergraph a = load(hyp_a), b = load(hyp_b);
    std::optional<iso::VertexMap> eta;
    bool isomorphic = false;
    {
      Timer t("hypomorphic");
      eta = iso::hypomorphism(a, b, hyp_bound);
      isomorphic = iso::are_isomorphic(a, b, hyp_bound);
    }
    std::ostringstream os;
    if (as_json) {
      json j = {{"hypomorphic", eta.has_value()}, {"isomorphic", isomorphic}};
      j["eta"] = eta ? iso::vertex_map_to_json(*eta) : json(nullptr);
      os << j.dump(2) << "\n";
    } else {
      os << (eta ? "hypomorphic" : "not hypomorphic") << "\n";
      os << (isomorphic ? "isomorphic" : "not isomorphic") << "\n";
      if (eta) {
        os << "eta:";
        for (const auto& [v, w] : *eta) os << " " << v << "->" << w;
        os << "\n";
      }
    }
    emit(os.str(), hyp_out);
    return eta ? 0 : 1;
  }

  if (*ver) {
    const auto cfg = ver_flags.config();
    std::vector<int> ns = parse_range(ver_n);
    std::vector<verify::Claim> claims;
    for (int n : ns) {
      if (n < 3 || n > max_n) throw UsageError("--n: " + std::to_string(n) + " outside 3.." + std::to_string(max_n));
      verify::Context ctx{construction};
      Timer t("verify n=" + std::to_string(n));
      auto batch = exact_only ? verify::verify_identity_suite(n, ctx) : verify::verify_all(n, cfg, ctx);
      claims.insert(claims.end(), batch.begin(), batch.end());
    }
    std::size_t failed = 0;
    std::ostringstream os;
    if (!as_json) os << "# polydeck verify " << ver_flags.header() << "\n";
    for (const auto& c : claims) {
      if (!c.pass) {
        ++failed;
        std::cerr << "claim failed: " << c.id << " " << c.params.dump() << ": " << c.detail << "\n";
      }
      std::fprintf(stderr, "[time] %s %s: %.3f s\n", c.id.c_str(), c.params.dump().c_str(), c.seconds);
      if (!as_json) os << (c.pass ? "pass " : "FAIL ") << c.id << " " << c.params.dump() << "\n";
    }
    const json verdict = verify::to_json(std::span<const verify::Claim>(claims));
    if (as_json) os << verdict.dump(2) << "\n";
    else os << claims.size() - failed << "/" << claims.size() << " claims pass\n";
    std::cout << os.str();
    std::ofstream f(ver_out);
    if (!f) throw UsageError("cannot write " + ver_out);
    f << verdict.dump(2) << "\n";
    return failed ? 1 : 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const iso::SizeBoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
