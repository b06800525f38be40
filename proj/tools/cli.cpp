#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "stable_spectra/bimeasure.hpp"
#include "stable_spectra/covariation.hpp"
#include "stable_spectra/errors.hpp"
#include "stable_spectra/harmonisable.hpp"
#include "stable_spectra/io.hpp"
#include "stable_spectra/spectral_measure.hpp"
#include "stable_spectra/stable_core.hpp"

namespace stable_spectra::cli {
namespace {

using io::format_number;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_complex(std::complex<double> z) {
  std::string re = format_number(z.real());
  std::string im = format_number(std::abs(z.imag()));
  return re + (z.imag() < 0.0 ? "-" : "+") + im + "i";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: \"" + s + "\"");
  }
  if (used != s.size()) throw InputError("not a number: \"" + s + "\"");
  return v;
}

// "1", "-0.5", "2i", "-i", "1+2i", "1e-3-4i".
std::complex<double> parse_complex(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw InputError("empty coefficient");
  if (t.back() != 'i' && t.back() != 'j') return {parse_double(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split_at == std::string::npos) return {0.0, imag_part(body)};
  return {parse_double(body.substr(0, split_at)), imag_part(body.substr(split_at))};
}

ComplexVector parse_complex_list(const std::string& s) {
  ComplexVector out;
  for (const auto& item : split(s, ',')) out.push_back(parse_complex(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item));
  return out;
}

std::string format_vector(std::span<const double> v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out + "]";
}

struct Globals {
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<double> tol;
  std::string mode = "literal";
  std::string out_path;
};

std::uint64_t resolve_seed(const Globals& g) {
  if (g.seed) return *g.seed;
  if (const char* env = std::getenv("STABLE_SPECTRA_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("STABLE_SPECTRA_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

double resolve_alpha(const Globals& g) {
  const double a = g.alpha.value_or(1.5);
  if (!(a > 1.0 && a < 2.0)) throw InputError("--alpha must lie in (1, 2)");
  return a;
}

// Output goes to --out when given, else to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// -- commands ---------------------------------------------------------------

int cmd_check_additivity(const Globals& g, const std::string& file, std::ostream& out) {
  TripleMode mode;
  if (g.mode == "literal") {
    mode = TripleMode::literal;
  } else if (g.mode == "pairwise") {
    mode = TripleMode::pairwise_distinct;
  } else {
    throw InputError("--mode must be literal or pairwise");
  }
  const double tol = g.tol.value_or(1e-10);
  if (!(tol > 0.0)) throw InputError("--tol must be > 0");
  const auto measure = io::measure_from_json(io::read_json_file(file));
  ThetaGridSpec grid;
  grid.seed = resolve_seed(g);
  const auto r = check_additivity_condition(measure, grid, tol, mode);
  out << "measure: " << file << " (" << to_string(measure.mode()) << ", dimension "
      << measure.dimension() << ", " << measure.atoms().size() << " atoms)\n";
  out << "triples: " << to_string(mode) << "\n";
  out << "grid: " << r.grid_spec << "\n";
  out << "points: " << r.points_evaluated << "\n";
  out << "max_abs: " << format_number(r.max_abs) << "\n";
  out << "worst: (i,j,k) = (" << r.worst.i + 1 << "," << r.worst.j + 1 << "," << r.worst.k + 1
      << ") theta = " << format_vector(r.worst.theta) << "\n";
  out << "tolerance: " << format_number(tol) << "\n";
  out << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return r.pass ? kPass : kCheckFailed;
}

int cmd_covariation(const Globals& g, const std::string& file, const std::string& a_s,
                    const std::string& b_s, bool estimate, std::optional<double> p_opt,
                    std::ostream& out) {
  const Alpha alpha(resolve_alpha(g));
  const auto measure = io::measure_from_json(io::read_json_file(file));
  const auto a = parse_complex_list(a_s);
  const auto b = parse_complex_list(b_s);
  if (a.size() != measure.dimension() || b.size() != measure.dimension()) {
    throw InputError("coefficient vectors must have " + std::to_string(measure.dimension()) +
                     " entries");
  }
  const auto exact = covariation_exact(measure, alpha, a, b);
  out << "alpha: " << format_number(alpha.value()) << "\n";
  out << "exact: " << format_complex(exact) << "\n";
  if (!estimate) return kPass;

  const double p = p_opt.value_or(default_moment_order(alpha));
  if (!(p >= 1.0 && p < alpha.value())) throw InputError("--p must lie in [1, alpha)");
  const std::size_t n = g.n.value_or(100000);
  const auto seed = resolve_seed(g);
  const auto sample = sample_vector(measure, alpha, n, seed);
  std::vector<std::complex<double>> x(n, 0.0);
  std::vector<std::complex<double>> y(n, 0.0);
  bool y_real = true;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < measure.dimension(); ++j) {
      x[r] += a[j] * sample.at(r, j);
      y[r] += b[j] * sample.at(r, j);
    }
    y_real = y_real && y[r].imag() == 0.0;
  }
  const MomentLaw law = y_real ? MomentLaw::real : MomentLaw::isotropic;
  const auto est = covariation_estimate(x, y, alpha, p, law);
  const double dev = std::abs(est.value - exact);
  const bool ok = dev <= 3.0 * est.std_error;
  out << "estimate: " << format_complex(est.value) << " +/- " << format_number(est.std_error)
      << " (n " << n << ", p " << format_number(p) << ", seed " << seed << ", moment law "
      << (law == MomentLaw::real ? "real" : "isotropic") << ")\n";
  out << "deviation: " << format_number(dev) << " (" << format_number(est.std_error > 0 ? dev / est.std_error : 0.0)
      << " std errors)\n";
  out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kPass : kCheckFailed;
}

int cmd_classify(const Globals& g, const std::string& file, const std::string& pd_domain,
                 std::size_t trials, std::ostream& out) {
  const auto model = io::model_from_json(io::read_json_file(file));
  const double tol = g.tol.value_or(1e-12);
  if (!(tol >= 0.0)) throw InputError("--tol must be >= 0");
  PdDomain domain;
  if (pd_domain == "complex") {
    domain = PdDomain::complex;
  } else if (pd_domain == "real") {
    domain = PdDomain::real;
  } else {
    throw InputError("--pd-domain must be complex or real");
  }
  const auto r = classify(model, tol);
  out << "verdict: " << to_string(r.verdict);
  if (r.period) out << ", T = " << format_number(*r.period);
  out << "\n";
  out << "lines:\n";
  out << "  gamma,mass\n";
  for (const auto& line : r.lines) {
    out << "  " << format_number(line.gamma) << "," << format_number(line.mass) << "\n";
  }
  const auto pd = pd_type_check(model.F(), model.alpha(), trials, resolve_seed(g), 1e-10, domain);
  out << "pd-type check (" << pd_domain << " coefficients, " << pd.trials
      << " vectors): " << (pd.pass ? "pass" : "FAIL") << " (worst re " << format_number(pd.worst_re)
      << ", worst |im| " << format_number(pd.worst_im) << ")\n";
  if (!pd.pass) {
    out << "invalid bimeasure\n";
    return kCheckFailed;
  }
  return kPass;
}

int cmd_spectrum(const Globals& g, const std::string& file, double tau, std::optional<double> T,
                 int kmin, int kmax, std::ostream& out) {
  if (!T || !(*T > 0.0)) throw InputError("--T must be given and > 0");
  if (kmin > kmax) throw InputError("--kmin must not exceed --kmax");
  const auto model = io::model_from_json(io::read_json_file(file));
  const double tol = g.tol.value_or(1e-8);
  Sink sink(g.out_path, out);
  auto& csv = sink.get();
  csv << "k,numeric_re,numeric_im,predicted_re,predicted_im\n";
  double worst = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const auto c = fourier_coefficient(model, tau, k, *T);
    worst = std::max(worst, std::abs(c.numeric - c.predicted));
    csv << k << "," << format_number(c.numeric.real()) << "," << format_number(c.numeric.imag())
        << "," << format_number(c.predicted.real()) << "," << format_number(c.predicted.imag())
        << "\n";
  }
  if (worst > tol) {
    out << "# numeric and predicted coefficients differ by " << format_number(worst)
        << " > " << format_number(tol) << "\n";
    return kCheckFailed;
  }
  return kPass;
}

int cmd_synthesize(const Globals& g, const std::string& file, const std::string& times_s,
                   std::ostream& out) {
  const auto model = io::model_from_json(io::read_json_file(file));
  if (!model.increments()) throw InputError("no increment law: model supports analytics only");
  const auto times = parse_double_list(times_s);
  const std::size_t n = g.n.value_or(10);
  const auto paths = synthesize_paths(model, times, n, resolve_seed(g));
  Sink sink(g.out_path, out);
  io::write_paths_csv(sink.get(), paths);
  return kPass;
}

int cmd_verify_identities(const Globals&, const std::string& alpha_s, const std::string& p_s,
                          double tol1, double tol2, std::ostream& out) {
  const auto alphas = parse_double_list(alpha_s);
  const auto ps = parse_double_list(p_s);
  for (double a : alphas) {
    if (!(a > 1.0 && a < 2.0)) throw InputError("alpha values must lie in (1, 2)");
  }
  for (double p : ps) {
    if (!(p > 0.0 && p < 2.0)) throw InputError("p values must lie in (0, 2)");
  }
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  out << "identity,alpha,p,argument,numeric,closed_form,abs_err,threshold,status\n";
  auto row = [&](const std::string& id, const std::string& a, double p, const std::string& arg,
                 const std::string& num, const std::string& closed, double err, double thr) {
    const bool pass = err <= thr;
    ok = ok && pass;
    out << id << "," << a << "," << format_number(p) << "," << arg << "," << num << "," << closed
        << "," << format_number(err) << "," << format_number(thr) << "," << (pass ? "PASS" : "FAIL")
        << "\n";
  };
  auto lemma_rows = [&](const std::string& a, double p) {
    if (p > 1.0) {
      for (double s : {0.0, 2.0, -2.0, 1.0, -1.0, 0.5, -0.5}) {
        const auto c = lemma1_check(s, p);
        row("sine", a, p, "s=" + format_number(s), format_number(c.sine.numeric),
            format_number(c.sine.closed_form), c.sine.abs_err, tol1);
        row("one_minus_cos", a, p, "s=" + format_number(s), format_number(c.cosine.numeric),
            format_number(c.cosine.closed_form), c.cosine.abs_err, tol1);
      }
    }
    for (auto z : {std::complex<double>(1, 0), std::complex<double>(0, 1), std::complex<double>(1, 1)}) {
      const auto c = lemma2_check(z, p);
      row("planar_modulus", a, p, "z=" + format_complex(z), format_number(c.modulus.numeric),
          format_number(c.modulus.closed_form), c.modulus.abs_err, tol2);
      row("planar_signed_power", a, p, "z=" + format_complex(z),
          format_complex(c.signed_power.numeric), format_complex(c.signed_power.closed_form),
          c.signed_power.abs_err, tol2);
    }
  };
  for (double p : ps) lemma_rows("-", p);
  for (double a : alphas) {
    const Alpha alpha(a);
    const auto c = constants(alpha, 1.0);
    const std::string as = format_number(a);
    out << "constant," << as << ",1,psi_alpha," << format_number(c.psi_alpha) << ",,,,\n";
    out << "constant," << as << ",1,s_alpha_real," << format_number(c.s_alpha_real) << ",,,,\n";
    out << "constant," << as << ",1,s_alpha_iso," << format_number(c.s_alpha_iso) << ",,,,\n";
    out << "constant," << as << ",-,c0," << format_number(c.c0) << ",,,,\n";
    const bool bound = c.s_alpha_real <= c.psi_alpha;
    ok = ok && bound;
    out << "bound," << as << ",1,s_alpha_real<=psi_alpha," << format_number(c.s_alpha_real) << ","
        << format_number(c.psi_alpha) << ",,," << (bound ? "PASS" : "FAIL") << "\n";
    // Hardest case: moment order just below alpha.
    lemma_rows(as, a - 0.01);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << "# overall: " << (ok ? "PASS" : "FAIL") << " (" << std::fixed << std::setprecision(2)
      << secs << " s)\n";
  return ok ? kPass : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covariation, additivity and spectral tools for symmetric alpha-stable models"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Exit codes: 0 pass, 1 check failed, 2 usage or input error.\n"
      "Seed: --seed, else $STABLE_SPECTRA_SEED, else " + std::to_string(kDefaultSeed) + ".");

  Globals g;
  app.add_option("--alpha", g.alpha, "Stability index in (1, 2) (default 1.5)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--n", g.n, "Sample or path count");
  app.add_option("--tol", g.tol,
                 "Tolerance: check-additivity 1e-10, classify mass 1e-12, spectrum 1e-8");
  app.add_option("--mode", g.mode, "Triple mode for check-additivity: literal|pairwise")
      ->capture_default_str();
  app.add_option("--out", g.out_path, "Output file (spectrum, synthesize)");

  std::string file;
  auto* check = app.add_subcommand("check-additivity", "Check the vanishing third-derivative condition");
  check->add_option("measure", file, "Spectral measure JSON")->required();

  std::string a_s, b_s;
  bool estimate = false;
  std::optional<double> p_opt;
  auto* cov = app.add_subcommand("covariation", "Exact covariation [a.X, b.X] (and a Monte-Carlo estimate)");
  cov->add_option("measure", file, "Spectral measure JSON")->required();
  cov->add_option("--a", a_s, "First coefficients, comma separated (1, -0.5, 2i, 1+2i)")->required();
  cov->add_option("--b", b_s, "Second coefficients")->required();
  cov->add_flag("--estimate", estimate, "Also estimate from --n samples (default 1e5)");
  cov->add_option("--p", p_opt, "Moment order for the estimate, in [1, alpha) (default min(1.2, (1+alpha)/2))");

  std::string pd_domain = "complex";
  std::size_t trials = 200;
  auto* cls = app.add_subcommand("classify", "Stationary / periodic / almost periodic classification");
  cls->add_option("model", file, "Model JSON")->required();
  cls->add_option("--pd-domain", pd_domain, "Coefficients for the PD-type check: complex|real")
      ->capture_default_str();
  cls->add_option("--trials", trials, "Random vectors for the PD-type check")->capture_default_str();

  double tau = 0.0;
  std::optional<double> period;
  int kmin = -4, kmax = 4;
  auto* spec = app.add_subcommand("spectrum", "Cyclic Fourier coefficients as CSV");
  spec->add_option("model", file, "Model JSON")->required();
  spec->add_option("--tau", tau, "Lag")->capture_default_str();
  spec->add_option("--T", period, "Period (> 0)");
  spec->add_option("--kmin", kmin, "First coefficient index")->capture_default_str();
  spec->add_option("--kmax", kmax, "Last coefficient index")->capture_default_str();

  std::string times_s = "0,1";
  auto* syn = app.add_subcommand("synthesize", "Simulate paths of a model with an increment law (CSV)");
  syn->add_option("model", file, "Model JSON")->required();
  syn->add_option("--times", times_s, "Comma separated times")->capture_default_str();

  std::string alpha_list = "1.5", p_list = "0.8,1.1,1.5,1.9";
  double tol1 = 1e-6, tol2 = 1e-4;
  auto* ver = app.add_subcommand("verify-identities", "Check the fractional-integral identities numerically");
  ver->add_option("--alphas", alpha_list, "Comma separated alpha values")->capture_default_str();
  ver->add_option("--ps", p_list, "Comma separated p values in (0, 2)")->capture_default_str();
  ver->add_option("--tol-1d", tol1, "Threshold for the one-dimensional identities")->capture_default_str();
  ver->add_option("--tol-2d", tol2, "Threshold for the planar identities")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*check) return cmd_check_additivity(g, file, out);
    if (*cov) return cmd_covariation(g, file, a_s, b_s, estimate, p_opt, out);
    if (*cls) return cmd_classify(g, file, pd_domain, trials, out);
    if (*spec) return cmd_spectrum(g, file, tau, period, kmin, kmax, out);
    if (*syn) return cmd_synthesize(g, file, times_s, out);
    if (*ver) {
      if (g.alpha && alpha_list == "1.5") alpha_list = format_number(*g.alpha);
      return cmd_verify_identities(g, alpha_list, p_list, tol1, tol2, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInputError;
}

}  // namespace stable_spectra::cli
