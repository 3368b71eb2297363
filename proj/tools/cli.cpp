#include "curvedepth/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvedepth/curvetopo.hpp"
#include "curvedepth/ensembles.hpp"
#include "curvedepth/errors.hpp"
#include "curvedepth/kernel.hpp"
#include "curvedepth/mollified.hpp"
#include "curvedepth/monte_carlo.hpp"
#include "curvedepth/quadrature.hpp"

#ifndef CURVEDEPTH_VERSION
#define CURVEDEPTH_VERSION "0.0.0"
#endif

namespace curvedepth {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using nlohmann::json;

struct Options {
  std::string ensemble = "kostlan";
  std::string degrees;
  std::string method = "kacrice";
  double tol = 1e-8;
  std::size_t max_panels = 1'000'000;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  int subdiv = -1;
  double epsilon = 0.0;
  std::string emit_loops;
  std::string out;
  unsigned threads = 0;
  double s_min = 0.0;
  double s_max = 3.0;
  double step = 0.01;
};

// Failure of the computation itself, as opposed to bad arguments.
struct Failure {
  std::string status;
  std::string message;
  double value = NAN;
  double err = NAN;
};

std::string fmt_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CURVEDEPTH_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw std::invalid_argument("CURVEDEPTH_THREADS must be a positive integer");
    return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct EnsembleSpec {
  std::string name;
  std::optional<CoefficientScheme> custom;

  CoefficientScheme scheme(int degree) const {
    if (custom) return *custom;
    if (name == "kostlan") return CoefficientScheme::kostlan(degree);
    return CoefficientScheme::kac_square(degree);
  }
};

EnsembleSpec parse_ensemble(const std::string& text) {
  EnsembleSpec spec{text, std::nullopt};
  if (text == "kostlan" || text == "kac") return spec;
  if (text.rfind("custom:", 0) == 0 && text.size() > 7) {
    spec.custom = load_custom_scheme(text.substr(7));
    return spec;
  }
  throw std::invalid_argument("unknown ensemble '" + text + "' (kostlan, kac, custom:<path>)");
}

std::vector<int> degrees_for(const EnsembleSpec& ens, const Options& opt) {
  if (ens.custom) {
    if (!opt.degrees.empty()) {
      for (int d : parse_degree_list(opt.degrees)) {
        if (d != ens.custom->degree()) throw std::invalid_argument("custom ensemble has degree " +
                                                                   std::to_string(ens.custom->degree()));
      }
    }
    return {ens.custom->degree()};
  }
  if (opt.degrees.empty()) throw std::invalid_argument("--degree or --degrees is required");
  return parse_degree_list(opt.degrees);
}

void check_method(const EnsembleSpec& ens, const std::string& method) {
  if (method != "kacrice" && method != "montecarlo" && method != "closedform") {
    throw std::invalid_argument("unknown method '" + method + "' (kacrice, montecarlo, closedform)");
  }
  if (method == "closedform" && ens.name != "kostlan") {
    throw std::invalid_argument("closedform is only available for the kostlan ensemble");
  }
}

json base_record(const std::string& command, const EnsembleSpec& ens, int degree, const Options& opt) {
  json r;
  r["command"] = command;
  r["version"] = version();
  r["ensemble"] = ens.name;
  r["degree"] = degree;
  r["method"] = opt.method;
  r["tol"] = opt.tol;
  r["max_panels"] = opt.max_panels;
  r["trials"] = opt.trials;
  r["seed"] = opt.seed;
  r["subdiv"] = opt.subdiv;
  r["epsilon"] = opt.epsilon;
  return r;
}

// Fills value, err_or_stderr, a_d_band and method details. Throws Failure.
void compute(json& r, const CoefficientScheme& scheme, const Options& opt, unsigned threads) {
  const int curve_degree = scheme.homogeneous_degree();
  r["curve_degree"] = curve_degree;
  r["a_d_band"] = odd_degree_band(curve_degree);
  try {
    if (opt.method == "closedform") {
      r["value"] = std::sqrt(static_cast<double>(scheme.degree())) / 2.0;
      r["err_or_stderr"] = 0.0;
      r["panels"] = 0;
    } else if (opt.method == "kacrice") {
      QuadConfig cfg;
      cfg.tol = opt.tol;
      cfg.max_panels = opt.max_panels;
      const IntegralResult res = scheme.kind() == SchemeKind::KacSquare
                                     ? expected_depth_kac_polar(scheme.degree(), cfg)
                                     : expected_depth(CovKernel::closed_form(scheme), cfg);
      r["value"] = res.value;
      r["err_or_stderr"] = res.err_est;
      r["panels"] = res.panels;
      r["evaluations"] = res.evaluations;
      r["formulation"] = scheme.kind() == SchemeKind::KacSquare ? "kac_polar" : "polar";
    } else {
      MonteCarloConfig cfg;
      cfg.trials = opt.trials;
      cfg.seed = opt.seed;
      cfg.subdivision_level = opt.subdiv;
      cfg.threads = threads;
      auto fill = [&](const MonteCarloResult& mc) {
        r["value"] = mc.mean;
        r["err_or_stderr"] = mc.std_error;
        r["accepted"] = mc.accepted;
        r["discarded"] = mc.discarded;
        r["histogram"] = mc.histogram;
        r["angular_mean"] = mc.angular_mean;
        r["angular_stderr"] = mc.angular_std_error;
        r["subdiv_used"] = mc.subdivision_level;
      };
      try {
        fill(monte_carlo_depth(scheme, cfg));
      } catch (const ExcessiveDiscards& e) {
        fill(e.result());
        throw Failure{"excessive_discards", e.what(), e.result().mean, e.result().std_error};
      }
    }
  } catch (const NonConvergence& e) {
    throw Failure{"nonconvergence", e.what(), e.value(), e.err_est()};
  } catch (const SingularEvaluation& e) {
    throw Failure{"singular", e.what()};
  }
}

// Mollified count and depth of trial 0, for checking a single curve.
void add_trial0_oracle(json& r, const CoefficientScheme& scheme, const Options& opt) {
  const PolySample poly = sample(scheme, SampleStream{opt.seed}, 0);
  const int level = opt.subdiv >= 0 ? opt.subdiv : default_subdivision_level(poly.degree());
  const DepthSampleReport rep = try_depth_of_sample(poly, make_icosphere(level));
  r["depth_trial0"] = rep.discarded ? json(nullptr) : json(rep.depth);
  if (poly.degree() % 2 == 0 && poly.coeff(0, 0) != 0.0) {
    r["mollified_trial0"] = mollified_count(poly, opt.epsilon);
  } else {
    r["mollified_trial0"] = nullptr;
  }
}

void emit_loops(const CoefficientScheme& scheme, const Options& opt) {
  const PolySample poly = sample(scheme, SampleStream{opt.seed}, 0);
  const int level = opt.subdiv >= 0 ? opt.subdiv : default_subdivision_level(poly.degree());
  const LoopSet loops = extract_loops(poly, make_icosphere(level));
  std::ofstream f(opt.emit_loops);
  if (!f) throw std::invalid_argument("cannot open " + opt.emit_loops);
  write_loops(f, loops);
}

std::ostream& open_out(const Options& opt, std::ostream& out, std::ofstream& file) {
  if (opt.out.empty()) return out;
  file.open(opt.out);
  if (!file) throw std::invalid_argument("cannot open " + opt.out);
  return file;
}

void table_line(std::ostream& err, const json& r) {
  char buf[160];
  const double v = r.value("value", kNaN);
  const double e = r.value("err_or_stderr", kNaN);
  std::snprintf(buf, sizeof buf, "%-8s %6d  %-10s %18.12f  %10.3e  band %.1f  %s\n",
                r["ensemble"].get<std::string>().substr(0, 8).c_str(), r["degree"].get<int>(),
                r["method"].get<std::string>().c_str(), v, e, r.value("a_d_band", 0.0),
                r.value("status", std::string("ok")).c_str());
  err << buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_depth(const Options& opt, std::ostream& out, std::ostream& err, bool table) {
  const EnsembleSpec ens = parse_ensemble(opt.ensemble);
  check_method(ens, opt.method);
  const std::vector<int> degrees = degrees_for(ens, opt);
  if (opt.epsilon < 0.0) throw std::invalid_argument("--epsilon must be positive");
  const unsigned threads = resolve_threads(opt.threads);
  std::ofstream file;
  std::ostream& os = open_out(opt, out, file);

  int code = 0;
  for (int d : degrees) {
    const auto t0 = std::chrono::steady_clock::now();
    const CoefficientScheme scheme = ens.scheme(d);
    json r = base_record("depth", ens, d, opt);
    r["status"] = "ok";
    try {
      compute(r, scheme, opt, threads);
      if (opt.epsilon > 0.0) add_trial0_oracle(r, scheme, opt);
      if (!opt.emit_loops.empty() && d == degrees.front()) emit_loops(scheme, opt);
    } catch (const Failure& f) {
      r["status"] = f.status;
      r["message"] = f.message;
      if (!r.contains("value")) r["value"] = f.value;
      if (!r.contains("err_or_stderr")) r["err_or_stderr"] = f.err;
      err << "degree " << d << ": " << f.message << '\n';
      code = 2;
    } catch (const DegenerateSample& e) {
      r["status"] = "degenerate_sample";
      r["message"] = e.what();
      err << "degree " << d << ": " << e.what() << '\n';
      code = 2;
    }
    r["wall_time_ms"] = elapsed_ms(t0);
    os << r.dump() << '\n';
    if (table) table_line(err, r);
  }
  return code;
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err, bool table) {
  const EnsembleSpec ens = parse_ensemble(opt.ensemble);
  check_method(ens, opt.method);
  std::vector<int> degrees = degrees_for(ens, opt);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  const unsigned threads = resolve_threads(opt.threads);

  std::vector<json> rows(degrees.size());
  std::atomic<std::size_t> next{0};
  // Monte Carlo is parallel inside; quadrature sweeps run degrees in parallel.
  const bool parallel_rows = opt.method != "montecarlo";
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < degrees.size();) {
      json r = base_record("sweep", ens, degrees[i], opt);
      r["status"] = "ok";
      try {
        compute(r, ens.scheme(degrees[i]), opt, parallel_rows ? 1 : threads);
      } catch (const Failure& f) {
        r["status"] = f.status;
        r["message"] = f.message;
        if (!r.contains("value")) r["value"] = f.value;
        if (!r.contains("err_or_stderr")) r["err_or_stderr"] = f.err;
      }
      rows[i] = std::move(r);
    }
  };
  const unsigned workers = parallel_rows ? std::min<unsigned>(threads, degrees.size()) : 1;
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::ofstream file;
  std::ostream& os = open_out(opt, out, file);
  os << "degree,value,err,a_d_band,method,seed,status\n";
  int code = 0;
  for (const json& r : rows) {
    const std::string status = r["status"];
    if (status != "ok") {
      code = 2;
      err << "degree " << r["degree"].get<int>() << ": " << r.value("message", status) << '\n';
    }
    os << r["degree"].get<int>() << ',' << fmt_number(r.value("value", kNaN)) << ','
       << fmt_number(r.value("err_or_stderr", kNaN)) << ',' << fmt_number(r.value("a_d_band", kNaN)) << ','
       << opt.method << ',' << opt.seed << ',' << status << '\n';
    if (table) table_line(err, r);
  }
  return code;
}

int cmd_density(const Options& opt, std::ostream& out) {
  const std::vector<int> degrees = parse_degree_list(opt.degrees);
  if (degrees.size() != 1) throw std::invalid_argument("density takes a single --degree");
  const int d = degrees.front();
  if (!(opt.step > 0.0)) throw std::invalid_argument("--step must be positive");
  if (!(opt.s_min >= 0.0) || !(opt.s_max >= opt.s_min)) throw std::invalid_argument("need 0 <= s-min <= s-max");
  std::ofstream file;
  std::ostream& os = open_out(opt, out, file);
  os << "s,phi_d,sqrt_phi_d\n";
  const auto n = static_cast<long>(std::floor((opt.s_max - opt.s_min) / opt.step * (1.0 + 1e-12)));
  for (long i = 0; i <= n; ++i) {
    const double s = opt.s_min + i * opt.step;
    const double phi = kac_phi(d, s);
    os << fmt_number(s) << ',' << fmt_number(phi) << ',' << fmt_number(std::sqrt(phi)) << '\n';
  }
  return 0;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--ensemble", opt.ensemble, "kostlan, kac or custom:<path>");
  sub->add_option("--degree,--degrees", opt.degrees, "degree, list a,b,c or range a:b[:step]");
  sub->add_option("--method", opt.method, "kacrice, montecarlo or closedform");
  sub->add_option("--tol", opt.tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-panels", opt.max_panels, "panel budget per adaptive integral")->check(CLI::PositiveNumber);
  sub->add_option("--trials", opt.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  sub->add_option("--seed", opt.seed, "master seed");
  sub->add_option("--subdiv", opt.subdiv, "icosphere level (default from degree)")->check(CLI::Range(0, 9));
  sub->add_option("--out", opt.out, "output file instead of stdout");
  sub->add_option("--threads", opt.threads, "worker threads (default CURVEDEPTH_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

const char* version() { return CURVEDEPTH_VERSION; }

std::vector<int> parse_degree_list(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size() || s.empty()) throw std::invalid_argument("bad degree '" + s + "' in '" + text + "'");
    if (v < 1) throw std::invalid_argument("degrees must be >= 1");
    return v;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i == s.size() || s[i] == sep) {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    return parts;
  };

  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("range must be a:b or a:b:step");
    const int a = to_int(parts[0]);
    const int b = to_int(parts[1]);
    const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
    for (int d = a; d <= b; d += step) out.push_back(d);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(to_int(p));
  }
  if (out.empty()) throw std::invalid_argument("empty degree list");
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool table) {
  CLI::App app{"Expected depth of random real algebraic plane curves", "curvedepth"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Options opt;

  CLI::App* depth = app.add_subcommand("depth", "expected depth per degree, as JSON lines");
  add_common(depth, opt);
  depth->add_option("--epsilon", opt.epsilon, "also report the mollified count of trial 0");
  depth->add_option("--emit-loops", opt.emit_loops, "write the loops of trial 0 to this file");

  CLI::App* sweep = app.add_subcommand("sweep", "degree sweep as CSV");
  add_common(sweep, opt);

  CLI::App* density = app.add_subcommand("density", "Kac one-dimensional density table as CSV");
  density->add_option("--degree", opt.degrees, "Kac degree")->required();
  density->add_option("--s-min", opt.s_min, "first abscissa");
  density->add_option("--s-max", opt.s_max, "last abscissa");
  density->add_option("--step", opt.step, "abscissa step");
  density->add_option("--out", opt.out, "output file instead of stdout");

  std::vector<const char*> argv{"curvedepth"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (depth->parsed()) return cmd_depth(opt, out, err, table);
    if (sweep->parsed()) return cmd_sweep(opt, out, err, table);
    return cmd_density(opt, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace curvedepth
