#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nagumo/atlas.hpp"
#include "nagumo/census.hpp"
#include "nagumo/dynamics.hpp"
#include "nagumo/equilibria.hpp"
#include "nagumo/error.hpp"
#include "nagumo/io.hpp"
#include "nagumo/lexicon.hpp"

namespace nagumo::cli {

namespace {

struct Common {
  std::string format;
  std::string output;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format,
                std::vector<std::string> formats) {
  c.format = default_format;
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
  sub->add_option("--output,-o", c.output, "Write primary output to this file");
}

Symmetry parse_symmetry(const std::string& s) {
  return s == "t" ? Symmetry::Translation : Symmetry::TranslationReflection;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return kExitBudget;
    case ErrorCode::Domain:
    case ErrorCode::BadParams:
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ParamMismatch: return kExitUsage;
    default: return kExitNumerical;
  }
}

// --- count ---------------------------------------------------------------

struct CountOptions {
  Common common;
  int n_max = 6;
  int k = 3;
  bool verify = false;
};

int run_count(const CountOptions& o, std::ostream& out, std::ostream& err) {
  const auto rows = census_table(o.n_max, o.k);
  if (o.common.format == "csv")
    io::write_census_csv(out, rows);
  else if (o.common.format == "json")
    out << io::census_json(rows).dump(2) << '\n';
  else
    io::write_census_table(out, rows);
  if (!o.verify) return kExitOk;

  const Alphabet alphabet = o.k == 2 ? Alphabet::Stable : Alphabet::Full;
  bool all_pass = true;
  for (const auto& r : rows) {
    if (checked_power(o.k, r.n) > kEnumerationBudget) {
      out << "verify n=" << r.n << " k=" << o.k << " SKIP (beyond enumeration budget)\n";
      continue;
    }
    const auto n = static_cast<std::size_t>(r.n);
    const auto count = [&](Symmetry s, bool primitive) {
      return static_cast<Count>(enumerate_classes(n, alphabet, s, primitive).size());
    };
    const bool pass = count(Symmetry::Translation, false) == r.necklaces &&
                      count(Symmetry::Translation, true) == r.lyndon &&
                      count(Symmetry::TranslationReflection, false) == r.bracelets &&
                      count(Symmetry::TranslationReflection, true) == r.lyndon_bracelets;
    all_pass = all_pass && pass;
    out << "verify n=" << r.n << " k=" << o.k << (pass ? " PASS" : " FAIL") << '\n';
  }
  if (!all_pass) err << "count: enumeration disagrees with the closed-form counts\n";
  return all_pass ? kExitOk : kExitVerificationFailed;
}

// --- enumerate -----------------------------------------------------------

struct EnumerateOptions {
  Common common;
  int n = 3;
  int k = 3;
  std::string symmetry = "t";
  bool primitive_only = false;
};

int run_enumerate(const EnumerateOptions& o, std::ostream& out, std::ostream&) {
  const auto classes =
      enumerate_classes(static_cast<std::size_t>(o.n), o.k == 2 ? Alphabet::Stable : Alphabet::Full,
                        parse_symmetry(o.symmetry), o.primitive_only);
  if (o.common.format == "csv")
    io::write_classes_csv(out, classes);
  else if (o.common.format == "json")
    out << io::classes_json(classes).dump(2) << '\n';
  else
    io::write_classes_table(out, classes);
  return kExitOk;
}

// --- solve ---------------------------------------------------------------

struct SolveOptions {
  Common common;
  std::string word;
  int n = 0;
  double a = 0.5;
  double d = 0.005;
  bool trace = false;
};

int run_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  if (o.word.empty() == (o.n == 0))
    throw Error(ErrorCode::BadParams, "give exactly one of --word or --n");

  if (!o.word.empty()) {
    const Word w = Word::parse(o.word);
    BranchTrace trace;
    const auto eq = solve_word(w, o.a, o.d, {}, &trace);
    if (o.trace) {
      io::write_trace_csv(out, trace);
      return trace.reached() ? kExitOk : kExitNumerical;
    }
    if (!eq) {
      err << "solve: branch " << w.str() << " at a = " << o.a << " stopped at d = "
          << trace.last().d << " (" << to_string(trace.status) << ") before d = " << o.d
          << '\n';
      return kExitNumerical;
    }
    if (o.common.format == "json")
      out << io::equilibrium_json(*eq).dump(2) << '\n';
    else if (o.common.format == "csv")
      io::write_equilibria_csv(out, {*eq});
    else
      io::write_equilibria_table(out, {*eq});
    return kExitOk;
  }

  const BranchCensus census = all_branches(static_cast<std::size_t>(o.n), o.a, o.d);
  if (o.common.format == "json") {
    io::Json arr = io::Json::array();
    for (const auto& e : census.equilibria) arr.push_back(io::equilibrium_json(e));
    out << arr.dump(2) << '\n';
  } else if (o.common.format == "csv") {
    io::write_equilibria_csv(out, census.equilibria);
  } else {
    io::write_equilibria_table(out, census.equilibria);
  }
  for (const auto& f : census.failures)
    err << "solve: branch " << f.word.str() << " stopped at d = " << f.d_reached << " ("
        << to_string(f.status) << ")\n";
  for (const auto& [x, y] : census.collisions)
    err << "solve: branches " << x.str() << " and " << y.str() << " collided\n";
  err << "solve: " << census.equilibria.size() << " equilibria, " << census.stable_count()
      << " stable\n";
  return census.failures.empty() && census.collisions.empty() ? kExitOk : kExitNumerical;
}

// --- order ---------------------------------------------------------------

struct OrderOptions {
  Common common;
  int n = 3;
  double a = 0.5;
  double d = 0.005;
  std::string symmetry = "t";
};

int run_order(const OrderOptions& o, std::ostream& out, std::ostream&) {
  const auto poset = stable_poset(static_cast<std::size_t>(o.n), o.a, o.d,
                                  parse_symmetry(o.symmetry));
  if (o.common.format == "json") {
    out << io::poset_json(poset).dump(2) << '\n';
  } else if (o.common.format == "csv") {
    out << "from,to,margin\n";
    for (const auto& e : poset.edges)
      out << e.from.str() << ',' << e.to.str() << ',' << io::format_double(e.margin) << '\n';
  } else {
    io::write_poset_table(out, poset);
  }
  return kExitOk;
}

// --- region --------------------------------------------------------------

struct RegionOptions {
  Common common;
  std::string word;
  double a_min = 0.025;
  double a_max = 0.975;
  int points = 41;
  double d_cap = 2.0;
  double tol = 1e-5;
};

int run_region(const RegionOptions& o, std::ostream& out, std::ostream&) {
  const Word w = Word::parse(o.word);
  SweepConfig config = SweepConfig::uniform(o.a_min, o.a_max, o.points);
  config.d_cap = o.d_cap;
  config.bisect_tol = o.tol;
  config.validate();

  std::vector<RegionSample> samples;
  if (o.common.format == "csv") {
    io::write_region_csv_header(out);
    samples = region_sweep(w, config, [&](const RegionSample& s) {
      io::write_region_csv_row(out, s);
      out.flush();
    });
  } else if (o.common.format == "plot") {
    samples = region_sweep(w, config, [&](const RegionSample& s) {
      io::write_region_plot_row(out, s);
      out.flush();
    });
  } else {
    samples = region_sweep(w, config);
    out << io::region_json(samples).dump(2) << '\n';
  }
  for (const auto& s : samples)
    if (s.status == RegionStatus::Failed) return kExitNumerical;
  return kExitOk;
}

// --- simulate ------------------------------------------------------------

struct SimulateOptions {
  Common common;
  std::string word;
  std::vector<double> state;
  double a = 0.5;
  double d = 0.005;
  double t_end = 10.0;
  double dt = 0.05;
  double shift = 0.0;
  int stride = 1;
};

int run_simulate(const SimulateOptions& o, std::ostream& out, std::ostream&) {
  if (o.word.empty() == o.state.empty())
    throw Error(ErrorCode::BadParams, "give exactly one of --word or --state");
  Eigen::VectorXd u0;
  if (!o.word.empty()) {
    u0 = root_state(Word::parse(o.word), o.a);
  } else {
    u0 = Eigen::Map<const Eigen::VectorXd>(o.state.data(),
                                           static_cast<Eigen::Index>(o.state.size()));
  }
  u0.array() += o.shift;
  const Params p{o.a, o.d, u0.size()};
  const Trajectory traj = integrate(u0, p, o.t_end, o.dt, o.stride);
  io::write_trajectory_csv(out, traj);
  return kExitOk;
}

// --- verify --------------------------------------------------------------

struct VerifyOptions {
  Common common;
  std::string word;
  double a = 0.5;
  double d = 0.005;
  double delta = 0.02;
  double t_end = 200.0;
  double tol = 1e-6;
};

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream&) {
  const Word w = Word::parse(o.word);
  const Params p{o.a, o.d, static_cast<Eigen::Index>(w.size())};
  const auto eq = solve_word(w, o.a, o.d);
  if (!eq) throw Error(ErrorCode::NoConvergence, "branch " + w.str() + " does not reach d");
  const SandwichReport r = verify_asymptotic_stability(w, p, o.delta, o.t_end, o.tol);
  const bool agrees = r.stable == (eq->stability == Stability::Stable);

  if (o.common.format == "json") {
    io::Json j = {{"word", w.str()},
                  {"a", o.a},
                  {"d", o.d},
                  {"delta", o.delta},
                  {"t_end", o.t_end},
                  {"tol", o.tol},
                  {"empirically_stable", r.stable},
                  {"departed", r.departed},
                  {"upper_distance", r.upper_distance},
                  {"lower_distance", r.lower_distance},
                  {"jacobian_verdict", to_string(eq->stability)},
                  {"spectral_bound", eq->spectral_bound},
                  {"agrees", agrees}};
    out << j.dump(2) << '\n';
  } else {
    out << "word " << w.str() << ": sandwich " << (r.stable ? "STABLE" : "NOT STABLE")
        << (r.departed ? " (departed)" : "") << ", final distances "
        << io::format_double(r.upper_distance) << " / " << io::format_double(r.lower_distance)
        << "; jacobian " << to_string(eq->stability) << " (lambda_max "
        << io::format_double(eq->spectral_bound) << ")" << (agrees ? " AGREE" : " DISAGREE")
        << '\n';
  }
  return agrees ? kExitOk : kExitVerificationFailed;
}

void check_positive(CLI::Option* opt) { opt->check(CLI::PositiveNumber); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic stationary solutions of the lattice Nagumo equation", "nagumo"};
  app.require_subcommand(1);

  CountOptions count;
  auto* c = app.add_subcommand("count", "Closed-form class counts per period");
  add_common(c, count.common, "table", {"csv", "json", "table"});
  c->add_option("--n-max", count.n_max)->check(CLI::Range(1, 64))->capture_default_str();
  c->add_option("--k", count.k)->check(CLI::IsMember({2, 3}))->capture_default_str();
  c->add_flag("--verify", count.verify, "Cross-check against brute-force enumeration");

  EnumerateOptions en;
  auto* e = app.add_subcommand("enumerate", "List symmetry classes of words");
  add_common(e, en.common, "table", {"csv", "json", "table"});
  e->add_option("--n", en.n)->check(CLI::Range(1, 64))->capture_default_str();
  e->add_option("--k", en.k)->check(CLI::IsMember({2, 3}))->capture_default_str();
  e->add_option("--symmetry", en.symmetry, "t (rotation) or tr (rotation + reflection)")
      ->check(CLI::IsMember({"t", "tr"}))
      ->capture_default_str();
  e->add_flag("--primitive-only", en.primitive_only);

  SolveOptions so;
  auto* s = app.add_subcommand("solve", "Continue branches from d = 0 and classify them");
  add_common(s, so.common, "table", {"csv", "json", "table"});
  s->add_option("--word", so.word, "Word over 0, a, 1");
  s->add_option("--n", so.n, "Solve all 3^n words")->check(CLI::Range(1, 12));
  s->add_option("--a", so.a)->capture_default_str();
  s->add_option("--d", so.d)->check(CLI::NonNegativeNumber)->capture_default_str();
  s->add_flag("--trace", so.trace, "Emit the branch trace as CSV (d,u_1..u_n)");

  OrderOptions od;
  auto* o = app.add_subcommand("order", "Hasse diagram of the stable classes");
  add_common(o, od.common, "table", {"csv", "json", "table"});
  o->add_option("--n", od.n)->check(CLI::Range(1, 12))->capture_default_str();
  o->add_option("--a", od.a)->capture_default_str();
  o->add_option("--d", od.d)->check(CLI::NonNegativeNumber)->capture_default_str();
  o->add_option("--symmetry", od.symmetry)->check(CLI::IsMember({"t", "tr"}))->capture_default_str();

  RegionOptions rg;
  auto* r = app.add_subcommand("region", "Largest continuable d over a grid in a");
  add_common(r, rg.common, "csv", {"csv", "json", "plot"});
  r->add_option("--word", rg.word)->required();
  r->add_option("--a-min", rg.a_min)->capture_default_str();
  r->add_option("--a-max", rg.a_max)->capture_default_str();
  r->add_option("--points", rg.points)->check(CLI::PositiveNumber)->capture_default_str();
  check_positive(r->add_option("--d-cap", rg.d_cap)->capture_default_str());
  check_positive(r->add_option("--tol", rg.tol)->capture_default_str());

  SimulateOptions sim;
  auto* m = app.add_subcommand("simulate", "Integrate the cycle system with RK4");
  add_common(m, sim.common, "csv", {"csv"});
  m->add_option("--word", sim.word, "Start from the lattice point w_a");
  m->add_option("--state", sim.state, "Explicit initial state")->delimiter(',');
  m->add_option("--a", sim.a)->capture_default_str();
  m->add_option("--d", sim.d)->check(CLI::NonNegativeNumber)->capture_default_str();
  check_positive(m->add_option("--t-end", sim.t_end)->capture_default_str());
  check_positive(m->add_option("--dt", sim.dt)->capture_default_str());
  m->add_option("--shift", sim.shift, "Constant added to every component")->capture_default_str();
  m->add_option("--stride", sim.stride)->check(CLI::PositiveNumber)->capture_default_str();

  VerifyOptions vf;
  auto* v = app.add_subcommand("verify", "Sandwich-perturbation stability check");
  add_common(v, vf.common, "table", {"json", "table"});
  v->add_option("--word", vf.word)->required();
  v->add_option("--a", vf.a)->capture_default_str();
  v->add_option("--d", vf.d)->check(CLI::NonNegativeNumber)->capture_default_str();
  check_positive(v->add_option("--delta", vf.delta)->capture_default_str());
  check_positive(v->add_option("--t-end", vf.t_end)->capture_default_str());
  check_positive(v->add_option("--tol", vf.tol)->capture_default_str());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  err << "# nagumo " << chosen->get_name() << '\n';
  std::istringstream banner(chosen->config_to_str(true, false));
  for (std::string line; std::getline(banner, line);)
    if (!line.empty()) err << "#   " << line << '\n';

  const std::string& output =
      chosen == c ? count.common.output
      : chosen == e ? en.common.output
      : chosen == s ? so.common.output
      : chosen == o ? od.common.output
      : chosen == r ? rg.common.output
      : chosen == m ? sim.common.output
                    : vf.common.output;
  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      err << "nagumo: cannot open " << output << " for writing\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = output.empty() ? out : file;

  try {
    if (chosen == c) return run_count(count, sink, err);
    if (chosen == e) return run_enumerate(en, sink, err);
    if (chosen == s) return run_solve(so, sink, err);
    if (chosen == o) return run_order(od, sink, err);
    if (chosen == r) return run_region(rg, sink, err);
    if (chosen == m) return run_simulate(sim, sink, err);
    return run_verify(vf, sink, err);
  } catch (const Error& ex) {
    err << "nagumo " << chosen->get_name() << ": " << to_string(ex.code()) << ": "
        << ex.what() << '\n';
    return exit_code_for(ex.code());
  }
}

}  // namespace nagumo::cli
