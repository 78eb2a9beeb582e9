#include "nagumo/io.hpp"

#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nagumo/error.hpp"

namespace nagumo::io {

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// census

void write_census_csv(std::ostream& os, const std::vector<CountRow>& rows) {
  os << "n,k,total,necklaces,lyndon,bracelets,lyndon_bracelets\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.k << ',' << to_string(r.total) << ',' << to_string(r.necklaces)
       << ',' << to_string(r.lyndon) << ',' << to_string(r.bracelets) << ','
       << to_string(r.lyndon_bracelets) << '\n';
}

void write_census_table(std::ostream& os, const std::vector<CountRow>& rows) {
  const int k = rows.empty() ? 0 : rows.front().k;
  const int w = 12;
  os << std::setw(28) << "" << "translation T" << std::setw(10) << ""
     << "translation T + reflection R\n";
  os << std::setw(6) << "Period" << std::setw(w + 2) << "All solutions" << std::setw(w)
     << "All" << std::setw(w) << "Primitive" << std::setw(w) << "All" << std::setw(w)
     << "Primitive" << '\n';
  os << std::setw(6) << "n" << std::setw(w + 2) << (k ? std::to_string(k) + "^n" : "k^n")
     << std::setw(w) << "N_k(n)" << std::setw(w) << "L_k(n)" << std::setw(w) << "B_k(n)"
     << std::setw(w) << "BL_k(n)" << '\n';
  for (const auto& r : rows)
    os << std::setw(6) << r.n << std::setw(w + 2) << to_string(r.total) << std::setw(w)
       << to_string(r.necklaces) << std::setw(w) << to_string(r.lyndon) << std::setw(w)
       << to_string(r.bracelets) << std::setw(w) << to_string(r.lyndon_bracelets) << '\n';
}

namespace {
// Counts beyond 2^64 do not fit a JSON integer; emit them as strings.
Json count_json(Count c) {
  if (c <= static_cast<Count>(~0ULL)) return static_cast<unsigned long long>(c);
  return to_string(c);
}
}  // namespace

Json census_json(const std::vector<CountRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n},
                   {"k", r.k},
                   {"total", count_json(r.total)},
                   {"necklaces", count_json(r.necklaces)},
                   {"lyndon", count_json(r.lyndon)},
                   {"bracelets", count_json(r.bracelets)},
                   {"lyndon_bracelets", count_json(r.lyndon_bracelets)}});
  return out;
}

// ---------------------------------------------------------------------------
// classes

Json classes_json(const std::vector<SymmetryClass>& classes) {
  Json out = Json::array();
  for (const auto& c : classes)
    out.push_back({{"representative", c.representative.str()},
                   {"orbit_size", c.orbit_size()},
                   {"primitive", c.primitive()},
                   {"period", c.period}});
  return out;
}

void write_classes_csv(std::ostream& os, const std::vector<SymmetryClass>& classes) {
  os << "representative,orbit_size,primitive,period\n";
  for (const auto& c : classes)
    os << c.representative.str() << ',' << c.orbit_size() << ','
       << (c.primitive() ? "true" : "false") << ',' << c.period << '\n';
}

void write_classes_table(std::ostream& os, const std::vector<SymmetryClass>& classes) {
  for (const auto& c : classes) {
    os << std::left << std::setw(static_cast<int>(c.period) + 2) << c.representative.str()
       << std::right << "orbit " << std::setw(3) << c.orbit_size()
       << (c.primitive() ? "  primitive" : "") << "  {";
    for (std::size_t i = 0; i < c.members.size(); ++i)
      os << (i ? ", " : "") << c.members[i].str();
    os << "}\n";
  }
}

// ---------------------------------------------------------------------------
// equilibria

Json equilibrium_json(const Equilibrium& eq) {
  Json state = Json::array();
  for (Eigen::Index i = 0; i < eq.state.size(); ++i) state.push_back(eq.state(i));
  return {{"word", eq.word.str()},
          {"a", eq.params.a},
          {"d", eq.params.d},
          {"state", state},
          {"residual", eq.residual},
          {"stability", to_string(eq.stability)},
          {"spectral_bound", eq.spectral_bound}};
}

Equilibrium equilibrium_from_json(const Json& j) {
  try {
    Equilibrium eq;
    eq.word = Word::parse(j.at("word").get<std::string>());
    const auto& state = j.at("state");
    eq.state.resize(static_cast<Eigen::Index>(state.size()));
    for (std::size_t i = 0; i < state.size(); ++i)
      eq.state(static_cast<Eigen::Index>(i)) = state[i].get<double>();
    eq.params = Params{j.at("a").get<double>(), j.at("d").get<double>(), eq.state.size()};
    eq.residual = j.at("residual").get<double>();
    eq.spectral_bound = j.at("spectral_bound").get<double>();
    const auto s = j.at("stability").get<std::string>();
    eq.stability = s == "STABLE"     ? Stability::Stable
                   : s == "UNSTABLE" ? Stability::Unstable
                                     : Stability::Marginal;
    if (eq.word.size() != static_cast<std::size_t>(eq.state.size()))
      throw Error(ErrorCode::ParseError, "word length does not match state length");
    return eq;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad equilibrium JSON: ") + e.what());
  }
}

void write_equilibria_csv(std::ostream& os, const std::vector<Equilibrium>& eqs) {
  const std::size_t n = eqs.empty() ? 0 : static_cast<std::size_t>(eqs.front().state.size());
  os << "word,a,d,residual,stability,spectral_bound";
  for (std::size_t i = 1; i <= n; ++i) os << ",u_" << i;
  os << '\n';
  for (const auto& e : eqs) {
    os << e.word.str() << ',' << format_double(e.params.a) << ','
       << format_double(e.params.d) << ',' << format_double(e.residual) << ','
       << to_string(e.stability) << ',' << format_double(e.spectral_bound);
    for (Eigen::Index i = 0; i < e.state.size(); ++i) os << ',' << format_double(e.state(i));
    os << '\n';
  }
}

void write_equilibria_table(std::ostream& os, const std::vector<Equilibrium>& eqs) {
  for (const auto& e : eqs) {
    os << std::left << std::setw(static_cast<int>(e.word.size()) + 2) << e.word.str()
       << std::right << std::setw(9) << to_string(e.stability) << "  lambda_max "
       << std::setw(12) << std::setprecision(6) << e.spectral_bound << "  residual "
       << std::setw(10) << std::setprecision(3) << e.residual << "  u = (";
    for (Eigen::Index i = 0; i < e.state.size(); ++i)
      os << (i ? ", " : "") << std::setprecision(8) << e.state(i);
    os << ")\n";
  }
}

void write_trace_csv(std::ostream& os, const BranchTrace& trace) {
  os << 'd';
  for (std::size_t i = 1; i <= trace.word.size(); ++i) os << ",u_" << i;
  os << '\n';
  for (const auto& p : trace.points) {
    os << format_double(p.d);
    for (Eigen::Index i = 0; i < p.state.size(); ++i) os << ',' << format_double(p.state(i));
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// ordering

Json poset_json(const StablePoset& poset) {
  Json nodes = Json::array();
  for (const auto& w : poset.nodes) nodes.push_back(w.str());
  Json edges = Json::array();
  for (const auto& e : poset.edges)
    edges.push_back({{"from", e.from.str()}, {"to", e.to.str()}, {"margin", e.margin}});
  return {{"nodes", nodes}, {"edges", edges}};
}

void write_poset_table(std::ostream& os, const StablePoset& poset) {
  os << "classes:";
  for (const auto& w : poset.nodes) os << ' ' << w.str();
  os << '\n';
  for (const auto& e : poset.edges)
    os << e.from.str() << " < " << e.to.str() << "  (margin " << std::setprecision(6)
       << e.margin << ")\n";
}

// ---------------------------------------------------------------------------
// regions

void write_region_csv_header(std::ostream& os) {
  os << "word,a,d_star,status,refinement\n";
}

void write_region_csv_row(std::ostream& os, const RegionSample& s) {
  os << s.word.str() << ',' << format_double(s.a) << ',' << format_double(s.d_star) << ','
     << to_string(s.status) << ',' << format_double(s.refinement) << '\n';
}

Json region_json(const std::vector<RegionSample>& samples) {
  Json out = Json::array();
  for (const auto& s : samples) {
    Json row = {{"word", s.word.str()},
                {"a", s.a},
                {"d_star", s.d_star},
                {"status", to_string(s.status)},
                {"refinement", s.refinement}};
    if (!s.error.empty()) row["error"] = s.error;
    out.push_back(std::move(row));
  }
  return out;
}

void write_region_plot_row(std::ostream& os, const RegionSample& s) {
  os << format_double(s.a) << ' ' << format_double(s.d_star) << '\n';
}

// ---------------------------------------------------------------------------
// trajectories

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << 't';
  for (Eigen::Index i = 1; i <= traj.params.n; ++i) os << ",u_" << i;
  os << '\n';
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    os << format_double(traj.times[s]);
    for (Eigen::Index i = 0; i < traj.states[s].size(); ++i)
      os << ',' << format_double(traj.states[s](i));
    os << '\n';
  }
}

}  // namespace nagumo::io
