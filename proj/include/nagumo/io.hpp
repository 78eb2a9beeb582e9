#pragma once

// CSV, JSON and plain-text renderings of library results.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "nagumo/atlas.hpp"
#include "nagumo/census.hpp"
#include "nagumo/dynamics.hpp"
#include "nagumo/equilibria.hpp"
#include "nagumo/lexicon.hpp"

namespace nagumo::io {

using Json = nlohmann::ordered_json;

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);
/// Shortest text that parses back to the same double.
std::string format_double(double x);

void write_census_csv(std::ostream& os, const std::vector<CountRow>& rows);
void write_census_table(std::ostream& os, const std::vector<CountRow>& rows);
Json census_json(const std::vector<CountRow>& rows);

Json classes_json(const std::vector<SymmetryClass>& classes);
void write_classes_csv(std::ostream& os, const std::vector<SymmetryClass>& classes);
void write_classes_table(std::ostream& os, const std::vector<SymmetryClass>& classes);

Json equilibrium_json(const Equilibrium& eq);
/// Inverse of equilibrium_json. Throws Error(ParseError).
Equilibrium equilibrium_from_json(const Json& j);
void write_equilibria_csv(std::ostream& os, const std::vector<Equilibrium>& eqs);
void write_equilibria_table(std::ostream& os, const std::vector<Equilibrium>& eqs);

/// Columns d,u_1..u_n.
void write_trace_csv(std::ostream& os, const BranchTrace& trace);

Json poset_json(const StablePoset& poset);
void write_poset_table(std::ostream& os, const StablePoset& poset);

/// Columns word,a,d_star,status,refinement.
void write_region_csv_header(std::ostream& os);
void write_region_csv_row(std::ostream& os, const RegionSample& s);
Json region_json(const std::vector<RegionSample>& samples);
/// Two whitespace-separated columns: a d_star.
void write_region_plot_row(std::ostream& os, const RegionSample& s);

/// Columns t,u_1..u_n.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace nagumo::io
