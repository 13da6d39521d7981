#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "runner.hpp"

namespace casimir::cli {

inline constexpr const char* kCsvHeader =
    "route,field,cond_A,cond_B,alpha_A,alpha_B,mode,r_A,r_B,d,T,kind,value,est_rel_err,l_max,quad_pts,p_max";

inline constexpr const char* kUnits =
    "hbar = c = k_B = 1; lengths in the input unit, energies in inverse length, forces in inverse length squared";

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

/// Result rows, then (with two or more routes) a blank line and the compare
/// block, a second table whose first column is the literal "compare".
void write_run(std::ostream& os, const RunConfig& c, const RunResult& r, Format f, const std::string& command);

void write_convergence(std::ostream& os, const RunConfig& c, const std::vector<ConvergenceTable>& tables, Format f);

}  // namespace casimir::cli
