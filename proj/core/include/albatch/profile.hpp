// Performance profiles: for an error table t(p, s) over problems and
// solvers, r(p,s) = t(p,s) / min_s t(p,s) and rho(tau, s) is the fraction
// of problems with r(p,s) <= tau - a CDF of performance ratios.
#pragma once

#include <string>
#include <vector>

#include "albatch/errors.hpp"
#include "albatch/simulate.hpp"

namespace albatch {

struct ErrorTable {
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  std::vector<double> values;  // row-major problems x solvers, all > 0

  double at(std::size_t p, std::size_t s) const {
    return values[p * solvers.size() + s];
  }
};

struct ProfileCurve {
  std::string solver;
  std::vector<double> rho;  // one value per shared breakpoint
};

struct ProfileCurves {
  std::vector<double> tau;  // shared breakpoints, ascending, starting at 1
  std::vector<ProfileCurve> curves;
};

// Throws NonPositiveErrorValue if any t(p,s) <= 0.
ProfileCurves dolan_more(const ErrorTable& table);

// Builds the error table from run records: one problem per distinct problem
// label, one solver per strategy, the measure being the mean final-round
// error rate (1 - accuracy) over seeds.
ErrorTable error_table_from_records(const std::vector<RunRecord>& records);

}  // namespace albatch
