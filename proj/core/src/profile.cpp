#include "albatch/profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace albatch {

ProfileCurves dolan_more(const ErrorTable& table) {
  const std::size_t num_p = table.problems.size();
  const std::size_t num_s = table.solvers.size();
  if (num_p == 0 || num_s == 0) throw Error("empty error table");
  if (table.values.size() != num_p * num_s) {
    throw Error("error table payload does not match problems x solvers");
  }
  for (double v : table.values) {
    if (!(v > 0.0)) {
      throw NonPositiveErrorValue("performance measures must be positive, got " +
                                  std::to_string(v));
    }
  }

  // Performance ratios against the per-problem best solver.
  std::vector<double> ratios(num_p * num_s);
  for (std::size_t p = 0; p < num_p; ++p) {
    double best = table.at(p, 0);
    for (std::size_t s = 1; s < num_s; ++s) best = std::min(best, table.at(p, s));
    for (std::size_t s = 0; s < num_s; ++s) ratios[p * num_s + s] = table.at(p, s) / best;
  }

  // Shared breakpoints: every ratio, plus tau = 1.
  ProfileCurves out;
  out.tau = ratios;
  out.tau.push_back(1.0);
  std::sort(out.tau.begin(), out.tau.end());
  out.tau.erase(std::unique(out.tau.begin(), out.tau.end()), out.tau.end());

  for (std::size_t s = 0; s < num_s; ++s) {
    ProfileCurve curve;
    curve.solver = table.solvers[s];
    curve.rho.reserve(out.tau.size());
    for (double tau : out.tau) {
      std::size_t count = 0;
      for (std::size_t p = 0; p < num_p; ++p) {
        if (ratios[p * num_s + s] <= tau) ++count;
      }
      curve.rho.push_back(static_cast<double>(count) / static_cast<double>(num_p));
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

ErrorTable error_table_from_records(const std::vector<RunRecord>& records) {
  if (records.empty()) throw Error("no records to build an error table from");
  // (problem, solver) -> accumulated final error rates over seeds.
  std::map<std::string, std::map<std::string, std::pair<double, int>>> cells;
  for (const auto& r : records) {
    if (r.rounds.empty()) throw Error("record with no rounds");
    const double err = 1.0 - r.rounds.back().test_accuracy;
    auto& cell = cells[r.problem][r.strategy];
    cell.first += err;
    cell.second += 1;
  }

  ErrorTable table;
  std::map<std::string, std::size_t> solver_slot;
  for (const auto& [problem, solvers] : cells) {
    table.problems.push_back(problem);
    for (const auto& [solver, _] : solvers) {
      if (!solver_slot.contains(solver)) {
        solver_slot[solver] = table.solvers.size();
        table.solvers.push_back(solver);
      }
    }
  }
  table.values.assign(table.problems.size() * table.solvers.size(), 0.0);
  for (std::size_t p = 0; p < table.problems.size(); ++p) {
    const auto& solvers = cells[table.problems[p]];
    if (solvers.size() != table.solvers.size()) {
      throw Error("problem " + table.problems[p] + " is missing some solvers");
    }
    for (const auto& [solver, cell] : solvers) {
      table.values[p * table.solvers.size() + solver_slot[solver]] =
          cell.first / cell.second;
    }
  }
  return table;
}

}  // namespace albatch
