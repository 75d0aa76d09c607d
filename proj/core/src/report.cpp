#include "albatch/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "albatch/svg.hpp"

namespace albatch {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot write report file: " + path.string());
  out << text;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::vector<std::string> emit_report(const ReportInputs& inputs,
                                     const std::filesystem::path& out_dir) {
  if (inputs.records.empty()) {
    throw Error("report requires at least one run record");
  }
  for (const auto& r : inputs.records) {
    if (r.rounds.empty()) throw Error("run record with no rounds");
  }
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> files;

  // Group records by (problem, strategy); map order keeps output stable.
  std::map<std::pair<std::string, std::string>, std::vector<RunRecord>> groups;
  std::set<std::string> problems;
  for (const auto& r : inputs.records) {
    groups[{r.problem, r.strategy}].push_back(r);
    problems.insert(r.problem);
  }
  const bool multi_problem = problems.size() > 1;

  // Accuracy summary CSV + banded accuracy plot.
  std::string csv = "problem,strategy,round,labeled,accuracy_mean,accuracy_std\n";
  std::vector<Series> acc_series;
  for (const auto& [key, records] : groups) {
    const auto rows = summarize(records);
    Series series;
    series.label = multi_problem ? key.first + "/" + key.second : key.second;
    for (const auto& row : rows) {
      csv += key.first + "," + key.second + "," + std::to_string(row.round) + "," +
             std::to_string(row.labeled) + "," + csv_num(row.accuracy_mean) + "," +
             csv_num(row.accuracy_std) + "\n";
      series.x.push_back(row.labeled);
      series.y.push_back(row.accuracy_mean);
      series.band.push_back(row.accuracy_std);
    }
    acc_series.push_back(std::move(series));
  }
  write_text(out_dir / "accuracy_summary.csv", csv);
  files.push_back("accuracy_summary.csv");

  ChartOptions acc_opts;
  acc_opts.title = "Test accuracy vs labeled examples";
  acc_opts.x_label = "labeled examples";
  acc_opts.y_label = "test accuracy";
  write_text(out_dir / "accuracy_vs_labels.svg", render_line_chart(acc_series, acc_opts));
  files.push_back("accuracy_vs_labels.svg");

  if (inputs.profiles) {
    std::string pcsv = "solver,tau,rho\n";
    std::vector<Series> curves;
    for (const auto& curve : inputs.profiles->curves) {
      Series series;
      series.label = curve.solver;
      for (std::size_t i = 0; i < inputs.profiles->tau.size(); ++i) {
        pcsv += curve.solver + "," + csv_num(inputs.profiles->tau[i]) + "," +
                csv_num(curve.rho[i]) + "\n";
        series.x.push_back(inputs.profiles->tau[i]);
        series.y.push_back(curve.rho[i]);
      }
      curves.push_back(std::move(series));
    }
    write_text(out_dir / "profiles.csv", pcsv);
    files.push_back("profiles.csv");

    ChartOptions dm_opts;
    dm_opts.title = "Performance profiles (final error rate)";
    dm_opts.x_label = "tau";
    dm_opts.y_label = "fraction of problems";
    dm_opts.step = true;
    write_text(out_dir / "dolan_more.svg", render_line_chart(curves, dm_opts));
    files.push_back("dolan_more.svg");
  }

  if (inputs.bench) {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (const auto& row : inputs.bench->rows) {
      labels.push_back(row.strategy + " b=" + std::to_string(row.batch));
      values.push_back(row.mean_s);
    }
    ChartOptions bar_opts;
    bar_opts.title = "Acquisition wall time";
    bar_opts.y_label = "seconds";
    write_text(out_dir / "runtime_bars.svg", render_bar_chart(labels, values, bar_opts));
    files.push_back("runtime_bars.svg");
  }

  nlohmann::json meta;
  meta["records"] = inputs.records.size();
  meta["groups"] = groups.size();
  nlohmann::json group_list = nlohmann::json::array();
  for (const auto& [key, records] : groups) {
    group_list.push_back({{"problem", key.first},
                          {"strategy", key.second},
                          {"seeds", records.size()},
                          {"rounds", records.front().rounds.size()}});
  }
  meta["series"] = group_list;
  meta["has_profiles"] = inputs.profiles.has_value();
  meta["has_bench"] = inputs.bench.has_value();
  write_text(out_dir / "report.json", meta.dump(2) + "\n");
  files.push_back("report.json");
  return files;
}

}  // namespace albatch
