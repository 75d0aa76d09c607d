// albatch command line: score, select, simulate, bench, profile, report,
// plus a synth utility for generating test tensors. Every command writes its
// primary outputs deterministically; wall-clock measurements land in
// manifest.json (or in files the manifest declares as timing artifacts).
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "albatch/bench.hpp"
#include "albatch/manifest.hpp"
#include "albatch/pairwise.hpp"
#include "albatch/profile.hpp"
#include "albatch/report.hpp"
#include "albatch/scores.hpp"
#include "albatch/select.hpp"
#include "albatch/simulate.hpp"
#include "albatch/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace albatch;

namespace {

json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  json j;
  in >> j;
  return j;
}

DatasetSpec parse_dataset_spec(const json& j) {
  DatasetSpec spec;
  const std::string generator = j.value("generator", "blobs");
  if (generator == "blobs") {
    spec.generator = DatasetSpec::Generator::blobs;
    BlobSpec& b = spec.blobs;
    b.classes = j.value("classes", b.classes);
    b.dims = j.value("dims", b.dims);
    b.per_class = j.value("per_class", b.per_class);
    b.noise = j.value("noise", b.noise);
    b.repeat = j.value("repeat", b.repeat);
    b.repeat_noise_rel = j.value("repeat_noise_rel", b.repeat_noise_rel);
    b.test_per_class = j.value("test_per_class", b.test_per_class);
    b.center_radius = j.value("center_radius", b.center_radius);
    b.seed = j.value("seed", b.seed);
  } else if (generator == "idx") {
    spec.generator = DatasetSpec::Generator::idx;
    IdxSpec& i = spec.idx;
    i.images = j.at("images").get<std::string>();
    i.labels = j.at("labels").get<std::string>();
    i.limit = j.value("limit", i.limit);
    i.test_fraction = j.value("test_fraction", i.test_fraction);
  } else {
    throw InvalidSpecError("unknown dataset generator: " + generator);
  }
  return spec;
}

ModelSpec parse_model_spec(const json& j) {
  ModelSpec spec;
  const std::string kind = j.value("kind", "ensemble");
  if (kind == "ensemble") {
    spec.kind = ModelKind::ensemble;
  } else if (kind == "mc_dropout") {
    spec.kind = ModelKind::mc_dropout;
  } else {
    throw InvalidSpecError("unknown model kind: " + kind);
  }
  spec.members = j.value("members", spec.members);
  spec.hidden_width = j.value("hidden_width", spec.hidden_width);
  spec.dropout_rate = j.value("dropout_rate", spec.dropout_rate);
  spec.epochs = j.value("epochs", spec.epochs);
  spec.learning_rate = j.value("learning_rate", spec.learning_rate);
  return spec;
}

StrategySpec parse_strategy_spec(const json& j) {
  StrategySpec spec;
  spec.strategy = parse_strategy(j.at("name").get<std::string>());
  spec.alpha = j.value("alpha", spec.alpha);
  spec.mc_samples = j.value("mc_samples", spec.mc_samples);
  spec.lbb_full_matrix = j.value("full_matrix", spec.lbb_full_matrix);
  return spec;
}

json selection_to_json(const SelectionBatch& batch) {
  json out;
  out["strategy"] = batch.strategy;
  out["indices"] = batch.indices;
  out["gains"] = batch.gains;
  if (batch.seed) out["seed"] = *batch.seed;
  if (!batch.flag.empty()) out["flag"] = batch.flag;
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot write: " + path.string());
  out << text;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<RunRecord> read_records(const std::vector<std::string>& paths) {
  std::vector<RunRecord> records;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open records file: " + path);
    std::string line;
    // Rows belonging to one (problem, strategy, seed) run are grouped back
    // into records keyed by that triple, in file order.
    std::map<std::string, std::size_t> slot;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json row = json::parse(line);
      const std::string key = row.at("problem").get<std::string>() + "\x1f" +
                              row.at("strategy").get<std::string>() + "\x1f" +
                              std::to_string(row.at("seed").get<std::uint64_t>());
      if (!slot.contains(key)) {
        slot[key] = records.size();
        RunRecord r;
        r.problem = row.at("problem").get<std::string>();
        r.strategy = row.at("strategy").get<std::string>();
        r.seed = row.at("seed").get<std::uint64_t>();
        records.push_back(r);
      }
      RoundEntry entry;
      entry.round = row.at("round").get<int>();
      entry.labeled_count = row.at("labeled").get<int>();
      entry.test_accuracy = row.at("test_accuracy").get<double>();
      if (row.contains("acquired_indices")) {
        entry.acquired_indices = row["acquired_indices"].get<std::vector<int>>();
      }
      records[slot[key]].rounds.push_back(entry);
    }
  }
  return records;
}

// --- subcommand payloads ---

struct SynthArgs {
  int n = 100, k = 5, c = 3;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthArgs& args) {
  PoolSpec spec{args.n, args.k, args.c, args.seed};
  synthetic_tensor(spec).write(args.out);
  std::cout << "wrote tensor " << args.n << "x" << args.k << "x" << args.c << " to "
            << args.out << "\n";
  return 0;
}

struct ScoreArgs {
  std::string tensor;
  std::string strategy = "bald";
  bool emit_mean = false;
  std::string out;
};

int run_score(const ScoreArgs& args) {
  PosteriorTensor tensor = PosteriorTensor::read(args.tensor);
  fs::create_directories(args.out);
  ScoreVector scores;
  if (args.strategy == "lc") {
    scores = least_confident_scores(tensor);
  } else if (args.strategy == "entropy") {
    scores = entropy_scores(tensor);
  } else if (args.strategy == "bald") {
    scores = bald_scores(tensor).scores;
  } else {
    throw Error("score strategy must be one of lc|entropy|bald");
  }
  const std::string csv_name = "scores_" + scores.label + ".csv";
  scores.write_csv(fs::path(args.out) / csv_name);

  ManifestData manifest;
  manifest.command = "score";
  manifest.config_json =
      json{{"tensor", args.tensor}, {"strategy", args.strategy}}.dump();
  manifest.inputs.emplace_back(args.tensor, file_hash_hex(args.tensor));
  manifest.outputs.push_back(csv_name);
  if (args.emit_mean) {
    predictive_mean(tensor).write_csv(fs::path(args.out) / "mean_matrix.csv");
    manifest.outputs.push_back("mean_matrix.csv");
  }
  write_manifest(args.out, manifest);
  std::cout << "scored " << tensor.pool_size() << " pool points -> " << args.out << "/"
            << csv_name << "\n";
  return 0;
}

struct SelectArgs {
  std::string tensor;
  std::string strategy = "bald";
  int batch = 10;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  int mc_samples = kDefaultMcSamples;
  int cap = kDefaultEnumerationCap;
  bool full_matrix = false;
  std::string mi_matrix;  // optional dump of the full pairwise MI matrix
  std::string out;
};

int run_select(const SelectArgs& args) {
  PosteriorTensor tensor = PosteriorTensor::read(args.tensor);
  StrategyParams params;
  params.strategy = parse_strategy(args.strategy);
  params.batch = args.batch;
  params.alpha = args.alpha;
  params.seed = args.seed;
  params.mc_samples = args.mc_samples;
  params.enumeration_cap = args.cap;
  params.lbb_full_matrix = args.full_matrix;
  SelectionBatch batch = run_strategy(tensor, params);

  // --out may name the selection JSON directly or a run directory.
  fs::path out_path(args.out);
  fs::path dir;
  fs::path selection_file;
  if (out_path.extension() == ".json") {
    dir = out_path.parent_path().empty() ? fs::path(".") : out_path.parent_path();
    selection_file = out_path;
  } else {
    dir = out_path;
    selection_file = out_path / "selection.json";
  }
  fs::create_directories(dir);
  json selection = selection_to_json(batch);
  if (params.strategy == Strategy::batchbald) {
    // Attach the exact score breakdown when the batch is small enough to
    // enumerate; for larger batches the greedy gains already carry the
    // (estimated) score trajectory.
    try {
      BatchScoreBreakdown breakdown = batchbald_score(tensor, batch.indices);
      selection["breakdown"] = {
          {"joint_entropy", breakdown.joint_entropy},
          {"conditional_joint_entropy", breakdown.conditional_joint_entropy},
          {"score", breakdown.score}};
    } catch (const EnumerationCapExceededError&) {
    }
  }
  write_text(selection_file, selection.dump(2) + "\n");

  ManifestData manifest;
  manifest.command = "select";
  manifest.config_json = json{{"tensor", args.tensor},
                              {"strategy", args.strategy},
                              {"batch", args.batch},
                              {"alpha", args.alpha},
                              {"mc_samples", args.mc_samples},
                              {"enumeration_cap", args.cap},
                              {"full_matrix", args.full_matrix}}
                             .dump();
  manifest.seed = args.seed;
  manifest.inputs.emplace_back(args.tensor, file_hash_hex(args.tensor));
  manifest.outputs.push_back(selection_file.filename().string());
  manifest.timings_json = json{{"wall_time_s", batch.wall_time_s}}.dump();

  if (!args.mi_matrix.empty()) {
    std::vector<double> matrix = pairwise_mi_matrix(tensor);
    write_matrix(args.mi_matrix, tensor.pool_size(), tensor.pool_size(), matrix);
    manifest.outputs.push_back(fs::path(args.mi_matrix).filename().string());
  }
  write_manifest(dir, manifest);

  std::cout << batch.strategy << " selected " << batch.indices.size() << " points";
  if (!batch.flag.empty()) std::cout << " [" << batch.flag << "]";
  std::cout << " -> " << selection_file.string() << "\n";
  return 0;
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed_override;
};

int run_simulate(const SimulateArgs& args) {
  const json cfg_json = load_json_file(args.config);
  RunConfig base;
  base.problem = cfg_json.value("problem", base.problem);
  base.dataset = parse_dataset_spec(cfg_json.at("dataset"));
  base.model = parse_model_spec(cfg_json.value("model", json::object()));
  base.initial_labeled = cfg_json.value("initial_labeled", base.initial_labeled);
  base.batch = cfg_json.value("batch", base.batch);
  base.budget = cfg_json.value("budget", base.budget);
  if (cfg_json.contains("seeds")) {
    base.seeds = cfg_json["seeds"].get<std::vector<std::uint64_t>>();
  }
  if (args.seed_override) base.seeds = {*args.seed_override};

  std::vector<StrategySpec> strategies;
  if (cfg_json.contains("strategies")) {
    for (const auto& s : cfg_json["strategies"]) strategies.push_back(parse_strategy_spec(s));
  } else {
    strategies.push_back(parse_strategy_spec(cfg_json.at("strategy")));
  }

  fs::create_directories(args.out);
  ManifestData manifest;
  manifest.command = "simulate";
  manifest.config_json = cfg_json.dump();
  manifest.inputs.emplace_back(args.config, file_hash_hex(args.config));

  std::string jsonl;
  json timings = json::object();
  for (const auto& strategy : strategies) {
    RunConfig cfg = base;
    cfg.strategy = strategy;
    std::vector<RunRecord> records = run_all_seeds(cfg);
    const std::string label = to_string(strategy.strategy);

    json strategy_timings = json::array();
    for (const auto& record : records) {
      json train_times = json::array();
      json acq_times = json::array();
      for (const auto& round : record.rounds) {
        json row;
        row["problem"] = record.problem;
        row["strategy"] = record.strategy;
        row["seed"] = record.seed;
        row["round"] = round.round;
        row["labeled"] = round.labeled_count;
        row["test_accuracy"] = round.test_accuracy;
        row["acquired_indices"] = round.acquired_indices;
        jsonl += row.dump() + "\n";
        train_times.push_back(round.train_wall_time_s);
        acq_times.push_back(round.acquisition_wall_time_s);
      }
      strategy_timings.push_back({{"seed", record.seed},
                                  {"train_wall_time_s", train_times},
                                  {"acquisition_wall_time_s", acq_times}});
      for (const auto& w : record.warnings) {
        std::cout << "note [" << label << " seed " << record.seed << "]: " << w << "\n";
      }
      if (!record.flag.empty()) {
        std::cout << "note [" << label << " seed " << record.seed
                  << "]: " << record.flag << "\n";
      }
    }
    timings[label] = strategy_timings;

    const std::string summary_name =
        strategies.size() == 1 ? "summary.csv" : "summary_" + label + ".csv";
    std::string csv = "round,labeled,accuracy_mean,accuracy_std\n";
    for (const auto& row : summarize(records)) {
      csv += std::to_string(row.round) + "," + std::to_string(row.labeled) + "," +
             csv_num(row.accuracy_mean) + "," + csv_num(row.accuracy_std) + "\n";
    }
    write_text(fs::path(args.out) / summary_name, csv);
    manifest.outputs.push_back(summary_name);
  }
  write_text(fs::path(args.out) / "records.jsonl", jsonl);
  manifest.outputs.push_back("records.jsonl");
  manifest.timings_json = timings.dump();
  write_manifest(args.out, manifest);
  std::cout << "simulated " << strategies.size() << " strategies x " << base.seeds.size()
            << " seeds -> " << args.out << "\n";
  return 0;
}

struct BenchArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed_override;
};

int run_bench(const BenchArgs& args) {
  const json cfg_json = load_json_file(args.config);
  PoolSpec pool;
  if (cfg_json.contains("pool")) {
    const json& p = cfg_json["pool"];
    pool.n = p.value("n", pool.n);
    pool.k = p.value("k", pool.k);
    pool.c = p.value("c", pool.c);
    pool.seed = p.value("seed", pool.seed);
  }
  const int reps = cfg_json.value("reps", 3);
  std::uint64_t seed = cfg_json.value("seed", 0);
  if (args.seed_override) seed = *args.seed_override;
  std::vector<int> batch_sizes = cfg_json.value("batch_sizes", std::vector<int>{10, 20});
  std::vector<StrategySpec> strategies;
  for (const auto& s : cfg_json.at("strategies")) strategies.push_back(parse_strategy_spec(s));

  BenchTable table = bench_runtime(strategies, batch_sizes, pool, reps, seed);

  fs::create_directories(args.out);
  // Deterministic selections on one side, measured times on the other.
  json selections;
  selections["pool"] = {{"n", pool.n}, {"k", pool.k}, {"c", pool.c}, {"seed", pool.seed}};
  selections["reps"] = reps;
  json rows = json::array();
  std::string times_csv = "strategy,batch_size,mean_s,std_s\n";
  json timing_rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"strategy", row.strategy}, {"batch", row.batch},
                    {"indices", row.indices}});
    times_csv += row.strategy + "," + std::to_string(row.batch) + "," +
                 csv_num(row.mean_s) + "," + csv_num(row.std_s) + "\n";
    timing_rows.push_back({{"strategy", row.strategy},
                           {"batch", row.batch},
                           {"mean_s", row.mean_s},
                           {"std_s", row.std_s}});
  }
  selections["selections"] = rows;
  write_text(fs::path(args.out) / "bench_selections.json", selections.dump(2) + "\n");
  write_text(fs::path(args.out) / "bench_times.csv", times_csv);

  ManifestData manifest;
  manifest.command = "bench";
  manifest.config_json = cfg_json.dump();
  manifest.seed = seed;
  manifest.inputs.emplace_back(args.config, file_hash_hex(args.config));
  manifest.outputs = {"bench_selections.json", "bench_times.csv"};
  manifest.timing_artifacts = {"bench_times.csv"};
  manifest.timings_json = json{{"rows", timing_rows}}.dump();
  write_manifest(args.out, manifest);

  for (const auto& row : table.rows) {
    std::cout << row.strategy << " b=" << row.batch << ": " << row.mean_s << " +/- "
              << row.std_s << " s\n";
  }
  return 0;
}

struct ProfileArgs {
  std::string table;
  std::vector<std::string> records;
  std::string out;
};

ErrorTable read_error_table_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open error table: " + path.string());
  ErrorTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error("empty error table: " + path.string());
  std::stringstream header(line);
  std::string cell;
  std::getline(header, cell, ',');  // "problem"
  while (std::getline(header, cell, ',')) table.solvers.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::getline(row, cell, ',');
    table.problems.push_back(cell);
    while (std::getline(row, cell, ',')) table.values.push_back(std::stod(cell));
  }
  return table;
}

int run_profile(const ProfileArgs& args) {
  ErrorTable table;
  ManifestData manifest;
  manifest.command = "profile";
  if (!args.table.empty()) {
    table = read_error_table_csv(args.table);
    manifest.inputs.emplace_back(args.table, file_hash_hex(args.table));
    manifest.config_json = json{{"table", args.table}}.dump();
  } else if (!args.records.empty()) {
    table = error_table_from_records(read_records(args.records));
    for (const auto& r : args.records) manifest.inputs.emplace_back(r, file_hash_hex(r));
    manifest.config_json = json{{"records", args.records}}.dump();
  } else {
    throw Error("profile needs --table or --records");
  }
  ProfileCurves curves = dolan_more(table);

  fs::create_directories(args.out);
  std::string csv = "solver,tau,rho\n";
  std::vector<Series> series;
  for (const auto& curve : curves.curves) {
    Series s;
    s.label = curve.solver;
    for (std::size_t i = 0; i < curves.tau.size(); ++i) {
      csv += curve.solver + "," + csv_num(curves.tau[i]) + "," + csv_num(curve.rho[i]) + "\n";
      s.x.push_back(curves.tau[i]);
      s.y.push_back(curve.rho[i]);
    }
    series.push_back(std::move(s));
  }
  write_text(fs::path(args.out) / "profiles.csv", csv);
  ChartOptions opts;
  opts.title = "Performance profiles (final error rate)";
  opts.x_label = "tau";
  opts.y_label = "fraction of problems";
  opts.step = true;
  write_text(fs::path(args.out) / "dolan_more.svg", render_line_chart(series, opts));

  manifest.outputs = {"profiles.csv", "dolan_more.svg"};
  write_manifest(args.out, manifest);
  std::cout << "profiles over " << table.problems.size() << " problems, "
            << table.solvers.size() << " solvers -> " << args.out << "\n";
  return 0;
}

struct ReportArgs {
  std::vector<std::string> records;
  std::string bench;  // bench run directory or bench_times.csv
  std::string out;
};

int run_report(const ReportArgs& args) {
  ReportInputs inputs;
  inputs.records = read_records(args.records);

  ManifestData manifest;
  manifest.command = "report";
  for (const auto& r : args.records) manifest.inputs.emplace_back(r, file_hash_hex(r));
  manifest.config_json = json{{"records", args.records}, {"bench", args.bench}}.dump();

  if (!args.bench.empty()) {
    fs::path times = fs::is_directory(args.bench)
                         ? fs::path(args.bench) / "bench_times.csv"
                         : fs::path(args.bench);
    std::ifstream in(times);
    if (!in) throw IoError("cannot open bench times: " + times.string());
    manifest.inputs.emplace_back(times.string(), file_hash_hex(times));
    BenchTable table;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream row(line);
      std::string strategy, batch, mean, std_s;
      std::getline(row, strategy, ',');
      std::getline(row, batch, ',');
      std::getline(row, mean, ',');
      std::getline(row, std_s, ',');
      BenchRow r;
      r.strategy = strategy;
      r.batch = std::stoi(batch);
      r.mean_s = std::stod(mean);
      r.std_s = std::stod(std_s);
      table.rows.push_back(r);
    }
    inputs.bench = table;
  }

  // Profiles need strictly positive final error rates; a run that reaches
  // perfect accuracy has no performance ratio, so the report then ships
  // without profile curves.
  try {
    inputs.profiles = dolan_more(error_table_from_records(inputs.records));
  } catch (const NonPositiveErrorValue&) {
    std::cout << "note: zero final error rate, skipping profile curves\n";
  }

  std::vector<std::string> files = emit_report(inputs, args.out);
  manifest.outputs = files;
  if (inputs.bench) manifest.timing_artifacts.push_back("runtime_bars.svg");
  write_manifest(args.out, manifest);
  std::cout << "report with " << files.size() << " files -> " << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch acquisition toolkit for Bayesian active learning"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic posterior tensor");
  synth_cmd->add_option("--n", synth.n, "Pool size");
  synth_cmd->add_option("--k", synth.k, "Posterior samples / ensemble members");
  synth_cmd->add_option("--c", synth.c, "Classes");
  synth_cmd->add_option("--seed", synth.seed, "Seed");
  synth_cmd->add_option("--out", synth.out, "Output tensor file")->required();

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Pointwise acquisition scores");
  score_cmd->add_option("--tensor", score.tensor, "Posterior tensor file")->required();
  score_cmd->add_option("--strategy", score.strategy, "lc|entropy|bald");
  score_cmd->add_flag("--mean", score.emit_mean, "Also export the predictive mean CSV");
  score_cmd->add_option("--out", score.out, "Run directory")->required();

  SelectArgs select;
  auto* select_cmd = app.add_subcommand("select", "Acquire a batch from a tensor");
  select_cmd->add_option("--tensor", select.tensor, "Posterior tensor file")->required();
  select_cmd
      ->add_option("--strategy", select.strategy,
                   "random|topk-entropy|topk-lc|bald|pbald|batchbald|lbb|plbb")
      ->required();
  select_cmd->add_option("--batch", select.batch, "Batch size")->required();
  select_cmd->add_option("--alpha", select.alpha, "Power-sampling exponent");
  select_cmd->add_option("--seed", select.seed, "Seed for stochastic strategies");
  select_cmd->add_option("--m", select.mc_samples, "MC configuration samples");
  select_cmd->add_option("--cap", select.cap, "Exact enumeration cap");
  select_cmd->add_flag("--full-matrix", select.full_matrix,
                       "Precompute the full pairwise MI matrix (lbb/plbb)");
  select_cmd->add_option("--mi-matrix", select.mi_matrix,
                         "Also dump the full pairwise MI matrix to this file");
  select_cmd->add_option("--out", select.out, "Run directory or selection .json path")
      ->required();

  SimulateArgs simulate;
  std::uint64_t sim_seed = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Active-learning loop");
  simulate_cmd->add_option("--config", simulate.config, "JSON run config")->required();
  simulate_cmd->add_option("--out", simulate.out, "Run directory")->required();
  auto* sim_seed_opt = simulate_cmd->add_option("--seed", sim_seed, "Override: run one seed");

  BenchArgs bench;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Runtime benchmark of strategies");
  bench_cmd->add_option("--config", bench.config, "JSON bench config")->required();
  bench_cmd->add_option("--out", bench.out, "Run directory")->required();
  auto* bench_seed_opt = bench_cmd->add_option("--seed", bench_seed, "Override seed");

  ProfileArgs profile;
  auto* profile_cmd = app.add_subcommand("profile", "Performance profiles");
  profile_cmd->add_option("--table", profile.table, "Error table CSV (problem,solver...)");
  profile_cmd->add_option("--records", profile.records, "records.jsonl files");
  profile_cmd->add_option("--out", profile.out, "Run directory")->required();

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Emit plots and summaries");
  report_cmd->add_option("--records", report.records, "records.jsonl files")->required();
  report_cmd->add_option("--bench", report.bench, "bench run dir or bench_times.csv");
  report_cmd->add_option("--out", report.out, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*score_cmd) return run_score(score);
    if (*select_cmd) return run_select(select);
    if (*simulate_cmd) {
      if (*sim_seed_opt) simulate.seed_override = sim_seed;
      return run_simulate(simulate);
    }
    if (*bench_cmd) {
      if (*bench_seed_opt) bench.seed_override = bench_seed;
      return run_bench(bench);
    }
    if (*profile_cmd) return run_profile(profile);
    if (*report_cmd) return run_report(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
