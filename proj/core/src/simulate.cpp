#include "albatch/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>

#include "albatch/rng.hpp"

namespace albatch {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Dataset make_dataset(const DatasetSpec& spec) {
  if (spec.generator == DatasetSpec::Generator::blobs) return make_blobs(spec.blobs);
  return load_idx(spec.idx.images, spec.idx.labels, spec.idx.limit,
                  spec.idx.test_fraction);
}

std::vector<int> balanced_initial_set(const Dataset& data, int initial,
                                      std::uint64_t seed) {
  const int c = data.num_classes;
  if (initial < c || initial % c != 0) {
    throw InvalidSpecError("initial labeled size " + std::to_string(initial) +
                           " must be a positive multiple of the class count " +
                           std::to_string(c));
  }
  const int per_class = initial / c;
  std::map<int, std::vector<int>> by_class;
  for (int idx : data.pool_indices) by_class[data.labels[idx]].push_back(idx);

  std::vector<int> chosen;
  Rng rng(Rng::mix(seed, 0));
  for (int cls = 0; cls < c; ++cls) {
    auto& candidates = by_class[cls];
    if (static_cast<int>(candidates.size()) < per_class) {
      throw InvalidSpecError("class " + std::to_string(cls) + " has only " +
                             std::to_string(candidates.size()) +
                             " pool points, need " + std::to_string(per_class));
    }
    for (int i = 0; i < per_class; ++i) {
      const std::size_t j = static_cast<std::size_t>(i) +
                            rng.uniform_index(candidates.size() - static_cast<std::size_t>(i));
      std::swap(candidates[i], candidates[j]);
      chosen.push_back(candidates[i]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

RunRecord run_al_loop(const RunConfig& cfg, std::uint64_t seed) {
  Dataset data = make_dataset(cfg.dataset);
  const int pool_size = static_cast<int>(data.pool_indices.size());
  if (cfg.budget > pool_size) {
    throw InvalidSpecError("budget " + std::to_string(cfg.budget) +
                           " exceeds pool size " + std::to_string(pool_size));
  }
  if (cfg.batch < 1) throw InvalidSpecError("batch must be >= 1");
  if (cfg.budget < cfg.initial_labeled) {
    throw InvalidSpecError("budget is smaller than the initial labeled set");
  }

  RunRecord record;
  record.problem = cfg.problem;
  record.strategy = to_string(cfg.strategy.strategy);
  record.seed = seed;
  if ((cfg.budget - cfg.initial_labeled) % cfg.batch != 0) {
    record.flag = "budget_not_divisible";
  }

  std::vector<int> labeled = balanced_initial_set(data, cfg.initial_labeled, seed);
  std::vector<int> pool;
  {
    std::vector<bool> is_labeled(data.total(), false);
    for (int idx : labeled) is_labeled[idx] = true;
    for (int idx : data.pool_indices) {
      if (!is_labeled[idx]) pool.push_back(idx);
    }
  }

  int round = 0;
  for (;;) {
    ModelSpec model_spec = cfg.model;
    model_spec.seed = Rng::mix(seed, 2 * static_cast<std::uint64_t>(round) + 1);
    const auto train_start = Clock::now();
    TrainResult trained = train_model(data, labeled, model_spec);
    const double train_time = seconds_since(train_start);
    for (auto& w : trained.warnings) {
      record.warnings.push_back("round " + std::to_string(round) + ": " + w);
    }

    RoundEntry entry;
    entry.round = round;
    entry.labeled_count = static_cast<int>(labeled.size());
    entry.train_wall_time_s = train_time;
    entry.test_accuracy = trained.model.accuracy(data, data.test_indices);

    const int remaining_budget = cfg.budget - static_cast<int>(labeled.size());
    if (remaining_budget <= 0 || pool.empty()) {
      record.rounds.push_back(std::move(entry));
      break;
    }

    // Score the remaining pool and acquire the next batch. Selection
    // indices are positions in `pool`, mapped back to dataset ids.
    const auto acq_start = Clock::now();
    PosteriorTensor tensor = trained.model.posterior_predict(data, pool);
    StrategyParams params;
    params.strategy = cfg.strategy.strategy;
    params.batch = std::min(cfg.batch, remaining_budget);
    params.alpha = cfg.strategy.alpha;
    params.mc_samples = cfg.strategy.mc_samples;
    params.lbb_full_matrix = cfg.strategy.lbb_full_matrix;
    params.seed = Rng::mix(seed, 2 * static_cast<std::uint64_t>(round) + 2);
    SelectionBatch selection = run_strategy(tensor, params);
    entry.acquisition_wall_time_s = seconds_since(acq_start);

    entry.acquired_indices.reserve(selection.indices.size());
    for (int pos : selection.indices) entry.acquired_indices.push_back(pool[pos]);
    record.rounds.push_back(entry);

    std::vector<bool> remove(data.total(), false);
    for (int idx : entry.acquired_indices) {
      remove[idx] = true;
      labeled.push_back(idx);
    }
    std::erase_if(pool, [&](int idx) { return remove[idx]; });
    ++round;
  }
  return record;
}

std::vector<RunRecord> run_all_seeds(const RunConfig& cfg) {
  std::vector<RunRecord> records;
  records.reserve(cfg.seeds.size());
  for (std::uint64_t seed : cfg.seeds) records.push_back(run_al_loop(cfg, seed));
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  if (records.empty()) return rows;
  const std::size_t rounds = records.front().rounds.size();
  for (const auto& r : records) {
    if (r.rounds.size() != rounds) {
      throw Error("records disagree on round count; summarize per configuration");
    }
  }
  for (std::size_t t = 0; t < rounds; ++t) {
    SummaryRow row;
    row.round = static_cast<int>(t);
    row.labeled = records.front().rounds[t].labeled_count;
    double mean = 0.0;
    for (const auto& r : records) mean += r.rounds[t].test_accuracy;
    mean /= static_cast<double>(records.size());
    double var = 0.0;
    for (const auto& r : records) {
      const double d = r.rounds[t].test_accuracy - mean;
      var += d * d;
    }
    row.accuracy_mean = mean;
    row.accuracy_std = records.size() > 1
                           ? std::sqrt(var / static_cast<double>(records.size() - 1))
                           : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace albatch
