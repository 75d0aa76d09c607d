#include "albatch/dataset.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "albatch/rng.hpp"

namespace albatch {

namespace {

void place_center(const BlobSpec& spec, int cls, std::vector<double>& center) {
  center.assign(spec.dims, 0.0);
  if (spec.dims == 1) {
    center[0] = spec.classes == 1
                    ? 0.0
                    : spec.center_radius * (2.0 * cls / (spec.classes - 1) - 1.0);
    return;
  }
  const double angle = 2.0 * std::numbers::pi * cls / spec.classes;
  center[0] = spec.center_radius * std::cos(angle);
  center[1] = spec.center_radius * std::sin(angle);
}

}  // namespace

Dataset make_blobs(const BlobSpec& spec) {
  if (spec.classes < 2 || spec.dims < 1 || spec.per_class < 1 || spec.repeat < 1 ||
      spec.noise < 0.0 || spec.test_per_class < 0) {
    throw InvalidSpecError("invalid blob spec");
  }
  Dataset data;
  data.dim = spec.dims;
  data.num_classes = spec.classes;

  Rng pool_rng(Rng::mix(spec.seed, 1));
  Rng dup_rng(Rng::mix(spec.seed, 2));
  Rng test_rng(Rng::mix(spec.seed, 3));

  // Base pool points, class by class.
  const int base_count = spec.classes * spec.per_class;
  std::vector<double> base(static_cast<std::size_t>(base_count) * spec.dims);
  std::vector<int> base_labels(base_count);
  std::vector<double> center;
  int row = 0;
  for (int cls = 0; cls < spec.classes; ++cls) {
    place_center(spec, cls, center);
    for (int p = 0; p < spec.per_class; ++p, ++row) {
      double* out = base.data() + static_cast<std::size_t>(row) * spec.dims;
      for (int d = 0; d < spec.dims; ++d) {
        out[d] = center[d] + spec.noise * pool_rng.normal();
      }
      base_labels[row] = cls;
    }
  }

  // Duplication noise scale: a fraction of the pooled feature std.
  double dup_sigma = 0.0;
  if (spec.repeat > 1) {
    double mean = 0.0;
    for (double v : base) mean += v;
    mean /= static_cast<double>(base.size());
    double var = 0.0;
    for (double v : base) var += (v - mean) * (v - mean);
    var /= static_cast<double>(base.size());
    dup_sigma = spec.repeat_noise_rel * std::sqrt(var);
  }

  // Pool: R copies per base point; copy 0 is the base itself.
  for (int bidx = 0; bidx < base_count; ++bidx) {
    const double* src = base.data() + static_cast<std::size_t>(bidx) * spec.dims;
    for (int r = 0; r < spec.repeat; ++r) {
      const int idx = data.total();
      for (int d = 0; d < spec.dims; ++d) {
        double v = src[d];
        if (r > 0) v += dup_sigma * dup_rng.normal();
        data.features.push_back(v);
      }
      data.labels.push_back(base_labels[bidx]);
      data.pool_indices.push_back(idx);
      if (spec.repeat > 1) data.duplicate_group.push_back(bidx);
    }
  }

  // Fresh test points, never repeated.
  for (int cls = 0; cls < spec.classes; ++cls) {
    place_center(spec, cls, center);
    for (int p = 0; p < spec.test_per_class; ++p) {
      const int idx = data.total();
      for (int d = 0; d < spec.dims; ++d) {
        data.features.push_back(center[d] + spec.noise * test_rng.normal());
      }
      data.labels.push_back(cls);
      data.test_indices.push_back(idx);
      if (spec.repeat > 1) data.duplicate_group.push_back(-1);
    }
  }
  return data;
}

int duplicate_group_pairs(const Dataset& data, std::span<const int> batch) {
  if (data.duplicate_group.empty()) return 0;
  int pairs = 0;
  for (std::size_t a = 0; a < batch.size(); ++a) {
    const int ga = data.duplicate_group[batch[a]];
    if (ga < 0) continue;
    for (std::size_t b = a + 1; b < batch.size(); ++b) {
      if (data.duplicate_group[batch[b]] == ga) ++pairs;
    }
  }
  return pairs;
}

}  // namespace albatch
