// Desk-scale datasets for the active-learning loop: synthetic Gaussian
// blobs (optionally with repeated noisy copies of every base point) and
// IDX-format image/label files.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "albatch/errors.hpp"

namespace albatch {

struct Dataset {
  int dim = 0;
  int num_classes = 0;
  std::vector<double> features;  // row-major total() x dim
  std::vector<int> labels;
  std::vector<int> pool_indices;  // train pool; disjoint from test_indices
  std::vector<int> test_indices;
  // Group id per point for repeated datasets (copies of one base point share
  // an id); empty when the dataset has no repetition.
  std::vector<int> duplicate_group;

  int total() const { return static_cast<int>(labels.size()); }
  std::span<const double> point(int idx) const {
    return {features.data() + static_cast<std::size_t>(idx) * dim,
            static_cast<std::size_t>(dim)};
  }
};

struct BlobSpec {
  int classes = 2;
  int dims = 2;
  int per_class = 100;       // base pool points per class
  double noise = 0.5;        // blob standard deviation
  int repeat = 1;            // copies per base point (4 for the repeated variant)
  double repeat_noise_rel = 0.05;  // duplication noise as a fraction of feature std
  int test_per_class = 200;
  double center_radius = 3.0;
  std::uint64_t seed = 0;
};

// Class centers are spread on a circle (line for dims == 1); deterministic
// per seed. With repeat R > 1 every base point contributes R pool entries
// sharing a duplicate group: the base itself plus R-1 jittered copies.
Dataset make_blobs(const BlobSpec& spec);

// MNIST-format IDX pair. Features are scaled to [0,1]; labels must lie in
// [0,10). `limit` truncates in file order; a positive test_fraction carves
// the tail of the (possibly truncated) data into the test split.
Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path, int limit = -1,
                 double test_fraction = 0.0);

// Number of unordered same-duplicate-group pairs inside a batch of pool
// indices; the redundancy measure used on repeated datasets.
int duplicate_group_pairs(const Dataset& data, std::span<const int> batch);

}  // namespace albatch
