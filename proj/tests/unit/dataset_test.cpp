#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>

#include "albatch/dataset.hpp"
#include "doctest.h"

using namespace albatch;

namespace {

void put_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

std::filesystem::path write_temp(const std::string& name, const std::string& bytes) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
  return path;
}

// A tiny IDX pair: `count` images of rows x cols incrementing pixels, labels
// cycling 0..4. Files get unique names per (count, bad_label_at).
std::pair<std::filesystem::path, std::filesystem::path> tiny_idx(int count, int rows,
                                                                 int cols,
                                                                 int bad_label_at = -1) {
  std::string images;
  put_be32(images, 0x00000803u);
  put_be32(images, static_cast<std::uint32_t>(count));
  put_be32(images, static_cast<std::uint32_t>(rows));
  put_be32(images, static_cast<std::uint32_t>(cols));
  for (int i = 0; i < count * rows * cols; ++i) {
    images.push_back(static_cast<char>(i % 256));
  }
  std::string labels;
  put_be32(labels, 0x00000801u);
  put_be32(labels, static_cast<std::uint32_t>(count));
  for (int i = 0; i < count; ++i) {
    labels.push_back(static_cast<char>(i == bad_label_at ? 12 : i % 5));
  }
  const std::string tag = std::to_string(count) + "_" + std::to_string(bad_label_at);
  return {write_temp("albatch_idx_images_" + tag + ".bin", images),
          write_temp("albatch_idx_labels_" + tag + ".bin", labels)};
}

}  // namespace

TEST_CASE("blobs without repetition") {
  BlobSpec spec;
  spec.classes = 2;
  spec.per_class = 100;
  spec.repeat = 1;
  spec.test_per_class = 50;
  spec.seed = 3;
  Dataset d = make_blobs(spec);
  CHECK(d.pool_indices.size() == 200);
  CHECK(d.test_indices.size() == 100);
  CHECK(d.duplicate_group.empty());
  CHECK(d.total() == 300);
}

TEST_CASE("repeated blobs form groups of the repeat factor") {
  BlobSpec spec;
  spec.classes = 2;
  spec.per_class = 100;
  spec.repeat = 4;
  spec.test_per_class = 10;
  spec.seed = 3;
  Dataset d = make_blobs(spec);
  CHECK(d.pool_indices.size() == 800);

  std::map<int, int> group_sizes;
  for (int idx : d.pool_indices) {
    REQUIRE(d.duplicate_group[idx] >= 0);
    ++group_sizes[d.duplicate_group[idx]];
  }
  CHECK(group_sizes.size() == 200);
  for (const auto& [group, size] : group_sizes) CHECK(size == 4);
  for (int idx : d.test_indices) CHECK(d.duplicate_group[idx] == -1);
}

TEST_CASE("blob generation is deterministic per seed") {
  BlobSpec spec;
  spec.seed = 77;
  Dataset a = make_blobs(spec);
  Dataset b = make_blobs(spec);
  CHECK(a.features == b.features);
  spec.seed = 78;
  CHECK(make_blobs(spec).features != a.features);
}

TEST_CASE("blob labels split by class") {
  BlobSpec spec;
  spec.classes = 3;
  spec.per_class = 10;
  spec.test_per_class = 5;
  Dataset d = make_blobs(spec);
  std::map<int, int> pool_counts;
  for (int idx : d.pool_indices) ++pool_counts[d.labels[idx]];
  for (int cls = 0; cls < 3; ++cls) CHECK(pool_counts[cls] == 10);
}

TEST_CASE("invalid blob specs are rejected") {
  BlobSpec spec;
  spec.classes = 1;
  CHECK_THROWS_AS(make_blobs(spec), InvalidSpecError);
  spec = BlobSpec{};
  spec.repeat = 0;
  CHECK_THROWS_AS(make_blobs(spec), InvalidSpecError);
}

TEST_CASE("idx loader reads the format") {
  auto [images, labels] = tiny_idx(10, 2, 2);
  Dataset d = load_idx(images, labels);
  CHECK(d.total() == 10);
  CHECK(d.dim == 4);
  CHECK(d.num_classes == 10);
  CHECK(d.pool_indices.size() == 10);
  CHECK(d.labels[3] == 3);
  CHECK(d.point(0)[1] == doctest::Approx(1.0 / 255.0));
  for (double v : d.features) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("idx limit truncates in file order") {
  auto [images, labels] = tiny_idx(10, 2, 2);
  Dataset d = load_idx(images, labels, 5);
  CHECK(d.total() == 5);
  CHECK(d.labels == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("idx test fraction carves the tail") {
  auto [images, labels] = tiny_idx(10, 2, 2);
  Dataset d = load_idx(images, labels, -1, 0.2);
  CHECK(d.pool_indices.size() == 8);
  CHECK(d.test_indices == std::vector<int>{8, 9});
}

TEST_CASE("idx bad magic") {
  auto [images, labels] = tiny_idx(4, 2, 2);
  // Labels file presented as the images file: wrong magic.
  CHECK_THROWS_AS(load_idx(labels, labels), BadMagicError);
}

TEST_CASE("idx count mismatch") {
  auto [images, labels_10] = tiny_idx(10, 2, 2);
  auto [images_4, labels_4] = tiny_idx(4, 2, 2);
  CHECK_THROWS_AS(load_idx(images, labels_4), DimensionMismatchError);
}

TEST_CASE("idx label out of range") {
  auto [images, labels] = tiny_idx(10, 2, 2, 6);
  CHECK_THROWS_AS(load_idx(images, labels), LabelOutOfRangeError);
}

TEST_CASE("duplicate group pair counting") {
  BlobSpec spec;
  spec.classes = 2;
  spec.per_class = 5;
  spec.repeat = 3;
  spec.test_per_class = 2;
  Dataset d = make_blobs(spec);
  // Indices 0,1,2 are copies of base 0; 3,4,5 of base 1.
  const int batch_a[4] = {0, 1, 2, 3};
  CHECK(duplicate_group_pairs(d, batch_a) == 3);
  const int batch_b[2] = {0, 3};
  CHECK(duplicate_group_pairs(d, batch_b) == 0);

  BlobSpec flat = spec;
  flat.repeat = 1;
  Dataset no_groups = make_blobs(flat);
  const int batch_c[3] = {0, 1, 2};
  CHECK(duplicate_group_pairs(no_groups, batch_c) == 0);
}
