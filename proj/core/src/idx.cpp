// IDX (MNIST-format) loader: big-endian magic + dimension words, then a
// ubyte payload. Images use magic 0x00000803 (items x rows x cols), labels
// 0x00000801 (items).
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "albatch/dataset.hpp"

namespace albatch {

namespace {

constexpr int kIdxClasses = 10;

std::uint32_t read_be32(std::istream& in, const char* what) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (in.gcount() != 4) throw BadMagicError(std::string("truncated IDX header: ") + what);
  return (std::uint32_t(bytes[0]) << 24) | (std::uint32_t(bytes[1]) << 16) |
         (std::uint32_t(bytes[2]) << 8) | std::uint32_t(bytes[3]);
}

}  // namespace

Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path, int limit,
                 double test_fraction) {
  std::ifstream images(images_path, std::ios::binary);
  if (!images) throw IoError("cannot open IDX images file: " + images_path.string());
  std::ifstream labels(labels_path, std::ios::binary);
  if (!labels) throw IoError("cannot open IDX labels file: " + labels_path.string());

  const std::uint32_t image_magic = read_be32(images, "images magic");
  if (image_magic != 0x00000803u) {
    throw BadMagicError("images magic 0x" + std::to_string(image_magic) +
                        " is not an IDX3 ubyte file");
  }
  const std::uint32_t label_magic = read_be32(labels, "labels magic");
  if (label_magic != 0x00000801u) {
    throw BadMagicError("labels magic is not an IDX1 ubyte file");
  }

  const std::uint32_t image_count = read_be32(images, "image count");
  const std::uint32_t rows = read_be32(images, "rows");
  const std::uint32_t cols = read_be32(images, "cols");
  const std::uint32_t label_count = read_be32(labels, "label count");
  if (image_count != label_count) {
    throw DimensionMismatchError("images declare " + std::to_string(image_count) +
                                 " items but labels declare " + std::to_string(label_count));
  }

  int count = static_cast<int>(image_count);
  if (limit >= 0 && limit < count) count = limit;
  const int dim = static_cast<int>(rows * cols);

  Dataset data;
  data.dim = dim;
  data.num_classes = kIdxClasses;
  data.features.resize(static_cast<std::size_t>(count) * dim);
  data.labels.resize(count);

  std::vector<unsigned char> pixel_buf(dim);
  for (int i = 0; i < count; ++i) {
    images.read(reinterpret_cast<char*>(pixel_buf.data()), dim);
    if (images.gcount() != dim) {
      throw DimensionMismatchError("images payload ends before item " + std::to_string(i));
    }
    double* out = data.features.data() + static_cast<std::size_t>(i) * dim;
    for (int d = 0; d < dim; ++d) out[d] = pixel_buf[d] / 255.0;
    char raw_label;
    labels.read(&raw_label, 1);
    if (labels.gcount() != 1) {
      throw DimensionMismatchError("labels payload ends before item " + std::to_string(i));
    }
    const int label = static_cast<unsigned char>(raw_label);
    if (label >= kIdxClasses) {
      throw LabelOutOfRangeError("label " + std::to_string(label) + " at item " +
                                 std::to_string(i) + " outside [0," +
                                 std::to_string(kIdxClasses) + ")");
    }
    data.labels[i] = label;
  }

  int test_count = 0;
  if (test_fraction > 0.0) {
    test_count = static_cast<int>(count * test_fraction);
  }
  const int pool_count = count - test_count;
  for (int i = 0; i < pool_count; ++i) data.pool_indices.push_back(i);
  for (int i = pool_count; i < count; ++i) data.test_indices.push_back(i);
  return data;
}

}  // namespace albatch
