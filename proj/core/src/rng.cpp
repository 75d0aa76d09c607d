#include "albatch/rng.hpp"

#include <cmath>
#include <numbers>

namespace albatch {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

std::size_t Rng::categorical(std::span<const double> weights, double total) {
  double u = uniform() * total;
  double acc = 0.0;
  std::size_t last = weights.size() - 1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc && weights[i] > 0.0) return i;
  }
  // Rounding pushed u past the accumulated total: return the last
  // positive-weight index.
  for (std::size_t i = last + 1; i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return last;
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace albatch
