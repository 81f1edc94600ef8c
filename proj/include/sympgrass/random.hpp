#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "sympgrass/numerics.hpp"

namespace sympgrass {

/// Seeded generator. Uniform doubles are built from the top 53 bits of the
/// raw mt19937_64 output rather than std::uniform_real_distribution, so the
/// stream is fully specified and portable across standard libraries.
class Rng {
 public:
  static constexpr std::string_view algorithm = "mt19937_64;seed_seq(seed_lo,seed_hi,stream);u53";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream & 0xffffffffu), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  Matrix symmetric_matrix(Eigen::Index n, double scale = 1.0) {
    return scale * symmetrize(uniform_matrix(n, n));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sympgrass
