#pragma once

// Seeded generators for property suites and tests. Matrices are built with
// prescribed spectra (eigenvalues conjugated by Haar-random unitaries) so a
// suite can target tight, generic, ill-conditioned or rank-deficient regimes.

#include <cstdint>
#include <random>

#include "rdual/frames.hpp"

namespace rdual {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

/// Independent stream seed for trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

enum class SpectrumRegime { Tight, Generic, IllConditioned, RankDeficient };

OperatorMatrix random_gaussian(Index rows, Index cols, Rng& rng);
Vector random_vector(Index n, Rng& rng);
OperatorMatrix random_unitary(Index n, Rng& rng);
OperatorMatrix random_hermitian(Index n, Rng& rng);

/// Ascending nonnegative spectrum of length n in the given regime. Rank
/// deficient spectra keep at least one nonzero value.
Eigen::VectorXd random_spectrum(Index n, SpectrumRegime regime, Rng& rng);

/// U diag(s) W* for random unitaries U, W.
OperatorMatrix matrix_with_singular_values(const Eigen::VectorXd& s, Rng& rng);

/// N vectors in C^N whose frame operator has exactly the given spectrum.
VectorSequence sequence_with_spectrum(const Eigen::VectorXd& frame_spectrum, Rng& rng);

VectorSequence random_orthonormal_basis(Index n, Rng& rng);

}  // namespace rdual
