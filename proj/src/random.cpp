#include "rdual/random.hpp"

#include <algorithm>
#include <cmath>

namespace rdual {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

OperatorMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  OperatorMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

Vector random_vector(Index n, Rng& rng) { return random_gaussian(n, 1, rng).col(0); }

OperatorMatrix random_unitary(Index n, Rng& rng) {
  const OperatorMatrix z = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<OperatorMatrix> qr(z);
  OperatorMatrix q = qr.householderQ() * OperatorMatrix::Identity(n, n);
  const OperatorMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phases of diag(R) so the distribution is Haar
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

OperatorMatrix random_hermitian(Index n, Rng& rng) {
  const OperatorMatrix z = random_gaussian(n, n, rng);
  return 0.5 * (z + z.adjoint());
}

Eigen::VectorXd random_spectrum(Index n, SpectrumRegime regime, Rng& rng) {
  Eigen::VectorXd s(n);
  switch (regime) {
    case SpectrumRegime::Tight: s.setConstant(rng.uniform(0.25, 4.0)); break;
    case SpectrumRegime::Generic:
      for (Index k = 0; k < n; ++k) s(k) = rng.uniform(0.2, 5.0);
      break;
    case SpectrumRegime::IllConditioned:
      for (Index k = 0; k < n; ++k) s(k) = std::pow(10.0, rng.uniform(-2.0, 2.0));
      break;
    case SpectrumRegime::RankDeficient: {
      for (Index k = 0; k < n; ++k) s(k) = rng.uniform(0.2, 5.0);
      const Index zeros = n > 1 ? rng.integer(1, n - 1) : 0;
      for (Index k = 0; k < zeros; ++k) s(k) = 0.0;
      break;
    }
  }
  std::sort(s.data(), s.data() + n);
  return s;
}

OperatorMatrix matrix_with_singular_values(const Eigen::VectorXd& s, Rng& rng) {
  const Index n = s.size();
  const OperatorMatrix u = random_unitary(n, rng);
  const OperatorMatrix w = random_unitary(n, rng);
  return u * s.cast<Complex>().asDiagonal() * w.adjoint();
}

VectorSequence sequence_with_spectrum(const Eigen::VectorXd& frame_spectrum, Rng& rng) {
  return VectorSequence(matrix_with_singular_values(frame_spectrum.cwiseMax(0.0).cwiseSqrt(), rng));
}

VectorSequence random_orthonormal_basis(Index n, Rng& rng) { return VectorSequence(random_unitary(n, rng)); }

}  // namespace rdual
