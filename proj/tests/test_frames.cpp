#include <doctest.h>

#include "rdual/error.hpp"
#include "rdual/random.hpp"
#include "test_support.hpp"

using namespace rdual;
using namespace rdual::test;

TEST_CASE("frame operator and Gram matrix") {
  CHECK(max_abs(frame_operator(VectorSequence::standard_basis(2)) - OperatorMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(frame_operator(seq({{1, 0}, {0, 2}})) - diag({1, 4})) == 0.0);
  CHECK(max_abs(frame_operator(seq({{1, 0}, {1, 0}})) - diag({2, 0})) == 0.0);
  CHECK(max_abs(gram_matrix(VectorSequence::standard_basis(2)) - OperatorMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(gram_matrix(seq({{1, 0}, {0, 2}})) - diag({1, 4})) == 0.0);

  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const VectorSequence f(random_gaussian(4, 1 + t % 7, rng));
    Eigen::VectorXd a = hermitian_eig(frame_operator(f)).eigenvalues;
    Eigen::VectorXd b = hermitian_eig(gram_matrix(f)).eigenvalues;
    const Index k = std::min(a.size(), b.size());
    CHECK((a.tail(k) - b.tail(k)).cwiseAbs().maxCoeff() <= 1e-10 * a.maxCoeff());
  }
}

TEST_CASE("classification of small sequences") {
  const Classification onb = classify(VectorSequence::standard_basis(3));
  CHECK(onb.sequence_class == SequenceClass::OrthonormalBasis);
  CHECK(onb.frame_bounds.lower == doctest::Approx(1.0));
  CHECK(onb.frame_bounds.upper == doctest::Approx(1.0));

  const Classification rb = classify(seq({{1, 0}, {0, 2}}));
  CHECK(rb.sequence_class == SequenceClass::RieszBasis);
  CHECK(rb.frame_bounds.lower == doctest::Approx(1.0));
  CHECK(rb.frame_bounds.upper == doctest::Approx(4.0));
  REQUIRE(rb.riesz_bounds);
  CHECK(rb.riesz_bounds->lower == doctest::Approx(1.0));

  const Classification fs = classify(seq({{1, 0}, {1, 0}}));
  CHECK(fs.sequence_class == SequenceClass::FrameSequenceProper);
  CHECK(fs.span_dim == 1);
  CHECK(fs.kernel_dim() == 1);
  CHECK(fs.frame_bounds.lower == doctest::Approx(2.0));
  CHECK(fs.frame_bounds.upper == doctest::Approx(2.0));

  const Classification rs = classify(seq({{1, 0, 0}, {0, 1, 1}}));
  CHECK(rs.sequence_class == SequenceClass::RieszSequenceProper);

  const Classification fr = classify(seq({{1, 0}, {0, 1}, {1, 1}}));
  CHECK(fr.sequence_class == SequenceClass::FrameForH);
  CHECK_FALSE(fr.independent());

  CHECK_THROWS_AS(classify(seq({{0, 0}, {0, 0}})), Error);
}

TEST_CASE("sequence construction rejects bad input") {
  CHECK_THROWS_AS(VectorSequence(OperatorMatrix(0, 0)), Error);
  OperatorMatrix nan = OperatorMatrix::Identity(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(VectorSequence{nan}, Error);
}

TEST_CASE("canonical dual and tightening") {
  CHECK(max_abs(canonical_dual(VectorSequence::standard_basis(3)).synthesis() - OperatorMatrix::Identity(3, 3)) < 1e-15);
  CHECK(max_abs(canonical_dual(seq({{1, 0}, {0, 2}})).synthesis() - diag({1, 0.5})) < 1e-15);
  CHECK(max_abs(tighten(seq({{1, 0}, {0, 2}})).synthesis() - diag({1, 1})) < 1e-15);
  CHECK(max_abs(tighten(VectorSequence::standard_basis(2)).synthesis() - diag({1, 1})) < 1e-15);

  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd spec = random_spectrum(5, SpectrumRegime::RankDeficient, rng);
    const VectorSequence f = sequence_with_spectrum(spec, rng);
    const VectorSequence d = canonical_dual(f);
    const OperatorMatrix p = range_projector(frame_operator(f));
    for (int k = 0; k < 100; ++k) {
      const Vector x = p * random_vector(5, rng);
      const Vector back = d.synthesis() * (f.synthesis().adjoint() * x);
      CHECK((back - x).norm() <= 1e-10 * std::max(1.0, x.norm()) * 1e2);
    }
    const VectorSequence g = sequence_with_spectrum(random_spectrum(5, SpectrumRegime::Generic, rng), rng);
    CHECK(max_abs(frame_operator(tighten(g)) - OperatorMatrix::Identity(5, 5)) < 1e-10);
  }
}

TEST_CASE("analysis range and synthesis kernel") {
  CHECK(analysis_range(VectorSequence::standard_basis(2)).rank() == 2);
  CHECK(synthesis_kernel(VectorSequence::standard_basis(2)).rank() == 0);
  const Subspace k = synthesis_kernel(seq({{1, 0}, {1, 0}}));
  REQUIRE(k.rank() == 1);
  Vector v(2);
  v << 1.0, -1.0;
  CHECK(k.distance(v / std::sqrt(2.0)) < 1e-14);

  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const VectorSequence f = sequence_with_spectrum(random_spectrum(6, SpectrumRegime::RankDeficient, rng), rng);
    CHECK(analysis_range(f).rank() + synthesis_kernel(f).rank() == f.count());
    CHECK(analysis_range(f).rank() == spectral_summary(f).rank);
  }
}

TEST_CASE("generated spectra are realized") {
  Rng rng(6);
  for (SpectrumRegime r : {SpectrumRegime::Tight, SpectrumRegime::Generic, SpectrumRegime::IllConditioned,
                           SpectrumRegime::RankDeficient}) {
    const Eigen::VectorXd spec = random_spectrum(7, r, rng);
    const VectorSequence f = sequence_with_spectrum(spec, rng);
    CHECK((frame_spectrum(f) - spec).cwiseAbs().maxCoeff() <= 1e-12 * spec.maxCoeff() * 10);
  }
}
