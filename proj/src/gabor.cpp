#include "rdual/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rdual {

void validate_lattice(const GaborParams& p) {
  const auto fail = [](const std::string& why) { throw Error(ErrorCode::BadLattice, why); };
  if (p.length <= 0) fail("L must be positive");
  if (p.translation <= 0 || p.length % p.translation != 0)
    fail("a = " + std::to_string(p.translation) + " does not divide L = " + std::to_string(p.length));
  if (p.modulation <= 0 || p.length % p.modulation != 0)
    fail("b = " + std::to_string(p.modulation) + " does not divide L = " + std::to_string(p.length));
  if (p.window.size() != p.length) fail("window length differs from L");
  if (!p.window.allFinite()) fail("window has non-finite entries");
}

namespace {

OperatorMatrix lattice_vectors(const Vector& g, Index length, Index tstep, Index mstep) {
  const Index nt = length / tstep;
  const Index nm = length / mstep;
  OperatorMatrix out(length, nt * nm);
  const double two_pi = 2.0 * std::numbers::pi;
  for (Index n = 0; n < nt; ++n) {
    for (Index m = 0; m < nm; ++m) {
      const Index col = n * nm + m;
      for (Index l = 0; l < length; ++l) {
        const Index src = ((l - n * tstep) % length + length) % length;
        // reduce m*b*l mod L before the trig call to keep the phase exact
        const Index phase = (m * mstep * l) % length;
        const double angle = two_pi * static_cast<double>(phase) / static_cast<double>(length);
        out(l, col) = std::polar(1.0, angle) * g(src);
      }
    }
  }
  return out;
}

double relative_gap(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

}  // namespace

GaborSystem gabor_system(const GaborParams& p) {
  validate_lattice(p);
  return {p, VectorSequence(lattice_vectors(p.window, p.length, p.translation, p.modulation)), 1.0};
}

GaborSystem adjoint_system(const GaborParams& p) {
  validate_lattice(p);
  GaborParams adj{p.length, p.length / p.modulation, p.length / p.translation, p.window};
  const double scale =
      std::sqrt(static_cast<double>(p.length) / static_cast<double>(p.translation * p.modulation));
  return {adj, VectorSequence(scale * lattice_vectors(p.window, adj.length, adj.translation, adj.modulation)), scale};
}

DualityReport verify_duality(const GaborParams& p) {
  const GaborSystem sys = gabor_system(p);
  const GaborSystem adj = adjoint_system(p);
  const SpectralSummary fs = spectral_summary(sys.vectors);
  const SpectralSummary as = spectral_summary(adj.vectors);

  DualityReport r;
  r.length = p.length;
  r.translation = p.translation;
  r.modulation = p.modulation;
  r.scale = adj.scale;
  r.frame = fs.rank == p.length;
  r.frame_bounds = {r.frame ? fs.lambda_min_nonzero : 0.0, fs.lambda_max, true};
  r.adjoint_riesz = as.rank > 0 && as.rank == adj.vectors.count();
  r.adjoint_bounds = {r.adjoint_riesz ? as.lambda_min_gram : 0.0, as.lambda_max, true};
  r.max_rel_discrepancy = std::max(relative_gap(r.frame_bounds.lower, r.adjoint_bounds.lower),
                                   relative_gap(r.frame_bounds.upper, r.adjoint_bounds.upper));
  return r;
}

Vector sampled_bspline_window(Index length, double scale) {
  if (length < 4) throw Error(ErrorCode::BadLattice, "sampled window needs L >= 4");
  if (!(scale > 0.0)) throw Error(ErrorCode::BadLattice, "window scale must be positive");
  Vector g(length);
  const double spacing = 2.0 * scale / static_cast<double>(length);
  for (Index l = 0; l < length; ++l) {
    // representative of l in [-L/2, L/2)
    Index k = l;
    if (2 * k >= length) k -= length;
    const double x = static_cast<double>(k) * spacing;
    g(l) = std::max(0.0, 1.0 - std::abs(x));
  }
  return g;
}

}  // namespace rdual
