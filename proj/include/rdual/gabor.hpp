#pragma once

// Discrete Gabor systems on C^L.
//
//   (T_a x)(l) = x((l - a) mod L),   (E_b x)(l) = exp(2 pi i b l / L) x(l)
//
// The system for (a, b) has (L/a)(L/b) vectors E_{mb} T_{na} g, ordered with
// the translation index n outer and the modulation index m inner. The adjoint
// system lives on the lattice with translation step L/b and modulation step
// L/a and carries the factor sqrt(L/(ab)), the discrete counterpart of
// 1/sqrt(ab) on L^2(R).

#include "rdual/frames.hpp"

namespace rdual {

struct GaborParams {
  Index length = 0;       // L
  Index translation = 0;  // a, divides L
  Index modulation = 0;   // b, divides L
  Vector window;          // g in C^L
};

struct GaborSystem {
  GaborParams params;          // lattice actually used
  VectorSequence vectors;
  double scale = 1.0;
  Index translations() const noexcept { return params.length / params.translation; }
  Index modulations() const noexcept { return params.length / params.modulation; }
};

/// Throws BadLattice unless a | L, b | L and the window has length L.
void validate_lattice(const GaborParams& p);

GaborSystem gabor_system(const GaborParams& p);

/// Adjoint lattice (L/b, L/a) with every vector scaled by sqrt(L/(ab)).
GaborSystem adjoint_system(const GaborParams& p);

struct DualityReport {
  Index length = 0;
  Index translation = 0;
  Index modulation = 0;
  bool frame = false;
  FrameBounds frame_bounds;  // lower = 0 when not a frame
  bool adjoint_riesz = false;
  FrameBounds adjoint_bounds;  // lower = 0 when not a Riesz sequence
  double scale = 1.0;
  double max_rel_discrepancy = 0.0;

  bool consistent(double tol) const noexcept { return frame == adjoint_riesz && max_rel_discrepancy <= tol; }
};

DualityReport verify_duality(const GaborParams& p);

/// B2 sampled on the cyclic grid x_k = k * 2 scale / L, k in [-L/2, L/2),
/// rotated so the peak sits at index 0. The grid carries L / (2 scale)
/// samples per unit length.
Vector sampled_bspline_window(Index length, double scale);

}  // namespace rdual
