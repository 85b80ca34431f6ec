#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "gevrey/lattice.hpp"

namespace gevrey {

// Classic Taylor-Green vortex (sin x cos y cos z, -cos x sin y cos z, 0),
// scaled by amplitude. Exactly divergence-free mode by mode.
struct TaylorGreenIC {
  double amplitude = 1.0;
};

// Arnold-Beltrami-Childress flow (a sin z + c cos y, b sin x + a cos z,
// c sin y + b cos x), scaled by amplitude. A curl eigenfield with eigenvalue
// one, so it is an exact steady state of the projected Euler dynamics.
struct AbcIC {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double amplitude = 1.0;
};

// Random-phase field with |v(n)| = e^{-sigma0 |n|} |n|^{-q0} per component on
// canonical modes, mirrored to the conjugate half, then projected
// divergence-free and scaled by amplitude. The seed fully determines the
// field; equal seeds give bitwise-equal coefficients.
struct GevreyRandomIC {
  double sigma0 = 0.5;
  double q0 = 0.0;
  std::uint64_t seed = 0;
  double amplitude = 1.0;
};

// Coefficients loaded from a JSON field file (see load_field in io.hpp),
// scaled by amplitude. The loader restores conjugate symmetry; it does not
// project, so a non-solenoidal file is rejected later when the equation
// requires a divergence-free state.
struct FromFileIC {
  std::string path;
  double amplitude = 1.0;
};

using ICSpec = std::variant<TaylorGreenIC, AbcIC, GevreyRandomIC, FromFileIC>;

SpectralField make_ic(const ICSpec& spec, std::shared_ptr<const Lattice> lattice);

}  // namespace gevrey
