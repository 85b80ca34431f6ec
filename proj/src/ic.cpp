#include "gevrey/ic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <variant>

#include "gevrey/errors.hpp"
#include "gevrey/io.hpp"

namespace gevrey {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// 53-bit mantissa draw in [0, 1). Pinned here rather than taken from
// uniform_real_distribution so equal seeds give bitwise-equal fields on any
// standard library.
double next_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

SpectralField taylor_green(const TaylorGreenIC& tg, std::shared_ptr<const Lattice> lattice) {
  SpectralField f(std::move(lattice));
  const Lattice& lat = f.lattice();
  for (int n1 : {-1, 1}) {
    for (int n2 : {-1, 1}) {
      for (int n3 : {-1, 1}) {
        const std::size_t i = lat.index_of({n1, n2, n3});
        // sin x cos y cos z and -cos x sin y cos z pick up one factor 1/(2i)
        // and two factors 1/2; n1^2 = n2^2 = 1 makes each mode transverse.
        f.coeff(i, 0) = Complex(0.0, -tg.amplitude * n1 / 8.0);
        f.coeff(i, 1) = Complex(0.0, tg.amplitude * n2 / 8.0);
      }
    }
  }
  f.set_solenoidal_tag(true);
  return f;
}

SpectralField abc_flow(const AbcIC& abc, std::shared_ptr<const Lattice> lattice) {
  SpectralField f(std::move(lattice));
  const Lattice& lat = f.lattice();
  const double a = abc.amplitude * abc.a;
  const double b = abc.amplitude * abc.b;
  const double c = abc.amplitude * abc.c;
  for (int sign : {-1, 1}) {
    const double half = 0.5;
    const double odd = sign * 0.5;  // sin picks up -i/2 at +n, +i/2 at -n
    // u = a sin z + c cos y
    f.coeff(lat.index_of({0, 0, sign}), 0) = Complex(0.0, -odd * a);
    f.coeff(lat.index_of({0, sign, 0}), 0) = Complex(half * c, 0.0);
    // v = b sin x + a cos z
    f.coeff(lat.index_of({sign, 0, 0}), 1) = Complex(0.0, -odd * b);
    f.coeff(lat.index_of({0, 0, sign}), 1) = Complex(half * a, 0.0);
    // w = c sin y + b cos x
    f.coeff(lat.index_of({0, sign, 0}), 2) = Complex(0.0, -odd * c);
    f.coeff(lat.index_of({sign, 0, 0}), 2) = Complex(half * b, 0.0);
  }
  f.set_solenoidal_tag(true);
  return f;
}

SpectralField gevrey_random(const GevreyRandomIC& gr, std::shared_ptr<const Lattice> lattice) {
  if (gr.sigma0 <= 0.0) throw config_error("ic.sigma0 must be > 0");
  SpectralField f(std::move(lattice));
  const Lattice& lat = f.lattice();
  std::mt19937_64 engine(gr.seed);
  // Canonical modes in lattice order, three phase draws each; the conjugate
  // half is mirrored, never drawn, so the stream length is fixed by the
  // truncation alone.
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!lat.is_canonical(i)) continue;
    const double rn = lat.mode_abs(i);
    const double mag = std::exp(-gr.sigma0 * rn) * std::pow(rn, -gr.q0);
    const std::size_t j = lat.conjugate_index(i);
    for (int c = 0; c < 3; ++c) {
      const double phase = 2.0 * std::numbers::pi * next_uniform(engine);
      const Complex z(mag * std::cos(phase), mag * std::sin(phase));
      f.coeff(i, c) = z;
      f.coeff(j, c) = std::conj(z);
    }
  }
  f = project_solenoidal(f);
  f.scale(gr.amplitude);
  return f;
}

SpectralField from_file(const FromFileIC& ff, std::shared_ptr<const Lattice> lattice) {
  SpectralField loaded = load_field(ff.path);
  if (loaded.lattice().truncation() != lattice->truncation()) {
    throw config_error("field file truncation " +
                       std::to_string(loaded.lattice().truncation()) +
                       " does not match configured truncation " +
                       std::to_string(lattice->truncation()));
  }
  loaded.scale(ff.amplitude);
  return loaded;
}

}  // namespace

SpectralField make_ic(const ICSpec& spec, std::shared_ptr<const Lattice> lattice) {
  return std::visit(
      overloaded{
          [&](const TaylorGreenIC& tg) { return taylor_green(tg, std::move(lattice)); },
          [&](const AbcIC& abc) { return abc_flow(abc, std::move(lattice)); },
          [&](const GevreyRandomIC& gr) { return gevrey_random(gr, std::move(lattice)); },
          [&](const FromFileIC& ff) { return from_file(ff, std::move(lattice)); },
      },
      spec);
}

}  // namespace gevrey
