#include <fftw3.h>

#include <cstring>
#include <map>
#include <vector>

#include "gevrey/lattice.hpp"

namespace gevrey {

namespace {

// Smallest grid size >= m whose prime factors are all in {2,3,5,7}; keeps FFTW
// on its fast code paths without changing the exactness argument.
int next_fast_size(int m) {
  for (int candidate = m;; ++candidate) {
    int r = candidate;
    for (int p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return candidate;
  }
}

// In-place c2c plans plus the seven grids one evaluation needs: 3 velocity
// components, 3 product accumulators, 1 derivative scratch. Plans are created
// with FFTW_ESTIMATE: planning is then deterministic, so repeated runs execute
// the identical summation order (bit-reproducibility).
struct ConvWorkspace {
  int grid = 0;
  std::size_t points = 0;
  fftw_plan backward = nullptr;
  fftw_plan forward = nullptr;
  std::array<fftw_complex*, 7> buf{};

  explicit ConvWorkspace(int m) : grid(m), points(static_cast<std::size_t>(m) * m * m) {
    for (auto& b : buf) b = fftw_alloc_complex(points);
    backward = fftw_plan_dft_3d(m, m, m, buf[0], buf[0], FFTW_BACKWARD, FFTW_ESTIMATE);
    forward = fftw_plan_dft_3d(m, m, m, buf[0], buf[0], FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ConvWorkspace(const ConvWorkspace&) = delete;
  ConvWorkspace& operator=(const ConvWorkspace&) = delete;
  ~ConvWorkspace() {
    if (backward) fftw_destroy_plan(backward);
    if (forward) fftw_destroy_plan(forward);
    for (auto& b : buf) {
      if (b) fftw_free(b);
    }
  }
};

ConvWorkspace& workspace_for(int grid) {
  thread_local std::map<int, std::unique_ptr<ConvWorkspace>> cache;
  auto& slot = cache[grid];
  if (!slot) slot = std::make_unique<ConvWorkspace>(grid);
  return *slot;
}

inline std::size_t grid_index(const Mode& n, int m) {
  const int g1 = ((n[0] % m) + m) % m;
  const int g2 = ((n[1] % m) + m) % m;
  const int g3 = ((n[2] % m) + m) % m;
  return (static_cast<std::size_t>(g1) * m + g2) * m + g3;
}

}  // namespace

SpectralField nonlinear_term(const SpectralField& f, bool apply_projection) {
  const Lattice& lat = f.lattice();
  const int m = next_fast_size(3 * lat.truncation() + 1);
  ConvWorkspace& ws = workspace_for(m);
  const std::size_t pts = ws.points;

  fftw_complex* vel[3] = {ws.buf[0], ws.buf[1], ws.buf[2]};
  fftw_complex* acc[3] = {ws.buf[3], ws.buf[4], ws.buf[5]};
  fftw_complex* scratch = ws.buf[6];

  // Velocity components on the padded grid.
  for (int c = 0; c < 3; ++c) {
    std::memset(vel[c], 0, sizeof(fftw_complex) * pts);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const std::size_t g = grid_index(lat.mode(i), m);
      const Complex z = f.coeff(i, c);
      vel[c][g][0] = z.real();
      vel[c][g][1] = z.imag();
    }
    fftw_execute_dft(ws.backward, vel[c], vel[c]);
    std::memset(acc[c], 0, sizeof(fftw_complex) * pts);
  }

  // acc_i(x) = sum_j v_j(x) * (d v_i / d x_j)(x)
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::memset(scratch, 0, sizeof(fftw_complex) * pts);
      for (std::size_t k = 0; k < lat.size(); ++k) {
        const std::size_t g = grid_index(lat.mode(k), m);
        const Complex z = f.coeff(k, i) * Complex(0.0, static_cast<double>(lat.mode(k)[j]));
        scratch[g][0] = z.real();
        scratch[g][1] = z.imag();
      }
      fftw_execute_dft(ws.backward, scratch, scratch);
      for (std::size_t p = 0; p < pts; ++p) {
        const double ar = vel[j][p][0], ai = vel[j][p][1];
        const double br = scratch[p][0], bi = scratch[p][1];
        acc[i][p][0] += ar * br - ai * bi;
        acc[i][p][1] += ar * bi + ai * br;
      }
    }
  }

  SpectralField out(f.lattice_ptr());
  const double inv = 1.0 / static_cast<double>(pts);
  for (int c = 0; c < 3; ++c) {
    fftw_execute_dft(ws.forward, acc[c], acc[c]);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const std::size_t g = grid_index(lat.mode(i), m);
      out.coeff(i, c) = Complex(-acc[c][g][0] * inv, -acc[c][g][1] * inv);
    }
  }

  if (apply_projection) out = project_solenoidal(out);
  out = enforce_hermitian(out);
  out.set_solenoidal_tag(apply_projection);
  return out;
}

}  // namespace gevrey
