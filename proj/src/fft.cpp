#include "fracsim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "fracsim/par.hpp"

namespace fracsim {

namespace {

std::mutex g_plan_mutex;

struct GridKey {
  int d;
  int n;
  auto operator<=>(const GridKey&) const = default;
};

std::map<GridKey, std::unique_ptr<Fft>>& plan_cache() {
  static std::map<GridKey, std::unique_ptr<Fft>> cache;
  return cache;
}

}  // namespace

Fft::Fft(const GridSpec& g) : grid_(g) {
  g.validate();
  int dims[3] = {g.n, g.n, g.n};
  const std::size_t nreal = g.size();
  const std::size_t nspec = Spectrum::spectrum_size(g);
  // Dummy buffers for planning; execution uses the new-array interface.
  // FFTW_UNALIGNED keeps plans valid for ordinary vector storage.
  std::vector<double> re(nreal);
  std::vector<fftw_complex> sp(nspec);
  plan_fwd_ = fftw_plan_dft_r2c(g.d, dims, re.data(), sp.data(),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_inv_ = fftw_plan_dft_c2r(g.d, dims, sp.data(), re.data(),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft::~Fft() {
  std::lock_guard lock(g_plan_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

const Fft& Fft::plan_for(const GridSpec& g) {
  std::lock_guard lock(g_plan_mutex);
  auto& cache = plan_cache();
  GridKey key{g.d, g.n};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::unique_ptr<Fft>(new Fft(g))).first;
  return *it->second;
}

void Fft::forward(const Field& f, Spectrum& out) const {
  out.grid = f.grid;
  out.c.resize(Spectrum::spectrum_size(f.grid));
  // fftw_execute_dft_r2c does not modify the input for out-of-place plans,
  // but its signature is non-const.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_),
                       const_cast<double*>(f.data()),
                       reinterpret_cast<fftw_complex*>(out.c.data()));
  const double inv = 1.0 / static_cast<double>(f.grid.size());
  auto* c = out.c.data();
  par::for_each(static_cast<std::ptrdiff_t>(out.c.size()),
                [c, inv](std::ptrdiff_t i) { c[i] *= inv; });
}

void Fft::inverse(const Spectrum& s, Field& out) const {
  out.grid = s.grid;
  out.v.resize(s.grid.size());
  // Multi-dimensional c2r transforms destroy their input; work on a copy.
  std::vector<std::complex<double>> scratch(s.c);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_inv_),
                       reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
}

}  // namespace fracsim
