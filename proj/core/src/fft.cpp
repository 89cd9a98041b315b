#include "lpmhd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace lpmhd {

namespace {

// Plans are created once per (d, N, sign) and executed through the new-array
// interface, which is thread-safe. FFTW_UNALIGNED keeps the chosen codelets
// independent of buffer alignment so results are bit-reproducible.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> dims(static_cast<std::size_t>(dim), n);
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    fftw_plan plan =
        fftw_plan_dft(dim, dims.data(), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

SpectralField to_spectral(const Field& f) {
  const auto& grid = f.grid();
  SpectralField F(grid, f.components());
  fftw_plan plan = PlanCache::instance().get(grid.dim(), grid.points_per_axis(), FFTW_FORWARD);
  std::vector<Complex> buffer(grid.size());
  for (int c = 0; c < f.components(); ++c) {
    auto in = f.component(c);
    for (std::size_t i = 0; i < in.size(); ++i) buffer[i] = Complex{in[i], 0.0};
    fftw_execute_dft(plan, as_fftw(buffer.data()), as_fftw(F.component(c).data()));
  }
  return F;
}

Field to_physical(const SpectralField& F) {
  const auto& grid = F.grid();
  Field f(grid, F.components());
  fftw_plan plan = PlanCache::instance().get(grid.dim(), grid.points_per_axis(), FFTW_BACKWARD);
  std::vector<Complex> in(grid.size());
  std::vector<Complex> out(grid.size());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (int c = 0; c < F.components(); ++c) {
    auto src = F.component(c);
    std::copy(src.begin(), src.end(), in.begin());
    fftw_execute_dft(plan, as_fftw(in.data()), as_fftw(out.data()));
    auto dst = f.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = out[i].real() * scale;
  }
  return f;
}

}  // namespace lpmhd
