#include "specsense/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace specsense::fft {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    // FFTW_ESTIMATE leaves the scratch arrays untouched, FFTW_UNALIGNED lets
    // the plan run on std::vector storage.
    auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(std::make_pair(n, sign), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::vector<Complex> transform(std::span<const Complex> input, int sign) {
  if (input.empty()) throw InvalidInput("fft: empty input");
  const int n = static_cast<int>(input.size());
  std::vector<Complex> in(input.begin(), input.end());
  std::vector<Complex> out(input.size());
  fftw_execute_dft(cache().get(n, sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<Complex> forward(std::span<const Complex> x) { return transform(x, FFTW_FORWARD); }

std::vector<Complex> inverse(std::span<const Complex> spectrum) {
  return transform(spectrum, FFTW_BACKWARD);
}

}  // namespace specsense::fft
