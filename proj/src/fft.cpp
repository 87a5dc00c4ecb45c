#include "mwns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mwns::fft {
namespace {

struct PlanCache {
  std::mutex mutex;  // FFTW planning is not thread-safe
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::span<const int> dims, int sign) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(std::vector<int>(dims.begin(), dims.end()), sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                              [](std::size_t a, int d) { return a * d; });
    cvec scratch(total);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), p, p, sign, FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
    plans.emplace(std::move(key), plan);
    return plan;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(cvec& data, std::span<const int> dims, int sign) {
  fftw_plan plan = cache().get(dims, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void forward(cvec& data, std::span<const int> dims) { run(data, dims, FFTW_FORWARD); }
void backward(cvec& data, std::span<const int> dims) { run(data, dims, FFTW_BACKWARD); }

}  // namespace mwns::fft
