#include "mwns/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace mwns::kernels {

#ifdef MWNS_HAVE_AVX2
const Table* avx2_table_impl();
#endif

const Table* avx2_table() {
#ifdef MWNS_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

Isa initial_isa() {
  const char* env = std::getenv("MWNS_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return avx2_table() != nullptr ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const Table& active() {
  if (current().load(std::memory_order_relaxed) == Isa::avx2) return *avx2_table();
  return scalar_table();
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && avx2_table() == nullptr) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace mwns::kernels
