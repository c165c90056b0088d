#include <atomic>
#include <stdexcept>

#include "dbe/kernels.hpp"

namespace dbe::kernels {

namespace {

constexpr KernelSet kScalar{Isa::kScalar, &scalar::small_pair_lines, &scalar::small_line_stats,
                            &scalar::wide_pair_lines};

#ifdef DBE_HAVE_AVX2
constexpr KernelSet kAvx2{Isa::kAvx2, &avx2::small_pair_lines, &avx2::small_line_stats, &avx2::wide_pair_lines};
#endif

const KernelSet* detect() {
#ifdef DBE_HAVE_AVX2
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const KernelSet*>& current() {
  static std::atomic<const KernelSet*> set{detect()};
  return set;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#ifdef DBE_HAVE_AVX2
  return &kAvx2;
#else
  return nullptr;
#endif
}

const KernelSet& active() { return *current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::kScalar) {
    current().store(&kScalar);
    return;
  }
  const KernelSet* set = avx2_kernels();
  if (set == nullptr || !cpu_has_avx2()) throw std::runtime_error("AVX2 kernels are not available on this machine");
  current().store(set);
}

void reset_isa() { current().store(detect()); }

}  // namespace dbe::kernels
