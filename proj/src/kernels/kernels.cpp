#include "curv4/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace curv4::kernels {

namespace {

// -1: no override, otherwise the Isa value.
std::atomic<int> g_override{-1};

void require_sizes(std::size_t got, std::size_t per_item, std::size_t n) {
  if (got != per_item * n) throw std::invalid_argument("kernel batch size mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "scalar";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  return std::nullopt;
}

Isa detected_isa() {
#if defined(CURV4_HAVE_AVX2)
  static const bool has_avx2 = __builtin_cpu_supports("avx2") != 0;
  if (has_avx2) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa active_isa() {
  const int o = g_override.load(std::memory_order_relaxed);
  if (o < 0) return detected_isa();
  const auto requested = static_cast<Isa>(o);
  if (requested == Isa::avx2 && detected_isa() != Isa::avx2) return Isa::scalar;
  return requested;
}

void set_isa_override(std::optional<Isa> isa) {
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

PackedOperator::PackedOperator(const Matrix6& op) {
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) m[p * 6 + q] = op(p, q);
}

void sectional_batch(const PackedOperator& op, std::span<const double> xs,
                     std::span<const double> ys, std::span<double> out, Isa isa) {
  const std::size_t n = out.size();
  require_sizes(xs.size(), 4, n);
  require_sizes(ys.size(), 4, n);
#if defined(CURV4_HAVE_AVX2)
  if (isa == Isa::avx2 && detected_isa() == Isa::avx2) {
    detail::sectional_avx2(op, xs.data(), ys.data(), out.data(), n);
    return;
  }
#endif
  (void)isa;
  detail::sectional_scalar(op, xs.data(), ys.data(), out.data(), 0, n, n);
}

void sectional_batch(const PackedOperator& op, std::span<const double> xs,
                     std::span<const double> ys, std::span<double> out) {
  sectional_batch(op, xs, ys, out, active_isa());
}

void isotropic_batch(const PackedOperator& op, std::span<const double> frames,
                     std::span<double> out, Isa isa) {
  const std::size_t n = out.size();
  require_sizes(frames.size(), 16, n);
#if defined(CURV4_HAVE_AVX2)
  if (isa == Isa::avx2 && detected_isa() == Isa::avx2) {
    detail::isotropic_avx2(op, frames.data(), out.data(), n);
    return;
  }
#endif
  (void)isa;
  detail::isotropic_scalar(op, frames.data(), out.data(), 0, n, n);
}

void isotropic_batch(const PackedOperator& op, std::span<const double> frames,
                     std::span<double> out) {
  isotropic_batch(op, frames, out, active_isa());
}

}  // namespace curv4::kernels
