#include "robreg/rng.hpp"

#include <cmath>

namespace robreg {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline void philox_round(std::array<std::uint32_t, 4>& x, std::uint32_t k0,
                         std::uint32_t k1) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kPhiloxM0, x[0], hi0, lo0);
  mulhilo(kPhiloxM1, x[2], hi1, lo1);
  x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        std::uint64_t counter_hi,
                                        std::uint64_t counter_lo) {
  std::array<std::uint32_t, 4> x = {
      static_cast<std::uint32_t>(counter_lo),
      static_cast<std::uint32_t>(counter_lo >> 32),
      static_cast<std::uint32_t>(counter_hi),
      static_cast<std::uint32_t>(counter_hi >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k0 += kPhiloxW0;
      k1 += kPhiloxW1;
    }
    philox_round(x, k0, k1);
  }
  return x;
}

std::uint32_t RngStream::next_u32() {
  if (buf_pos_ >= 4) {
    buf_ = philox4x32(seed_, stream_, counter_++);
    buf_pos_ = 0;
  }
  return buf_[buf_pos_++];
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double RngStream::uniform() {
  return next_u32() * 0x1p-32;
}

double RngStream::uniform_pos() {
  return (static_cast<double>(next_u32()) + 1.0) * 0x1p-32;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1 = uniform_pos();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_normal_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double RngStream::gamma(double shape) {
  // Marsaglia-Tsang squeeze; valid for shape >= 1.
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform_pos();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::student_t(double df) {
  double z = normal();
  double chi2 = 2.0 * gamma(0.5 * df);  // chi-square with df degrees
  return z / std::sqrt(chi2 / df);
}

double RngStream::laplace(double scale) {
  double u = uniform() - 0.5;
  double s = (u < 0.0) ? -1.0 : 1.0;
  return -scale * s * std::log(1.0 - 2.0 * std::fabs(u));
}

double RngStream::pareto_symmetric(double tail, double xm) {
  double u = uniform_pos();
  double mag = xm * std::pow(u, -1.0 / tail);
  return (next_u32() & 1u) ? mag : -mag;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto words = philox4x32(seed, a, b);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace robreg
