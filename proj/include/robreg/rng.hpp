#pragma once

#include <array>
#include <cstdint>

namespace robreg {

// Philox 4x32-10 counter-based generator. A draw is a pure function of
// (seed, stream, counter), so independent sub-streams (one per sample,
// per replicate, ...) produce identical output regardless of evaluation
// order or thread count.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        std::uint64_t counter_hi,
                                        std::uint64_t counter_lo);

// One sub-stream of the generator: sequential draws keyed by
// (seed, stream). Cheap to construct; holds a 4-word buffer.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  double uniform();          // [0, 1)
  double uniform_pos();      // (0, 1]
  double normal();           // standard normal (Box-Muller)
  double gamma(double shape);  // shape >= 1, unit scale (Marsaglia-Tsang)
  double student_t(double df);
  double laplace(double scale);
  double pareto_symmetric(double tail, double xm);  // sign * xm * U^{-1/tail}

  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;  // empty
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Derives a child seed from (seed, a, b); used to assign deterministic
// per-replicate seeds in benchmark grids.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace robreg
