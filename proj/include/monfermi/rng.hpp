// SPDX-License-Identifier: MIT
// Counter-based splittable RNG. Every trajectory owns an independent stream
// keyed by (master_seed, stream_id); the value at draw index c is a pure
// function of (key, c), so streams can be replayed or resumed from any point.
//
// Draw-order contract (consumed identically by the Gaussian engine and the
// exact Fock-space oracle, one triple per measurement event):
//   1. waiting time   next_exponential(rate)   via u in (0,1), dt = -ln(u)/rate
//   2. site           next_site(L)             via u in [0,1), floor(u*L)
//   3. outcome        next_unit()              outcome 1 iff u < p1
#pragma once

#include <cmath>
#include <cstdint>

namespace monfermi {

namespace detail {
// splitmix64 finalizer (Vigna); statistically solid for Monte Carlo use
inline std::uint64_t sm64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace detail

class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_(detail::sm64_mix(detail::sm64_mix(master_seed + detail::kGolden) ^
                                detail::sm64_mix(stream_id ^ 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t next_u64() {
        const std::uint64_t z = key_ + (++counter_) * detail::kGolden;
        return detail::sm64_mix(z);
    }

    // uniform on [0,1), 53-bit resolution
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on the open interval (0,1): safe under log
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // exponential waiting time with the given total rate; strictly positive
    double next_exponential(double rate);

    int next_site(int L) { return static_cast<int>(next_unit() * L); }

    std::uint64_t counter() const { return counter_; }
    void seek(std::uint64_t counter) { counter_ = counter; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

inline double RngStream::next_exponential(double rate) {
    return -std::log(next_unit_open()) / rate;
}

}  // namespace monfermi
