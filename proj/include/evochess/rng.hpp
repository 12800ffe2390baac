#pragma once

// Seeded generator with portable derived distributions. The standard
// distribution classes are implementation defined, so uniform reals and
// Bernoulli draws are computed here directly from mt19937_64 output.

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace evochess {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Engine state as text, restorable with restore().
  std::string state() const {
    std::ostringstream out;
    out << engine_;
    return out.str();
  }

  void restore(const std::string& text) {
    std::istringstream in(text);
    in >> engine_;
    if (!in) throw std::invalid_argument("bad generator state");
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evochess
