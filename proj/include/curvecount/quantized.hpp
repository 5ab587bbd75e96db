#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "curvecount/errors.hpp"

namespace curvecount {

// Float scalar snapped to a uniform grid of step `quantum`, so that equality
// is exact bit equality of the snapped value and therefore transitive. Used
// for analytic lifts where exact arithmetic is impossible; all identity and
// oracle tests run in exact mode only.
class Quantized {
 public:
  static constexpr double kDefaultRelativeQuantum = 9.094947017729282e-13;  // 2^-40

  Quantized() : v_(0.0), quantum_(kDefaultRelativeQuantum) {}
  Quantized(double raw, double quantum) : quantum_(quantum) {
    if (!(quantum > 0.0)) throw InputError("quantum must be positive");
    if (!std::isfinite(raw)) throw DomainError("non-finite value in float mode");
    v_ = snap(raw, quantum);
  }

  double value() const { return v_; }
  double quantum() const { return quantum_; }

  friend Quantized operator+(const Quantized& a, const Quantized& b) {
    a.check_grid(b);
    return Quantized(a.v_ + b.v_, a.quantum_);
  }
  friend Quantized operator-(const Quantized& a, const Quantized& b) {
    a.check_grid(b);
    return Quantized(a.v_ - b.v_, a.quantum_);
  }
  Quantized operator-() const { return Quantized(-v_, quantum_); }

  friend bool operator==(const Quantized& a, const Quantized& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Quantized& a, const Quantized& b) {
    return !(a == b);
  }
  friend bool operator<(const Quantized& a, const Quantized& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Quantized& a, const Quantized& b) {
    return a.v_ <= b.v_;
  }

  std::size_t hash() const {
    std::uint64_t bits;
    std::memcpy(&bits, &v_, sizeof bits);
    bits *= 0xff51afd7ed558ccdULL;
    bits ^= bits >> 33;
    return static_cast<std::size_t>(bits);
  }

  std::string str() const {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v_);
    return buf;
  }

 private:
  static double snap(double raw, double quantum) {
    const double s = quantum * std::nearbyint(raw / quantum);
    return s == 0.0 ? 0.0 : s;  // normalize -0
  }
  void check_grid(const Quantized& o) const {
    if (quantum_ != o.quantum_)
      throw InvariantError("mixed quantization grids");
  }

  double v_;
  double quantum_;
};

}  // namespace curvecount
