#pragma once

namespace boxkernel::detail {

// Neumaier's variant of Kahan summation; safe when an addend exceeds the running sum.
template <class Real>
class CompensatedSum {
 public:
  void add(Real x) noexcept {
    const Real t = sum_ + x;
    if (abs_of(sum_) >= abs_of(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const noexcept { return sum_ + carry_; }

 private:
  static Real abs_of(Real x) noexcept { return x < Real(0) ? -x : x; }
  Real sum_ = Real(0);
  Real carry_ = Real(0);
};

}  // namespace boxkernel::detail
