#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "markov/types.hpp"

namespace markov {

// Smoothing exponent u > 0, or infinite for no smoothing at all.  Infinity
// is a distinguished value (not a large float): smoothing with it returns
// the input matrix unchanged, which is the standard bootstrap.
class SmoothingParam {
 public:
  explicit SmoothingParam(double u);

  static SmoothingParam infinite() noexcept;
  static SmoothingParam parse(std::string_view text);  // "inf" or a positive real

  bool is_infinite() const noexcept;
  double value() const noexcept { return u_; }
  std::string str() const;  // "0.5", "1", "2", "inf", ...

  friend bool operator==(const SmoothingParam&, const SmoothingParam&) = default;

 private:
  SmoothingParam() = default;
  double u_ = 0.0;
};

// Smoothed estimator: every entry gets +n^{-u}, rows divided by
// omega = 1 + d*n^{-u}.  Output entries are strictly positive for finite u;
// infinite u returns p_hat as-is.  n is the length of the observed chain
// that produced p_hat.
TransitionMatrix smooth(const TransitionMatrix& p_hat, std::int64_t n, SmoothingParam u);

// sqrt(n) * (estimate - truth), entrywise.  The boundedness of these values
// over growing n is the consistency-rate diagnostic.
SquareMatrix scaled_deviation(const TransitionMatrix& estimate,
                              const TransitionMatrix& truth, std::int64_t n);

}  // namespace markov
