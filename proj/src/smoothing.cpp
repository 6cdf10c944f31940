#include "markov/smoothing.hpp"

#include <cmath>
#include <charconv>
#include <limits>
#include <sstream>
#include <utility>

namespace markov {

SmoothingParam::SmoothingParam(double u) : u_(u) {
  if (!(u > 0.0) || std::isnan(u)) {
    throw ParameterOutOfRangeError("smoothing exponent must be positive");
  }
}

SmoothingParam SmoothingParam::infinite() noexcept {
  SmoothingParam p;
  p.u_ = std::numeric_limits<double>::infinity();
  return p;
}

SmoothingParam SmoothingParam::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
    return infinite();
  }
  double u = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, u);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("cannot parse smoothing exponent '" + std::string(text) + "'");
  }
  return SmoothingParam(u);
}

bool SmoothingParam::is_infinite() const noexcept { return std::isinf(u_); }

std::string SmoothingParam::str() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os << u_;
  return os.str();
}

TransitionMatrix smooth(const TransitionMatrix& p_hat, std::int64_t n, SmoothingParam u) {
  if (u.is_infinite()) return p_hat;
  if (n < 1) throw ParameterOutOfRangeError("sample size must be positive");
  const int d = p_hat.dim();
  const double s = std::pow(static_cast<double>(n), -u.value());
  const double omega = 1.0 + d * s;
  std::vector<double> p(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      p[static_cast<std::size_t>(i) * d + j] = (p_hat(i, j) + s) / omega;
    }
  }
  return TransitionMatrix(d, std::move(p));
}

SquareMatrix scaled_deviation(const TransitionMatrix& estimate,
                              const TransitionMatrix& truth, std::int64_t n) {
  if (estimate.dim() != truth.dim()) {
    throw DimensionMismatchError("estimate and truth dimensions differ");
  }
  if (n < 1) throw ParameterOutOfRangeError("sample size must be positive");
  const int d = estimate.dim();
  const double root_n = std::sqrt(static_cast<double>(n));
  SquareMatrix dev{d, std::vector<double>(static_cast<std::size_t>(d) * d, 0.0)};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      dev.at(i, j) = root_n * (estimate(i, j) - truth(i, j));
    }
  }
  return dev;
}

}  // namespace markov
