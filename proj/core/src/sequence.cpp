#include "fracseq/sequence.hpp"

#include <algorithm>
#include <charconv>

namespace fracseq {

Exponent::Exponent(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw InvalidArgument("exponent p must satisfy p >= 1");
  }
  if (p == 1.0) {
    q_ = kInfinity;
  } else if (p == kInfinity) {
    q_ = 1.0;
  } else {
    q_ = p / (p - 1.0);
  }
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "INF" || text == "infinity") return infinity();
  if (text.find('/') != std::string_view::npos) {
    return Exponent(to_double(parse_rational(text)));
  }
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw InvalidArgument("unparseable exponent p: '" + std::string(text) + "'");
  }
  return Exponent(value);
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, p_);
  return std::string(buffer, end);
}

double lq_norm(std::span<const double> values, double r) {
  if (r == Exponent::kInfinity) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (r == 1.0) {
    double s = 0.0;
    for (double v : values) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : values) s += std::pow(std::abs(v), r);
  return std::pow(s, 1.0 / r);
}

}  // namespace fracseq
