#include "toboggan/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace toboggan {

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view part) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size())
      throw std::invalid_argument("bad rational: '" + std::string(part) + "'");
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  long long num = parse_int(text.substr(0, slash));
  long long den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string pi_multiple_string(const Rational& r) {
  if (r.numerator() == 0) return "0";
  long long num = r.numerator();
  long long den = r.denominator();
  std::string out;
  if (num < 0) {
    out += "-";
    num = -num;
  }
  if (num != 1) out += std::to_string(num);
  out += "pi";
  if (den != 1) out += "/" + std::to_string(den);
  return out;
}

}  // namespace toboggan
