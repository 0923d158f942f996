#include "commongraphs/common.hpp"

#include <cctype>

namespace commongraphs {

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace {

BigInt parse_integer(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("malformed integer: " + text);
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw std::invalid_argument("malformed integer: " + text);
    }
  }
  // Leading zeros would make the string constructor read octal.
  std::size_t first = text.find_first_not_of('0', i);
  BigInt value(first == std::string::npos ? std::string("0") : text.substr(first));
  return text[0] == '-' ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(num, den);
  }
  std::string mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    exponent = static_cast<long>(parse_integer(text.substr(e + 1)).convert_to<long long>());
  }
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    std::string frac = mantissa.substr(dot + 1);
    mantissa = mantissa.substr(0, dot) + frac;
    exponent -= static_cast<long>(frac.size());
    if (mantissa == "" || mantissa == "-" || mantissa == "+") mantissa += "0";
  }
  Rational value(parse_integer(mantissa));
  BigInt scale = pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? value / Rational(scale) : value * Rational(scale);
}

}  // namespace commongraphs
