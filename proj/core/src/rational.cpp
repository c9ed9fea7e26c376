#include "probkb/rational.hpp"

#include <cctype>

namespace probkb {

std::string to_fraction(const Rational& r) {
  Integer num = numerator(r);
  Integer den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, int digits) {
  bool neg = r < 0;
  Rational a = neg ? Rational(-r) : r;
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Integer num = numerator(a) * scale;
  Integer den = denominator(a);
  Integer q = num / den;
  if ((num % den) * 2 >= den) ++q;  // round half up
  Integer ip = q / scale;
  Integer fp = q % scale;
  std::string frac = fp.str();
  frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (neg ? "-" : "") + ip.str();
  return frac.empty() ? out : out + "." + frac;
}

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  size_t pos = 0;
  bool neg = false;
  if (text[pos] == '-' || text[pos] == '+') {
    neg = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::string& out) {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) out += text[pos++];
    return pos > start;
  };
  std::string ip, fp, dp;
  bool has_ip = digits(ip);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    bool has_fp = digits(fp);
    if (pos != text.size() || (!has_ip && !has_fp)) return std::nullopt;
    Integer scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Integer whole = ip.empty() ? Integer(0) : Integer(ip);
    Integer frac = fp.empty() ? Integer(0) : Integer(fp);
    Rational r(whole * scale + frac, scale);
    return neg ? Rational(-r) : r;
  }
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (!has_ip || !digits(dp) || pos != text.size()) return std::nullopt;
    Integer den(dp);
    if (den == 0) return std::nullopt;
    Rational r(Integer(ip), den);
    return neg ? Rational(-r) : r;
  }
  if (!has_ip || pos != text.size()) return std::nullopt;
  Rational r{Integer(ip)};
  return neg ? Rational(-r) : r;
}

}  // namespace probkb
