#include "congames/rational.hpp"

#include <cctype>
#include <cmath>

#include "congames/errors.hpp"

namespace congames {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(int k) {
  cpp_int p = 1;
  for (int i = 0; i < k; ++i) p *= 10;
  return p;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal digits only; cpp_int would read a leading zero as octal.
cpp_int decimal(const std::string& digits) {
  std::size_t k = digits.find_first_not_of('0');
  return k == std::string::npos ? cpp_int(0) : cpp_int(digits.substr(k));
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw InputError("empty number");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string body = s.substr(i);
  Rational r;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw InputError("malformed rational '" + text + "'");
    cpp_int d = decimal(den);
    if (d == 0) throw InputError("zero denominator in '" + text + "'");
    r = Rational(decimal(num), d);
  } else {
    int exp = 0;
    if (auto e = body.find_first_of("eE"); e != std::string::npos) {
      std::string es = body.substr(e + 1);
      bool eneg = !es.empty() && es[0] == '-';
      if (!es.empty() && (es[0] == '-' || es[0] == '+')) es = es.substr(1);
      if (!all_digits(es)) throw InputError("malformed exponent in '" + text + "'");
      exp = std::stoi(es) * (eneg ? -1 : 1);
      body = body.substr(0, e);
    }
    std::string ip = body, fp;
    if (auto dot = body.find('.'); dot != std::string::npos) {
      ip = body.substr(0, dot);
      fp = body.substr(dot + 1);
    }
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) throw InputError("malformed number '" + text + "'");
    cpp_int mant = decimal(ip + fp);
    int scale = static_cast<int>(fp.size()) - exp;
    r = scale >= 0 ? Rational(mant, pow10(scale)) : Rational(mant * pow10(-scale));
  }
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational from_double(double d) {
  if (!std::isfinite(d)) throw InputError("non-finite number");
  int exp = 0;
  double m = std::frexp(d, &exp);
  // m * 2^53 is an integer.
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r{cpp_int(mant)};
  cpp_int p = 1;
  for (int k = 0; k < std::abs(exp); ++k) p *= 2;
  return exp >= 0 ? Rational(r * p) : Rational(r / p);
}

}  // namespace congames
