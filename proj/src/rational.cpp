#include "riesz/rational.hpp"

#include "riesz/error.hpp"

#include <algorithm>
#include <cctype>

namespace riesz {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t start = 0;
  if (allow_sign && s[0] == '-') start = 1;
  if (start == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num, true) ||
      (slash != std::string_view::npos && !is_integer_literal(den, false))) {
    throw ParseError("not an exact rational: \"" + std::string(text) + "\"");
  }
  Rational r;
  r.get_num() = mpz_class(std::string(num), 10);
  r.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (r.get_den() == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_decimal(const Rational& value, int digits) {
  mpf_class f(value, 256);
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
  if (mant.empty() || mant == "0") return "0";
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  if (exp <= 0) return sign + "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
  if (static_cast<std::size_t>(exp) >= mant.size()) {
    return sign + mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
  }
  return sign + mant.substr(0, static_cast<std::size_t>(exp)) + "." +
         mant.substr(static_cast<std::size_t>(exp));
}

Rational ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw PreconditionError("ratio: zero denominator");
  Rational r(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  r.canonicalize();
  return r;
}

Rational pow2(int exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace riesz
