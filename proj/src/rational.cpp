#include "edlogic/rational.hpp"

#include <cctype>

#include "edlogic/errors.hpp"

namespace edlogic {

Rat make_rat(long num, long den) {
  if (den == 0) throw FormatError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw FormatError("empty number: '" + std::string(text) + "'");

  Rat value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw FormatError("bad fraction: '" + std::string(text) + "'");
    value = Rat(mpz_class(std::string(num), 10), mpz_class(std::string(den), 10));
    if (value.get_den() == 0) throw FormatError("zero denominator: '" + std::string(text) + "'");
    value.canonicalize();
  } else if (dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw FormatError("bad decimal: '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      throw FormatError("bad decimal: '" + std::string(text) + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class digits(std::string(whole.empty() ? "0" : whole) +
                         std::string(frac.empty() ? "" : frac),
                     10);
    value = Rat(digits, scale);
    value.canonicalize();
  } else {
    if (!all_digits(s)) throw FormatError("bad number: '" + std::string(text) + "'");
    value = Rat(mpz_class(std::string(s), 10));
  }
  return negative ? Rat(-value) : value;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace edlogic
