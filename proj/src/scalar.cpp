#include "extconv/scalar.hpp"

#include <cctype>

#include "extconv/multiindex.hpp"

namespace extconv {

namespace {
bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}
}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational '" + original + "'");
    mpz_class d{std::string(den), 10};
    if (d == 0) throw DomainError("zero denominator in '" + original + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw DomainError("malformed decimal '" + original + "'");
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class numer{std::string(whole.empty() ? "0" : whole) + std::string(frac), 10};
    value = Rational(numer, scale);
    value.canonicalize();
  } else {
    if (!all_digits(text)) throw DomainError("malformed rational '" + original + "'");
    value = Rational(mpz_class(std::string(text), 10));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace extconv
