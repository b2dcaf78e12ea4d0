#include "extconv/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "extconv/multiindex.hpp"

namespace extconv {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
    }
  }

  Polynomial run() {
    if (src_.empty()) throw DomainError("empty polynomial");
    Polynomial out;
    bool first = true;
    while (pos_ < src_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto term = parse_term();
      if (sign < 0) out -= term; else out += term;
      first = false;
    }
    return out;
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("malformed polynomial '" + src_ + "' at position " + std::to_string(pos_) + ": " + why);
  }

  std::string digits() {
    std::string out;
    while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(src_[pos_++]);
    return out;
  }

  Polynomial parse_term() {
    Rational coeff = 1;
    Monomial mono;
    bool any = false;
    while (true) {
      if (peek() == 'x') {
        ++pos_;
        auto idx = digits();
        if (idx.empty()) fail("variable needs an index");
        const int var = std::stoi(idx);
        if (var < 1) fail("variable index must be >= 1");
        int power = 1;
        if (peek() == '^') {
          ++pos_;
          auto e = digits();
          if (e.empty()) fail("missing exponent");
          power = std::stoi(e);
        }
        if (static_cast<int>(mono.size()) < var) mono.resize(var, 0);
        mono[var - 1] += power;
      } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        std::string number = digits();
        if (peek() == '/' || peek() == '.') {
          number.push_back(src_[pos_++]);
          auto rest = digits();
          if (rest.empty() && number.front() == '.') fail("malformed number");
          number += rest;
        }
        coeff *= parse_rational(number);
      } else {
        fail("expected a number or a variable");
      }
      any = true;
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    trim(mono);
    return Polynomial::monomial(mono, coeff);
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da > db;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    const int ea = i < a.size() ? a[i] : 0;
    const int eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea > eb;
  }
  return false;
}

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Polynomial Polynomial::variable(int index) {
  if (index < 1) throw DomainError("variable index must be >= 1");
  Monomial m(index, 0);
  m[index - 1] = 1;
  return monomial(std::move(m), 1);
}

Polynomial Polynomial::monomial(Monomial exponents, const Rational& coefficient) {
  for (int e : exponents) {
    if (e < 0) throw DomainError("negative exponent");
  }
  trim(exponents);
  Polynomial out;
  out.add_term(exponents, coefficient);
  return out;
}

Polynomial Polynomial::parse(std::string_view text) { return PolynomialParser(text).run(); }

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.begin()->first);
}

int Polynomial::max_variable() const {
  int out = 0;
  for (const auto& [m, c] : terms_) out = std::max(out, static_cast<int>(m.size()));
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(int index) const {
  if (index < 1) throw DomainError("variable index must be >= 1");
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (static_cast<int>(m.size()) < index || m[index - 1] == 0) continue;
    Monomial d = m;
    const int e = d[index - 1]--;
    trim(d);
    out.add_term(d, c * e);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    if (m.size() > point.size()) throw DomainError("evaluation point has too few coordinates");
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < m[i]; ++e) term *= point[i];
    }
    acc += term;
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body;
    if (mag != 1 || m.empty()) body = extconv::to_string(mag);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += "x" + std::to_string(i + 1);
      if (m[i] > 1) body += "^" + std::to_string(m[i]);
    }
    out += body;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator-(Polynomial a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

}  // namespace extconv
