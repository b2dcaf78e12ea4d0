#include "extconv/io.hpp"

namespace extconv {

Json scalar_to_json(const Rational& q) { return to_string(q); }

Json scalar_to_json(double x) { return x; }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_number_float()) {
    const auto text = j.dump();
    if (text.find_first_of("eE") == std::string::npos) return parse_rational(text);
    return Rational(j.get<double>());
  }
  throw DomainError("expected a number or rational string, got " + j.dump());
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw DomainError("expected a number or rational string, got " + j.dump());
}

int int_field(const Json& j, const char* name) {
  if (!j.contains(name)) throw DomainError(std::string("missing field \"") + name + "\"");
  const auto& v = j.at(name);
  if (!v.is_number_integer()) throw DomainError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

Json poly_form_to_json(const PolyKForm& w) {
  Json out;
  out["n"] = w.n();
  out["k"] = w.degree();
  Json coeffs = Json::object();
  for (std::size_t r = 0; r < w.size(); ++r) {
    if (w[r].is_zero()) continue;
    coeffs[MultiIndex::unrank(r, w.n(), w.degree()).to_string()] = w[r].to_string();
  }
  out["coeffs"] = std::move(coeffs);
  return out;
}

PolyKForm poly_form_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("polynomial form JSON must be an object");
  const int n = int_field(j, "n");
  const int k = int_field(j, "k");
  PolyKForm out(n, k);
  if (j.contains("coeffs")) {
    for (const auto& [key, value] : j.at("coeffs").items()) {
      const auto I = MultiIndex::parse(key, n);
      if (I.size() != k) throw DomainError("polynomial form JSON: key \"" + key + "\" has the wrong degree");
      if (!value.is_string()) throw DomainError("polynomial form JSON: coefficients must be strings");
      out.at(I) = Polynomial::parse(value.get<std::string>());
    }
  }
  validate_variables(out);
  return out;
}

}  // namespace extconv
