#pragma once

#include <json.hpp>

#include <string>
#include <type_traits>
#include <vector>

#include "extconv/exterior.hpp"
#include "extconv/polyform.hpp"
#include "extconv/shapespace.hpp"

namespace extconv {

using Json = nlohmann::ordered_json;

/// Exact scalars are written as strings, floats as JSON numbers.
Json scalar_to_json(const Rational& q);
Json scalar_to_json(double x);

/// Accepts a rational string ("-3/2", "0.25") or a JSON number.
Rational rational_from_json(const Json& j);
double double_from_json(const Json& j);

template <class S>
S scalar_from_json(const Json& j) {
  if constexpr (std::is_same_v<S, double>) {
    return double_from_json(j);
  } else {
    return rational_from_json(j);
  }
}

/// Reads an integer field, with a diagnostic naming the field.
int int_field(const Json& j, const char* name);

/// {"n":4,"k":2,"coeffs":{"1,2":"3/2"}}, zero coefficients omitted.
template <class S>
Json form_to_json(const KForm<S>& x) {
  Json out;
  out["n"] = x.n();
  out["k"] = x.degree();
  Json coeffs = Json::object();
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (is_zero(x[r])) continue;
    coeffs[MultiIndex::unrank(r, x.n(), x.degree()).to_string()] = scalar_to_json(x[r]);
  }
  out["coeffs"] = std::move(coeffs);
  return out;
}

/// Missing "n" falls back to default_n when it is positive.
template <class S>
KForm<S> form_from_json(const Json& j, int default_n = 0) {
  if (!j.is_object()) throw DomainError("form JSON must be an object");
  const int n = j.contains("n") ? int_field(j, "n") : default_n;
  if (n <= 0) throw DomainError("form JSON: missing or invalid \"n\"");
  const int k = int_field(j, "k");
  KForm<S> out(n, k);
  if (!j.contains("coeffs")) return out;
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_object()) throw DomainError("form JSON: \"coeffs\" must be an object");
  for (const auto& [key, value] : coeffs.items()) {
    const auto I = MultiIndex::parse(key, n);
    if (I.size() != k) throw DomainError("form JSON: key \"" + key + "\" has the wrong degree");
    out.at(I) = scalar_from_json<S>(value);
  }
  return out;
}

Json poly_form_to_json(const PolyKForm& w);
PolyKForm poly_form_from_json(const Json& j);

/// {"n","k","rows":[labels],"data":[[...],...]} row-major.
template <class S>
Json matrix_to_json(const ShapeMatrix<S>& x) {
  Json out;
  out["n"] = x.n();
  out["k"] = x.k();
  Json rows = Json::array();
  Json data = Json::array();
  for (std::size_t r = 0; r < x.rows(); ++r) {
    rows.push_back(MultiIndex::unrank(r, x.n(), x.k() - 1).to_string());
    Json line = Json::array();
    for (std::size_t c = 0; c < x.cols(); ++c) line.push_back(scalar_to_json(x(r, c)));
    data.push_back(std::move(line));
  }
  out["rows"] = std::move(rows);
  out["data"] = std::move(data);
  return out;
}

template <class S>
ShapeMatrix<S> matrix_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("matrix JSON must be an object");
  ShapeMatrix<S> out(int_field(j, "n"), int_field(j, "k"));
  if (!j.contains("data") || !j.at("data").is_array()) throw DomainError("matrix JSON: \"data\" must be an array");
  const auto& data = j.at("data");
  if (data.size() != out.rows()) {
    throw DomainError("matrix JSON: expected " + std::to_string(out.rows()) + " rows, got " +
                      std::to_string(data.size()));
  }
  if (j.contains("rows")) {
    const auto& labels = j.at("rows");
    if (!labels.is_array() || labels.size() != out.rows()) throw DomainError("matrix JSON: bad \"rows\" labels");
    for (std::size_t r = 0; r < out.rows(); ++r) {
      if (!labels[r].is_string() ||
          MultiIndex::parse(labels[r].get<std::string>(), out.n()) != MultiIndex::unrank(r, out.n(), out.k() - 1)) {
        throw DomainError("matrix JSON: row " + std::to_string(r) + " is not labelled in lexicographic order");
      }
    }
  }
  for (std::size_t r = 0; r < out.rows(); ++r) {
    if (!data[r].is_array() || data[r].size() != out.cols()) {
      throw DomainError("matrix JSON: row " + std::to_string(r) + " must have n entries");
    }
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = scalar_from_json<S>(data[r][c]);
  }
  return out;
}

/// Row-set labels join the member row labels with '|', e.g. "1|2" for k=2.
template <class S>
Json minors_to_json(const MinorTable<S>& m) {
  Json out;
  out["n"] = m.n();
  out["k"] = m.k();
  out["s"] = m.order();
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.row_sets(); ++r) {
    std::string label;
    bool first = true;
    for (int row : m.row_set(r)) {
      if (!first) label += '|';
      first = false;
      label +=MultiIndex::unrank(static_cast<std::uint64_t>(row - 1), m.n(), m.k() - 1).to_string();
    }
    rows.push_back(std::move(label));
  }
  Json cols = Json::array();
  for (std::size_t c = 0; c < m.col_sets(); ++c) cols.push_back(m.col_set(c).to_string());
  Json data = Json::array();
  for (std::size_t r = 0; r < m.row_sets(); ++r) {
    Json line = Json::array();
    for (std::size_t c = 0; c < m.col_sets(); ++c) line.push_back(scalar_to_json(m(r, c)));
    data.push_back(std::move(line));
  }
  out["rows"] = std::move(rows);
  out["cols"] = std::move(cols);
  out["data"] = std::move(data);
  return out;
}

}  // namespace extconv
