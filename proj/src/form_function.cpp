#include "extconv/form_function.hpp"

#include <cctype>
#include <string>
#include <variant>

namespace extconv {

namespace detail {

enum class Op { xi, constant, inner, norm2, wedge_pow, wedge, add, mul, scale, neg, abs, pow };

struct Node {
  Op op = Op::xi;
  int degree = -1;  // -1 for scalars
  Rational value;
  KForm<Rational> form;
  int exponent = 0;
  std::vector<Node> args;
};

}  // namespace detail

namespace {

using detail::Node;
using detail::Op;

class Parser {
 public:
  Parser(int n, int k) : n_(n), k_(k) {}

  Node parse(const Json& e, const std::string& path) {
    if (e.is_string()) {
      if (e.get<std::string>() == "xi") return leaf_xi();
      fail(path, "unknown leaf " + e.dump());
    }
    if (!e.is_object() || !e.contains("op") || !e.at("op").is_string()) fail(path, "expected an object with \"op\"");
    const auto op = e.at("op").get<std::string>();
    Node node;
    if (op == "xi") return leaf_xi();
    if (op == "const") {
      node.op = Op::constant;
      node.value = constant(e, "value", path);
    } else if (op == "inner") {
      node.op = Op::inner;
      node.form = literal_form(field(e, "form", path), path + ".form");
      node.args.push_back(parse(field(e, "arg", path), path + ".arg"));
      if (node.args[0].degree != node.form.degree()) {
        fail(path, "inner: form has degree " + std::to_string(node.form.degree()) + " but argument has degree " +
                       std::to_string(node.args[0].degree));
      }
    } else if (op == "norm2") {
      node.op = Op::norm2;
      node.args.push_back(form_arg(e, path));
    } else if (op == "wedge_pow") {
      node.op = Op::wedge_pow;
      node.exponent = integer(e, "s", path);
      node.args.push_back(form_arg(e, path));
      node.degree = node.args[0].degree * node.exponent;
    } else if (op == "wedge") {
      node.op = Op::wedge;
      node.args = list(e, path);
      node.degree = 0;
      for (const auto& a : node.args) {
        if (a.degree < 0) fail(path, "wedge: arguments must be forms");
        node.degree += a.degree;
      }
    } else if (op == "add") {
      node.op = Op::add;
      node.args = list(e, path);
      node.degree = node.args[0].degree;
      for (const auto& a : node.args) {
        if (a.degree != node.degree) fail(path, "add: arguments must all be scalars or forms of one degree");
      }
    } else if (op == "mul") {
      node.op = Op::mul;
      node.args = list(e, path);
      for (const auto& a : node.args) {
        if (a.degree >= 0) fail(path, "mul: arguments must be scalars (use wedge for forms)");
      }
    } else if (op == "scale") {
      node.op = Op::scale;
      node.value = constant(e, "c", path);
      node.args.push_back(parse(field(e, "arg", path), path + ".arg"));
      node.degree = node.args[0].degree;
    } else if (op == "neg") {
      node.op = Op::neg;
      node.args.push_back(parse(field(e, "arg", path), path + ".arg"));
      node.degree = node.args[0].degree;
    } else if (op == "abs") {
      node.op = Op::abs;
      node.args.push_back(scalar_arg(e, path));
    } else if (op == "pow") {
      node.op = Op::pow;
      node.exponent = integer(e, "p", path);
      node.args.push_back(scalar_arg(e, path));
    } else {
      fail(path, "unknown op \"" + op + "\"");
    }
    return node;
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw DomainError("function expression at " + path + ": " + what);
  }

 private:
  Node leaf_xi() const {
    Node node;
    node.op = Op::xi;
    node.degree = k_;
    return node;
  }

  static const Json& field(const Json& e, const char* name, const std::string& path) {
    if (!e.contains(name)) fail(path, std::string("missing \"") + name + "\"");
    return e.at(name);
  }

  static Rational constant(const Json& e, const char* name, const std::string& path) {
    try {
      return rational_from_json(field(e, name, path));
    } catch (const DomainError& err) {
      fail(path, err.what());
    }
  }

  static int integer(const Json& e, const char* name, const std::string& path) {
    const auto& v = field(e, name, path);
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 64) {
      fail(path, std::string("\"") + name + "\" must be an integer in 0..64");
    }
    return v.get<int>();
  }

  Node form_arg(const Json& e, const std::string& path) {
    auto a = parse(field(e, "arg", path), path + ".arg");
    if (a.degree < 0) fail(path, "argument must be a form");
    return a;
  }

  Node scalar_arg(const Json& e, const std::string& path) {
    auto a = parse(field(e, "arg", path), path + ".arg");
    if (a.degree >= 0) fail(path, "argument must be a scalar");
    return a;
  }

  std::vector<Node> list(const Json& e, const std::string& path) {
    const auto& args = field(e, "args", path);
    if (!args.is_array() || args.empty()) fail(path, "\"args\" must be a non-empty array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < args.size(); ++i) out.push_back(parse(args[i], path + ".args[" + std::to_string(i) + "]"));
    return out;
  }

  KForm<Rational> literal_form(const Json& f, const std::string& path) const {
    try {
      if (f.is_object()) return form_from_json<Rational>(f, n_);
      if (!f.is_string()) fail(path, "expected a basis name or form JSON");
      const auto text = f.get<std::string>();
      if (text.empty() || text[0] != 'e') fail(path, "basis name must start with 'e'");
      const auto body = text.substr(1);
      if (body.find(',') != std::string::npos) return KForm<Rational>::basis(MultiIndex::parse(body, n_));
      std::vector<int> indices;
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(path, "malformed basis name \"" + text + "\"");
        indices.push_back(c - '0');
      }
      return KForm<Rational>::basis(MultiIndex(indices, n_));
    } catch (const DomainError& err) {
      if (std::string(err.what()).starts_with("function expression")) throw;
      fail(path, err.what());
    }
  }

  int n_;
  int k_;
};

template <class S>
S convert(const Rational& q) {
  if constexpr (std::is_same_v<S, double>) {
    return q.get_d();
  } else {
    return q;
  }
}

template <class S>
using Value = std::variant<S, KForm<S>>;

template <class S>
struct Evaluator {
  const KForm<S>& xi;

  S scalar(const Node& node) const { return std::get<S>(eval(node)); }
  KForm<S> form(const Node& node) const { return std::get<KForm<S>>(eval(node)); }

  Value<S> eval(const Node& node) const {
    switch (node.op) {
      case Op::xi:
        return xi;
      case Op::constant:
        return convert<S>(node.value);
      case Op::inner:
        return scalar_product(node.form.map([](const Rational& q) { return convert<S>(q); }), form(node.args[0]));
      case Op::norm2:
        return norm_squared(form(node.args[0]));
      case Op::wedge_pow:
        return wedge_power(form(node.args[0]), node.exponent);
      case Op::wedge: {
        auto acc = form(node.args[0]);
        for (std::size_t i = 1; i < node.args.size(); ++i) acc = wedge(acc, form(node.args[i]));
        return acc;
      }
      case Op::add: {
        auto acc = eval(node.args[0]);
        for (std::size_t i = 1; i < node.args.size(); ++i) {
          if (node.degree < 0) {
            std::get<S>(acc) += scalar(node.args[i]);
          } else {
            std::get<KForm<S>>(acc) += form(node.args[i]);
          }
        }
        return acc;
      }
      case Op::mul: {
        S acc = scalar(node.args[0]);
        for (std::size_t i = 1; i < node.args.size(); ++i) acc *= scalar(node.args[i]);
        return acc;
      }
      case Op::scale: {
        const S c = convert<S>(node.value);
        if (node.degree < 0) return S(c * scalar(node.args[0]));
        return form(node.args[0]) * c;
      }
      case Op::neg: {
        if (node.degree < 0) return S(-scalar(node.args[0]));
        return -form(node.args[0]);
      }
      case Op::abs:
        return abs_value(scalar(node.args[0]));
      case Op::pow: {
        const S base = scalar(node.args[0]);
        S acc = from_int<S>(1);
        for (int i = 0; i < node.exponent; ++i) acc *= base;
        return acc;
      }
    }
    throw DomainError("unreachable expression op");
  }
};

}  // namespace

FormFunction FormFunction::parse(const Json& doc) {
  if (!doc.is_object()) throw DomainError("function JSON must be an object");
  FormFunction f;
  f.n_ = int_field(doc, "n");
  f.k_ = int_field(doc, "k");
  if (f.n_ < 1 || f.n_ > 31 || f.k_ < 1 || f.k_ > f.n_) throw DomainError("function JSON: need 1 <= k <= n <= 31");
  if (!doc.contains("expr")) throw DomainError("function JSON: missing \"expr\"");
  f.expr_ = doc.at("expr");
  Parser parser(f.n_, f.k_);
  auto root = parser.parse(f.expr_, "expr");
  if (root.degree >= 0) Parser::fail("expr", "top-level expression must be scalar, not a form");
  f.root_ = std::make_shared<const Node>(std::move(root));
  return f;
}

Json FormFunction::to_json() const {
  Json out;
  out["n"] = n_;
  out["k"] = k_;
  out["expr"] = expr_;
  return out;
}

template <class S>
S FormFunction::operator()(const KForm<S>& xi) const {
  if (xi.n() != n_ || xi.degree() != k_) throw DomainError("FormFunction: argument has the wrong shape");
  return Evaluator<S>{xi}.scalar(*root_);
}

template Rational FormFunction::operator()(const KForm<Rational>&) const;
template double FormFunction::operator()(const KForm<double>&) const;

FormFunction norm_squared_function(int n, int k, const Rational& factor) {
  Json expr = {{"op", "norm2"}, {"arg", "xi"}};
  if (factor != 1) expr = {{"op", "scale"}, {"c", to_string(factor)}, {"arg", expr}};
  return FormFunction::parse({{"n", n}, {"k", k}, {"expr", expr}});
}

FormFunction quasiaffine_function(int n, int k, const std::vector<KForm<Rational>>& c) {
  Json terms = Json::array();
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (c[s].degree() != k * static_cast<int>(s)) throw DomainError("quasiaffine_function: c_s must have degree k*s");
    if (s == 0) {
      terms.push_back({{"op", "const"}, {"value", to_string(c[0].size() ? c[0][0] : Rational(0))}});
    } else {
      terms.push_back({{"op", "inner"},
                       {"form", form_to_json(c[s])},
                       {"arg", {{"op", "wedge_pow"}, {"s", static_cast<int>(s)}, {"arg", "xi"}}}});
    }
  }
  if (terms.empty()) terms.push_back({{"op", "const"}, {"value", "0"}});
  return FormFunction::parse({{"n", n}, {"k", k}, {"expr", {{"op", "add"}, {"args", terms}}}});
}

}  // namespace extconv
