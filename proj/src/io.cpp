#include "gwzw/io.hpp"

#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

namespace gwzw {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("position " + std::to_string(position) + ": " + message), position_(position), detail_(message) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { integer, ident, sym, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src, std::size_t offset = 0) : src_(src), offset_(offset) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }
  bool at_sym(char c) const { return cur_.kind == Tok::sym && cur_.text[0] == c; }
  bool at_ident(std::string_view name) const { return cur_.kind == Tok::ident && cur_.text == name; }
  bool accept(char c) {
    if (!at_sym(c)) return false;
    advance();
    return true;
  }
  Token expect(char c) {
    if (!at_sym(c)) fail(std::string("expected '") + c + "'");
    return take();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(cur_.pos, what + ", found " + describe(cur_));
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + t.text + "'";
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    const std::size_t start = i_;
    if (i_ >= src_.size()) {
      cur_ = {Tok::end, "", offset_ + start};
      return;
    }
    const char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      cur_ = {Tok::integer, std::string(src_.substr(start, i_ - start)), offset_ + start};
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) ++i_;
      cur_ = {Tok::ident, std::string(src_.substr(start, i_ - start)), offset_ + start};
    } else if (std::string_view("+-^*/()[],=").find(c) != std::string_view::npos) {
      ++i_;
      cur_ = {Tok::sym, std::string(1, c), offset_ + start};
    } else {
      throw ParseError(offset_ + start, std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view src_;
  std::size_t offset_;
  std::size_t i_ = 0;
  Token cur_{Tok::end, "", 0};
};

// ---------------------------------------------------------------------------
// Syntax tree

struct Index {
  std::string letter;  // empty for a concrete index
  int value = 0;
  std::size_t pos = 0;
};

enum class NK { number, param, field, derived, eps, eta, gen, builtin, d, sum, product, trace, bracket };

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
  NK kind;
  std::size_t pos;
  Rational number;
  Param param = Param::t;
  Field field = Field::w;
  std::string name;
  std::vector<Index> idx;
  std::vector<NodePtr> kids;
  std::vector<int> signs;  // sum only
};

NodePtr make(NK k, std::size_t pos) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->pos = pos;
  return n;
}

const char* const kBuiltins[] = {"W", "E", "Phi", "A", "F", "R", "T", "DPhi"};

bool is_builtin(const std::string& s) {
  for (const char* b : kBuiltins)
    if (s == b) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    if (lex_.peek().kind != Tok::end) lex_.fail("unexpected input after expression");
    return e;
  }

 private:
  NodePtr expr() {
    auto sum = make(NK::sum, lex_.peek().pos);
    int sign = 1;
    if (lex_.accept('-')) sign = -1;
    else lex_.accept('+');
    sum->signs.push_back(sign);
    sum->kids.push_back(product());
    while (lex_.at_sym('+') || lex_.at_sym('-')) {
      sum->signs.push_back(lex_.take().text == "-" ? -1 : 1);
      sum->kids.push_back(product());
    }
    return sum;
  }

  NodePtr product() {
    auto prod = make(NK::product, lex_.peek().pos);
    prod->kids.push_back(primary());
    while (lex_.at_sym('^') || lex_.at_sym('*')) {
      lex_.take();
      prod->kids.push_back(primary());
    }
    return prod;
  }

  std::vector<Index> indices() {
    lex_.expect('[');
    std::vector<Index> out;
    do {
      const Token t = lex_.take();
      if (t.kind == Tok::integer) {
        if (t.text.size() > 4) throw IndexRangeError(t.pos, "index " + t.text + " out of range");
        out.push_back({"", std::stoi(t.text), t.pos});
      } else if (t.kind == Tok::ident) {
        out.push_back({t.text, 0, t.pos});
      } else {
        throw ParseError(t.pos, "expected an index, found " + Lexer::describe(t));
      }
    } while (lex_.accept(','));
    lex_.expect(']');
    return out;
  }

  void arity(const Node& n, std::size_t want, const std::string& what) {
    if (n.idx.size() != want)
      throw ParseError(n.pos, what + " takes " + std::to_string(want) + " ind" + (want == 1 ? "ex" : "ices") + ", got " +
                                  std::to_string(n.idx.size()));
  }

  NodePtr primary() {
    const Token t = lex_.peek();
    if (t.kind == Tok::integer) {
      lex_.take();
      auto n = make(NK::number, t.pos);
      n->number = Rational(mpz_class(t.text));
      if (lex_.accept('/')) {
        const Token d = lex_.take();
        if (d.kind != Tok::integer) throw ParseError(d.pos, "expected a denominator, found " + Lexer::describe(d));
        mpz_class den(d.text);
        if (den == 0) throw ParseError(d.pos, "zero denominator");
        n->number = Rational(mpz_class(t.text), den);
        n->number.canonicalize();
      }
      return n;
    }
    if (lex_.accept('(')) {
      NodePtr e = expr();
      lex_.expect(')');
      return e;
    }
    if (t.kind == Tok::sym && t.text == "[") {
      lex_.take();
      auto n = make(NK::bracket, t.pos);
      n->kids.push_back(expr());
      lex_.expect(',');
      n->kids.push_back(expr());
      lex_.expect(']');
      return n;
    }
    if (t.kind != Tok::ident) lex_.fail("expected a term");
    lex_.take();
    const std::string& s = t.text;

    if (s == "t" || s == "s" || s == "m2") {
      auto n = make(NK::param, t.pos);
      n->param = s == "t" ? Param::t : s == "s" ? Param::s : Param::m2;
      return n;
    }
    if (s == "d" && lex_.at_sym('(')) {
      lex_.take();
      auto n = make(NK::d, t.pos);
      n->kids.push_back(expr());
      lex_.expect(')');
      return n;
    }
    if (s == "tr" && lex_.at_sym('(')) {
      lex_.take();
      auto n = make(NK::trace, t.pos);
      do n->kids.push_back(expr());
      while (lex_.accept(','));
      lex_.expect(')');
      return n;
    }
    if (auto f = field_from_name(s)) {
      auto n = make(NK::field, t.pos);
      n->field = *f;
      n->name = s;
      n->idx = indices();
      arity(*n, static_cast<std::size_t>(field_info(*f).arity), s);
      return n;
    }
    const bool has_idx = lex_.at_sym('[');
    if ((s == "R" || s == "T" || s == "Dphi") && has_idx) {
      auto n = make(NK::derived, t.pos);
      n->name = s;
      n->idx = indices();
      arity(*n, s == "R" ? 2 : 1, s);
      return n;
    }
    if (s == "eps" || s == "eta" || s == "J" || s == "P") {
      auto n = make(s == "eps" ? NK::eps : s == "eta" ? NK::eta : NK::gen, t.pos);
      n->name = s;
      n->idx = indices();
      if (s == "eta" || s == "J") arity(*n, 2, s);
      if (s == "P") arity(*n, 1, s);
      return n;
    }
    if (is_builtin(s) || s == "Dphi") {
      auto n = make(NK::builtin, t.pos);
      n->name = s == "Dphi" ? "DPhi" : s;
      return n;
    }
    throw ParseError(t.pos, "unknown identifier '" + s + "'");
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Evaluation with index contraction

struct Value {
  FormExpr form;
  std::optional<LieForm> lie;
};

using Bindings = std::map<std::string, int>;
struct LetterUse {
  int count = 0;
  std::size_t pos = 0;
};
using Counts = std::map<std::string, LetterUse>;

FormExpr pair_component(const LieForm& x, int a, int b) {
  auto j = x.alg().j_index(a, b);
  if (!j) return {};
  FormExpr c = x.component(j->first);
  return j->second < 0 ? -c : c;
}

class Evaluator {
 public:
  explicit Evaluator(const ParseContext& ctx)
      : algebra_(ctx.algebra ? ctx.algebra : build_poincare(ctx.n)), dim_(algebra_->dim()), tensor_(invariant_tensor(*algebra_)) {
    if (ctx.algebra && ctx.algebra->n() != ctx.n) throw std::invalid_argument("parse context: algebra n differs from n");
  }

  Value eval_root(const Node& root) {
    const Counts free = contracted_free(root, {});
    if (!free.empty()) {
      const auto& [letter, use] = *free.begin();
      throw ParseError(use.pos, "index '" + letter + "' is not contracted");
    }
    Bindings b;
    return eval(root, b);
  }

 private:
  /// Letters of a node's own index list plus, recursively, the free letters of children.
  Counts raw_free(const Node& n, const Bindings& bound) {
    Counts c;
    for (const auto& i : n.idx) {
      if (i.letter.empty() || bound.count(i.letter)) continue;
      auto& u = c[i.letter];
      if (u.count++ == 0) u.pos = i.pos;
    }
    switch (n.kind) {
      case NK::d:
        return contracted_free(*n.kids[0], bound);
      case NK::sum: {
        Counts first = contracted_free(*n.kids[0], bound);
        for (std::size_t k = 1; k < n.kids.size(); ++k) {
          Counts other = contracted_free(*n.kids[k], bound);
          if (keys(first) != keys(other))
            throw ParseError(n.kids[k]->pos, "summands carry different free indices");
        }
        return first;
      }
      case NK::product:
      case NK::trace:
      case NK::bracket:
        for (const auto& k : n.kids)
          for (const auto& [l, u] : contracted_free(*k, bound)) {
            auto& v = c[l];
            if (v.count == 0) v.pos = u.pos;
            v.count += u.count;
          }
        return c;
      default:
        return c;
    }
  }

  static std::vector<std::string> keys(const Counts& c) {
    std::vector<std::string> out;
    for (const auto& [k, v] : c) out.push_back(k);
    return out;
  }

  /// Free letters after contracting pairs at this node (products, traces, brackets).
  Counts contracted_free(const Node& n, const Bindings& bound) {
    Counts c = raw_free(n, bound);
    if (n.kind != NK::product && n.kind != NK::trace && n.kind != NK::bracket) return c;
    Counts out;
    for (const auto& [l, u] : c) {
      if (u.count > 2) throw ParseError(u.pos, "index '" + l + "' occurs more than twice in one product");
      if (u.count == 1) out[l] = u;
    }
    return out;
  }

  int resolve(const Index& i, const Bindings& b) const {
    int v = i.value;
    if (!i.letter.empty()) {
      auto it = b.find(i.letter);
      if (it == b.end()) throw ParseError(i.pos, "index '" + i.letter + "' is not contracted");
      v = it->second;
    }
    if (v < 0 || v >= dim_)
      throw IndexRangeError(i.pos, "index " + std::to_string(v) + " out of range 0.." + std::to_string(dim_ - 1) + " for n = " +
                                       std::to_string(algebra_->n()));
    return v;
  }

  [[noreturn]] static void type_error(const Node& n, const std::string& what) { throw ParseError(n.pos, what); }

  static Value form(FormExpr f) { return Value{std::move(f), std::nullopt}; }

  static Value times(const Node& at, const Value& x, const Value& y) {
    if (x.lie && y.lie) type_error(at, "product of two Lie-valued factors; use [x, y] or tr(...)");
    if (!x.lie && !y.lie) return form(wedge(x.form, y.form));
    const bool left = !x.lie.has_value();
    const FormExpr& f = left ? x.form : y.form;
    const LieForm& l = left ? *y.lie : *x.lie;
    auto deg = f.degree();
    if (!deg) type_error(at, "Lie-valued product with a form of mixed degree");
    LieForm out(l.algebra(), l.degree() + *deg);
    for (const auto& [g, c] : l.components()) out.set(g, left ? wedge(f, c) : wedge(c, f));
    return Value{{}, std::move(out)};
  }

  static void accumulate(const Node& at, std::optional<Value>& acc, Value v, int sign) {
    if (sign < 0) {
      if (v.lie) *v.lie = -*v.lie;
      else v.form = -v.form;
    }
    if (!acc) {
      acc = std::move(v);
      return;
    }
    if (acc->lie.has_value() != v.lie.has_value()) type_error(at, "sum mixes Lie-valued and ordinary forms");
    if (acc->lie) {
      if (acc->lie->degree() != v.lie->degree() && !acc->lie->is_zero() && !v.lie->is_zero())
        type_error(at, "sum of Lie-valued forms of different degree");
      if (acc->lie->is_zero()) acc->lie = *v.lie;
      else *acc->lie += *v.lie;
    } else {
      acc->form += v.form;
    }
  }

  const LieForm& builtin(const std::string& name) {
    auto it = builtins_.find(name);
    if (it != builtins_.end()) return it->second;
    LieForm v;
    if (name == "W") v = lorentz_connection(algebra_);
    else if (name == "E") v = translation_form(algebra_);
    else if (name == "Phi") v = coset_scalar(algebra_);
    else if (name == "A") v = builtin("E") + builtin("W");
    else if (name == "F") v = curvature(builtin("A"));
    else if (name == "R") v = curvature(builtin("W"));
    else if (name == "T") v = cov_d(builtin("E"), builtin("W"));
    else v = cov_d(builtin("Phi"), builtin("W"));
    return builtins_.emplace(name, std::move(v)).first->second;
  }

  /// Evaluates the children of a contracting node once per assignment of its paired letters.
  template <class Combine>
  void for_each_assignment(const Node& n, Bindings& b, Combine&& combine) {
    std::vector<std::string> pairs;
    for (const auto& [l, u] : raw_free(n, b))
      if (u.count == 2) pairs.push_back(l);
    std::vector<int> vals(pairs.size(), 0);
    for (;;) {
      for (std::size_t k = 0; k < pairs.size(); ++k) b[pairs[k]] = vals[k];
      combine();
      std::size_t k = 0;
      while (k < pairs.size() && ++vals[k] == dim_) vals[k++] = 0;
      if (k == pairs.size()) break;
    }
    for (const auto& l : pairs) b.erase(l);
  }

  Value eval(const Node& n, Bindings& b) {
    switch (n.kind) {
      case NK::number:
        return form(FormExpr::constant(Scalar(n.number)));
      case NK::param:
        return form(FormExpr::constant(Scalar::param(n.param)));
      case NK::field: {
        const int a = resolve(n.idx[0], b);
        const int c = n.idx.size() > 1 ? resolve(n.idx[1], b) : 0;
        return form(FormExpr::field(n.field, a, c));
      }
      case NK::derived: {
        const int a = resolve(n.idx[0], b);
        if (n.name == "R") return form(pair_component(builtin("R"), a, resolve(n.idx[1], b)));
        return form(builtin(n.name == "T" ? "T" : "DPhi").component(algebra_->p_index(a)));
      }
      case NK::eps: {
        if (static_cast<int>(n.idx.size()) != dim_)
          type_error(n, "eps takes " + std::to_string(dim_) + " indices, got " + std::to_string(n.idx.size()));
        std::vector<int> v;
        for (const auto& i : n.idx) v.push_back(resolve(i, b));
        return form(FormExpr::constant(Scalar(levi_civita(v))));
      }
      case NK::eta: {
        const int a = resolve(n.idx[0], b), c = resolve(n.idx[1], b);
        return form(FormExpr::constant(Scalar(a == c ? eta(a) : 0)));
      }
      case NK::gen: {
        LieForm g(algebra_, 0);
        if (n.name == "P") {
          g.set(algebra_->p_index(resolve(n.idx[0], b)), FormExpr::constant(Scalar(1)));
        } else if (auto j = algebra_->j_index(resolve(n.idx[0], b), resolve(n.idx[1], b))) {
          g.set(j->first, FormExpr::constant(Scalar(j->second)));
        }
        return Value{{}, std::move(g)};
      }
      case NK::builtin:
        return Value{{}, builtin(n.name)};
      case NK::d: {
        Value v = eval(*n.kids[0], b);
        if (v.lie) return Value{{}, ext_d(*v.lie)};
        return form(ext_d(v.form));
      }
      case NK::sum: {
        std::optional<Value> acc;
        for (std::size_t k = 0; k < n.kids.size(); ++k) accumulate(*n.kids[k], acc, eval(*n.kids[k], b), n.signs[k]);
        return std::move(*acc);
      }
      case NK::product: {
        std::optional<Value> acc;
        for_each_assignment(n, b, [&] {
          Value p = eval(*n.kids[0], b);
          for (std::size_t k = 1; k < n.kids.size(); ++k) p = times(*n.kids[k], p, eval(*n.kids[k], b));
          accumulate(n, acc, std::move(p), 1);
        });
        return std::move(*acc);
      }
      case NK::trace: {
        if (static_cast<int>(n.kids.size()) != tensor_.rank())
          type_error(n, "tr takes " + std::to_string(tensor_.rank()) + " arguments for n = " + std::to_string(algebra_->n()));
        FormExpr sum;
        for_each_assignment(n, b, [&] {
          std::vector<LieForm> args;
          for (const auto& k : n.kids) {
            Value v = eval(*k, b);
            if (!v.lie) type_error(*k, "tr arguments must be Lie-valued");
            args.push_back(std::move(*v.lie));
          }
          sum += trace(args, tensor_);
        });
        return form(std::move(sum));
      }
      case NK::bracket: {
        std::optional<Value> acc;
        for_each_assignment(n, b, [&] {
          Value x = eval(*n.kids[0], b), y = eval(*n.kids[1], b);
          if (!x.lie) type_error(*n.kids[0], "bracket arguments must be Lie-valued");
          if (!y.lie) type_error(*n.kids[1], "bracket arguments must be Lie-valued");
          accumulate(n, acc, Value{{}, bracket(*x.lie, *y.lie)}, 1);
        });
        return std::move(*acc);
      }
    }
    type_error(n, "unsupported node");
  }

  AlgebraPtr algebra_;
  int dim_;
  InvariantTensor tensor_;
  std::map<std::string, LieForm> builtins_;
};

Value parse_value(std::string_view src, const ParseContext& ctx) {
  NodePtr root = Parser(src).parse_all();
  return Evaluator(ctx).eval_root(*root);
}

}  // namespace

FormExpr parse_expr(std::string_view src, const ParseContext& ctx) {
  Value v = parse_value(src, ctx);
  if (v.lie) throw ParseError(0, "expression is Lie-valued; wrap it in tr(...)");
  return std::move(v.form);
}

LieForm parse_lie_expr(std::string_view src, const ParseContext& ctx) {
  Value v = parse_value(src, ctx);
  if (!v.lie) throw ParseError(0, "expression is not Lie-valued");
  return std::move(*v.lie);
}

// ---------------------------------------------------------------------------
// Emitters

std::string emit_text(const FormExpr& x) { return x.str(); }

namespace {

std::string latex_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string latex_atom(const Atom& a) {
  const auto& info = field_info(a.field());
  std::string s = a.is_d() ? "d" : "";
  s += info.latex;
  s += "^{" + std::to_string(a.index(0));
  if (info.arity == 2) s += std::to_string(a.index(1));
  return s + "}";
}

}  // namespace

std::string emit_latex(const FormExpr& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const Rational a = abs(c);
    const bool bare = k.mono.empty() && k.params.is_one();
    if (a != 1 || bare) os << latex_rational(a);
    for (Param p : {Param::t, Param::s, Param::m2}) {
      const int e = k.params[p];
      if (e == 0) continue;
      os << (p == Param::m2 ? "m" : param_name(p));
      const int shown = p == Param::m2 ? 2 * e : e;
      if (shown > 1) os << "^{" << shown << "}";
    }
    for (const auto& atom : k.mono) os << latex_atom(atom);
  }
  return os.str();
}

namespace {

nlohmann::json atom_json(const Atom& a) {
  const auto& info = field_info(a.field());
  nlohmann::json idx = nlohmann::json::array({a.index(0)});
  if (info.arity == 2) idx.push_back(a.index(1));
  nlohmann::json leaf = {{"op", "atom"}, {"field", std::string(info.name)}, {"indices", idx}};
  if (!a.is_d()) return leaf;
  return {{"op", "d"}, {"args", nlohmann::json::array({leaf})}};
}

[[noreturn]] void json_error(const std::string& what) { throw ParseError(0, "json: " + what); }

const nlohmann::json& member(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) json_error(std::string("missing '") + key + "'");
  return j.at(key);
}

FormExpr atom_from_json(const nlohmann::json& j) {
  const std::string op = member(j, "op").get<std::string>();
  if (op == "d") {
    const auto& args = member(j, "args");
    if (!args.is_array() || args.size() != 1) json_error("'d' takes one argument");
    return ext_d(atom_from_json(args[0]));
  }
  if (op != "atom") json_error("unknown factor op '" + op + "'");
  auto f = field_from_name(member(j, "field").get<std::string>());
  if (!f) json_error("unknown field");
  const auto& idx = member(j, "indices");
  const auto arity = static_cast<std::size_t>(field_info(*f).arity);
  if (!idx.is_array() || idx.size() != arity) json_error("wrong number of indices");
  const int a = idx[0].get<int>();
  const int b = arity == 2 ? idx[1].get<int>() : 0;
  if (a < 0 || a > 255 || b < 0 || b > 255) json_error("index out of range");
  return FormExpr::field(*f, a, b);
}

}  // namespace

nlohmann::json emit_json(const FormExpr& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : x.terms()) {
    nlohmann::json params = nlohmann::json::object();
    for (Param p : {Param::t, Param::s, Param::m2})
      if (k.params[p]) params[param_name(p)] = k.params[p];
    nlohmann::json args = nlohmann::json::array();
    for (const auto& a : k.mono) args.push_back(atom_json(a));
    terms.push_back({{"op", "wedge"}, {"scalar", c.get_str()}, {"params", params}, {"args", args}});
  }
  nlohmann::json out = {{"schema", kExprSchema}, {"expr", {{"op", "sum"}, {"args", terms}}}};
  if (x.m2_order() != kExact) out["m2_order"] = x.m2_order();
  return out;
}

FormExpr parse_json(const nlohmann::json& j) {
  try {
    if (member(j, "schema") != kExprSchema) json_error("unsupported schema");
    const auto& root = member(j, "expr");
    if (member(root, "op") != "sum") json_error("root op must be 'sum'");
    FormExpr out;
    if (j.contains("m2_order")) out.truncate_m2(j.at("m2_order").get<int>());
    for (const auto& term : member(root, "args")) {
      if (member(term, "op") != "wedge") json_error("term op must be 'wedge'");
      Rational c;
      try {
        c = parse_rational(member(term, "scalar").get<std::string>());
      } catch (const std::invalid_argument&) {
        json_error("bad scalar");
      }
      ParamExp exp;
      for (const auto& [name, power] : member(term, "params").items()) {
        const int e = power.get<int>();
        if (e < 0 || e > 255) json_error("bad parameter power");
        if (name == "t") exp[Param::t] = static_cast<std::uint8_t>(e);
        else if (name == "s") exp[Param::s] = static_cast<std::uint8_t>(e);
        else if (name == "m2") exp[Param::m2] = static_cast<std::uint8_t>(e);
        else json_error("unknown parameter '" + name + "'");
      }
      FormExpr value = FormExpr::constant(Scalar::monomial(c, exp));
      for (const auto& f : member(term, "args")) value = wedge(value, atom_from_json(f));
      out += value;
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    json_error(e.what());
  }
}

nlohmann::json report_json(const DerivationReport& r) {
  nlohmann::json routes = nlohmann::json::array();
  for (const auto& route : r.routes)
    routes.push_back({{"name", route.name}, {"terms", route.value.size()}, {"expr", emit_json(route.value)}});
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"label", c.label}, {"pass", c.pass()}, {"residual", emit_text(c.residual)}});
  nlohmann::json out = {
      {"schema", kReportSchema},
      {"target", r.target},
      {"n", r.n},
      {"verdict", r.pass() ? "pass" : "fail"},
      {"result_latex", r.result_latex},
      {"routes", routes},
      {"checks", checks},
      {"steps", r.steps},
      {"boundary", {{"latex", r.boundary_latex}, {"text", emit_text(r.boundary_integrand)}, {"expr", emit_json(r.boundary_integrand)}}},
  };
  out["relating_constant"] = r.relating_constant ? nlohmann::json(r.relating_constant->get_str()) : nlohmann::json(nullptr);
  return out;
}

std::string report_text(const DerivationReport& r) {
  std::ostringstream os;
  os << "target: " << r.target << "\n";
  if (!r.result_latex.empty()) os << "result: " << r.result_latex << "\n";
  if (!r.boundary_latex.empty()) os << "integrand: " << r.boundary_latex << "\n";
  if (r.relating_constant) os << "relating constant: " << r.relating_constant->get_str() << "\n";
  for (const auto& s : r.steps) os << "step: " << s << "\n";
  for (const auto& route : r.routes) os << "route " << route.name << ": " << route.value.size() << " terms\n";
  for (const auto& c : r.checks) {
    os << (c.pass() ? "PASS " : "FAIL ") << c.label;
    if (!c.pass()) os << "  residual: " << emit_text(c.residual);
    os << "\n";
  }
  os << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string report_latex(const DerivationReport& r) {
  std::ostringstream os;
  os << "% " << r.target << "\n";
  if (!r.result_latex.empty()) os << r.result_latex << "\n";
  if (!r.boundary_latex.empty()) os << "% integrand\n" << r.boundary_latex << "\n";
  for (const auto& c : r.checks) os << "% " << (c.pass() ? "pass" : "FAIL") << ": " << c.label << "\n";
  return os.str();
}

nlohmann::json oracle_json(const OracleReport& r) {
  nlohmann::json out = {{"base_dim", r.base_dim}, {"trials", r.trials}, {"passed", r.passed}, {"pass", r.pass()}};
  if (r.witness)
    out["witness"] = {{"seed", r.witness->seed}, {"mask", r.witness->mask}, {"lhs", r.witness->lhs.get_str()}, {"rhs", r.witness->rhs.get_str()}};
  return out;
}

// ---------------------------------------------------------------------------
// Algebra files

namespace {

struct GenRef {
  GeneratorId id;
  int sign = 1;  // J[b,a] with b > a
  std::size_t pos;
};

GenRef read_generator(Lexer& lex, int& max_index) {
  const Token t = lex.take();
  if (t.kind != Tok::ident || (t.text != "J" && t.text != "P")) throw ParseError(t.pos, "expected J[..] or P[..], found " + Lexer::describe(t));
  lex.expect('[');
  std::vector<int> idx;
  do {
    const Token i = lex.take();
    if (i.kind != Tok::integer || i.text.size() > 3) throw ParseError(i.pos, "expected an integer index, found " + Lexer::describe(i));
    idx.push_back(std::stoi(i.text));
    max_index = std::max(max_index, idx.back());
  } while (lex.accept(','));
  lex.expect(']');
  if (t.text == "P") {
    if (idx.size() != 1) throw ParseError(t.pos, "P takes one index");
    return {GeneratorId::P(idx[0]), 1, t.pos};
  }
  if (idx.size() != 2) throw ParseError(t.pos, "J takes two indices");
  if (idx[0] == idx[1]) throw ParseError(t.pos, "J with repeated index");
  if (idx[0] > idx[1]) return {GeneratorId::J(idx[1], idx[0]), -1, t.pos};
  return {GeneratorId::J(idx[0], idx[1]), 1, t.pos};
}

struct BracketLine {
  GenRef x, y;
  std::vector<std::pair<Scalar, GenRef>> rhs;
  std::size_t pos;
};

std::string coefficient_text(const Scalar& c) {
  if (c.terms().size() != 1) throw AlgebraError("bracket coefficient " + c.str() + " is not a monomial");
  const auto& [exp, q] = *c.terms().begin();
  if (exp[Param::t] || exp[Param::s]) throw AlgebraError("bracket coefficient depends on t or s");
  std::string out;
  if (abs(q) != 1) out += Rational(abs(q)).get_str() + "*";
  for (int k = 0; k < exp[Param::m2]; ++k) out += "m2*";
  return out;
}

}  // namespace

AlgebraPtr parse_algebra(std::string_view text) {
  std::string name = "custom";
  std::optional<int> n_header;
  std::vector<BracketLine> lines;
  int max_index = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t offset = start;
    start = end + 1;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] != '[') {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError(offset + first, "expected a bracket line or a 'key: value' header");
      std::string key(line.substr(first, colon - first));
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
      std::string value(line.substr(colon + 1));
      value.erase(0, value.find_first_not_of(" \t"));
      while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
      if (key == "name") {
        name = value;
      } else if (key == "n") {
        try {
          n_header = std::stoi(value);
        } catch (const std::exception&) {
          throw ParseError(offset + colon + 1, "n must be an integer");
        }
        if (*n_header < 1) throw ParseError(offset + colon + 1, "n must be >= 1");
      } else {
        throw ParseError(offset + first, "unknown header '" + key + "'");
      }
      continue;
    }

    Lexer lex(line, offset);
    BracketLine bl;
    bl.pos = lex.peek().pos;
    lex.expect('[');
    bl.x = read_generator(lex, max_index);
    lex.expect(',');
    bl.y = read_generator(lex, max_index);
    lex.expect(']');
    lex.expect('=');
    if (lex.peek().kind == Tok::integer && lex.peek().text == "0") {
      lex.take();
    } else {
      int sign = 1;
      if (lex.accept('-')) sign = -1;
      else lex.accept('+');
      for (;;) {
        Scalar c(sign);
        if (lex.peek().kind == Tok::integer) {
          const Token num = lex.take();
          Rational q{mpz_class(num.text)};
          if (lex.accept('/')) {
            const Token den = lex.take();
            if (den.kind != Tok::integer || den.text == "0") throw ParseError(den.pos, "bad denominator");
            q = Rational(mpz_class(num.text), mpz_class(den.text));
            q.canonicalize();
          }
          c *= Scalar(q);
          lex.expect('*');
        }
        while (lex.at_ident("m2")) {
          lex.take();
          c *= Scalar::param(Param::m2);
          lex.expect('*');
        }
        GenRef g = read_generator(lex, max_index);
        bl.rhs.emplace_back(c, g);
        if (lex.at_sym('+')) sign = 1;
        else if (lex.at_sym('-')) sign = -1;
        else break;
        lex.take();
      }
    }
    if (lex.peek().kind != Tok::end) lex.fail("unexpected input after bracket");
    lines.push_back(std::move(bl));
  }

  const int n = n_header ? *n_header : std::max(1, (max_index + 1) / 2);
  const auto reference = build_poincare(n);
  bool deformed = false;
  for (const auto& l : lines)
    for (const auto& [c, g] : l.rhs) deformed = deformed || c.depends_on(Param::m2);
  auto alg = std::make_shared<LieAlgebra>(name, n, reference->generators(), deformed);

  auto index = [&](const GenRef& g) {
    for (int i : g.id.indices)
      if (i >= alg->dim())
        throw IndexRangeError(g.pos, "index " + std::to_string(i) + " out of range 0.." + std::to_string(alg->dim() - 1));
    return alg->index_of(g.id);
  };
  std::map<std::pair<int, int>, std::size_t> seen;
  for (const auto& l : lines) {
    const int i = index(l.x), j = index(l.y);
    GenCombination value;
    for (const auto& [c, g] : l.rhs) {
      auto& slot = value[index(g)];
      slot += g.sign * l.x.sign * l.y.sign < 0 ? -c : c;
    }
    std::erase_if(value, [](const auto& kv) { return kv.second.is_zero(); });
    if (i == j) {
      if (!value.empty()) throw ParseError(l.pos, "[X, X] must vanish");
      continue;
    }
    const auto key = std::minmax(i, j);
    if (seen.count(key)) {
      const GenCombination& prev = alg->bracket(i, j);
      if (prev != value) throw ParseError(l.pos, "bracket conflicts with an earlier line");
      continue;
    }
    seen[key] = l.pos;
    alg->set_bracket(i, j, value);
  }
  return alg;
}

std::string emit_algebra(const LieAlgebra& algebra) {
  std::ostringstream os;
  os << "name: " << algebra.name() << "\n";
  os << "n: " << algebra.n() << "\n";
  const int size = static_cast<int>(algebra.size());
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      const auto& r = algebra.bracket(i, j);
      if (r.empty()) continue;
      os << "[" << algebra.generator(i).str() << ", " << algebra.generator(j).str() << "] =";
      bool first = true;
      for (const auto& [g, c] : r) {
        const bool neg = c.terms().begin()->second < 0;
        os << (first ? (neg ? " -" : "") : (neg ? " -" : " +")) << " " << coefficient_text(c) << algebra.generator(g).str();
        first = false;
      }
      os << "\n";
    }
  return os.str();
}

}  // namespace gwzw
