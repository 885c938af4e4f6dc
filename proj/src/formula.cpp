#include "edlogic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace edlogic {

// ---------------------------------------------------------------------------
// Propositional AST

namespace {

Prop make_prop(PropNode::Kind kind, std::string name, Prop lhs, Prop rhs) {
  auto node = std::make_shared<PropNode>();
  node->kind = kind;
  node->name = std::move(name);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

}  // namespace

Prop prop_true() { return make_prop(PropNode::Kind::True, {}, nullptr, nullptr); }
Prop prop_false() { return make_prop(PropNode::Kind::False, {}, nullptr, nullptr); }
Prop prop_atom(std::string name) {
  return make_prop(PropNode::Kind::Atom, std::move(name), nullptr, nullptr);
}
Prop prop_not(Prop p) { return make_prop(PropNode::Kind::Not, {}, std::move(p), nullptr); }
Prop prop_and(Prop a, Prop b) {
  return make_prop(PropNode::Kind::And, {}, std::move(a), std::move(b));
}
Prop prop_or(Prop a, Prop b) {
  return make_prop(PropNode::Kind::Or, {}, std::move(a), std::move(b));
}

bool prop_equal(const Prop& a, const Prop& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case PropNode::Kind::True:
    case PropNode::Kind::False: return true;
    case PropNode::Kind::Atom: return a->name == b->name;
    case PropNode::Kind::Not: return prop_equal(a->lhs, b->lhs);
    case PropNode::Kind::And:
    case PropNode::Kind::Or:
      return prop_equal(a->lhs, b->lhs) && prop_equal(a->rhs, b->rhs);
  }
  return false;
}

namespace {

// precedence: | = 0, & = 1, ! = 2, leaf = 3
int prop_prec(const Prop& p) {
  switch (p->kind) {
    case PropNode::Kind::Or: return 0;
    case PropNode::Kind::And: return 1;
    case PropNode::Kind::Not: return 2;
    default: return 3;
  }
}

void print_prop_rec(const Prop& p, int min_prec, std::string& out) {
  int prec = prop_prec(p);
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (p->kind) {
    case PropNode::Kind::True: out += "true"; break;
    case PropNode::Kind::False: out += "false"; break;
    case PropNode::Kind::Atom: out += p->name; break;
    case PropNode::Kind::Not:
      out += "!";
      print_prop_rec(p->lhs, 2, out);
      break;
    case PropNode::Kind::And:
      print_prop_rec(p->lhs, 1, out);
      out += " & ";
      print_prop_rec(p->rhs, 2, out);
      break;
    case PropNode::Kind::Or:
      print_prop_rec(p->lhs, 0, out);
      out += " | ";
      print_prop_rec(p->rhs, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_prop(const Prop& p) {
  std::string out;
  print_prop_rec(p, 0, out);
  return out;
}

void collect_props(const Prop& p, std::vector<std::string>& out) {
  switch (p->kind) {
    case PropNode::Kind::Atom:
      if (std::find(out.begin(), out.end(), p->name) == out.end()) out.push_back(p->name);
      break;
    case PropNode::Kind::Not: collect_props(p->lhs, out); break;
    case PropNode::Kind::And:
    case PropNode::Kind::Or:
      collect_props(p->lhs, out);
      collect_props(p->rhs, out);
      break;
    default: break;
  }
}

// ---------------------------------------------------------------------------
// ED layer

Rel negate_rel(Rel r) {
  switch (r) {
    case Rel::Ge: return Rel::Lt;
    case Rel::Gt: return Rel::Le;
    case Rel::Le: return Rel::Gt;
    case Rel::Lt: return Rel::Ge;
    case Rel::Eq: throw Error("InternalError", "negated equality is not a single relation");
  }
  throw Error("InternalError", "bad relation");
}

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
  }
  return "?";
}

std::string print_basic(const BasicEDFormula& b) {
  std::string out;
  bool first = true;
  for (const auto& [coeff, arg] : b.term.summands) {
    Rat a = coeff;
    if (first) {
      if (is_negative(a)) {
        out += "-";
        a = -a;
      }
    } else {
      if (is_negative(a)) {
        out += " - ";
        a = -a;
      } else {
        out += " + ";
      }
    }
    if (a != 1) out += rat_str(a) + "*";
    out += "ED(" + print_prop(arg) + ")";
    first = false;
  }
  out += " " + rel_str(b.rel) + " " + rat_str(b.bound);
  return out;
}

namespace {

Formula make_formula(FormulaNode::Kind kind, BasicEDFormula basic, Formula lhs, Formula rhs) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = kind;
  node->basic = std::move(basic);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

}  // namespace

Formula f_basic(BasicEDFormula b) {
  return make_formula(FormulaNode::Kind::Basic, std::move(b), nullptr, nullptr);
}
Formula f_not(Formula f) {
  return make_formula(FormulaNode::Kind::Not, {}, std::move(f), nullptr);
}
Formula f_and(Formula a, Formula b) {
  return make_formula(FormulaNode::Kind::And, {}, std::move(a), std::move(b));
}
Formula f_or(Formula a, Formula b) {
  return make_formula(FormulaNode::Kind::Or, {}, std::move(a), std::move(b));
}

namespace {

bool basic_equal(const BasicEDFormula& a, const BasicEDFormula& b) {
  if (a.rel != b.rel || a.bound != b.bound) return false;
  if (a.term.summands.size() != b.term.summands.size()) return false;
  for (std::size_t i = 0; i < a.term.summands.size(); ++i) {
    if (a.term.summands[i].first != b.term.summands[i].first) return false;
    if (!prop_equal(a.term.summands[i].second, b.term.summands[i].second)) return false;
  }
  return true;
}

}  // namespace

bool formula_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaNode::Kind::Basic: return basic_equal(a->basic, b->basic);
    case FormulaNode::Kind::Not: return formula_equal(a->lhs, b->lhs);
    case FormulaNode::Kind::And:
    case FormulaNode::Kind::Or:
      return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
  }
  return false;
}

namespace {

int formula_prec(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Or: return 0;
    case FormulaNode::Kind::And: return 1;
    case FormulaNode::Kind::Not: return 2;
    default: return 3;
  }
}

void print_formula_rec(const Formula& f, int min_prec, std::string& out) {
  int prec = formula_prec(f);
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (f->kind) {
    case FormulaNode::Kind::Basic: out += print_basic(f->basic); break;
    case FormulaNode::Kind::Not:
      out += "!";
      // a bare basic formula after '!' would swallow the relation; always wrap
      if (f->lhs->kind == FormulaNode::Kind::Basic) {
        out += "(" + print_basic(f->lhs->basic) + ")";
      } else {
        print_formula_rec(f->lhs, 2, out);
      }
      break;
    case FormulaNode::Kind::And:
      print_formula_rec(f->lhs, 1, out);
      out += " & ";
      print_formula_rec(f->rhs, 2, out);
      break;
    case FormulaNode::Kind::Or:
      print_formula_rec(f->lhs, 0, out);
      out += " | ";
      print_formula_rec(f->rhs, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_formula_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  End, LParen, RParen, Not, And, Or, Plus, Minus, Star,
  Ge, Le, Gt, Lt, Eq, Ident, Number, KwEd, KwTrue, KwFalse
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      current_ = {k, std::string(1, c), start};
    };
    switch (c) {
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '!': single(Tok::Not); return;
      case '&': single(Tok::And); return;
      case '|': single(Tok::Or); return;
      case '+': single(Tok::Plus); return;
      case '-': single(Tok::Minus); return;
      case '*': single(Tok::Star); return;
      case '=': single(Tok::Eq); return;
      case '>':
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '=') {
          ++pos_;
          current_ = {Tok::Ge, ">=", start};
        } else {
          current_ = {Tok::Gt, ">", start};
        }
        return;
      case '<':
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '=') {
          ++pos_;
          current_ = {Tok::Le, "<=", start};
        } else {
          current_ = {Tok::Lt, "<", start};
        }
        return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      auto digits = [&] {
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      };
      digits();
      if (end < src_.size() && src_[end] == '.') {
        ++end;
        digits();
      } else if (end < src_.size() && src_[end] == '/') {
        ++end;
        digits();
      }
      current_ = {Tok::Number, std::string(src_.substr(pos_, end - pos_)), start};
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      std::string word(src_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "ED")
        current_ = {Tok::KwEd, word, start};
      else if (word == "true")
        current_ = {Tok::KwTrue, word, start};
      else if (word == "false")
        current_ = {Tok::KwFalse, word, start};
      else
        current_ = {Tok::Ident, word, start};
      return;
    }
    throw UnknownToken(start, std::string(1, c));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, "", 0};
};

struct LinExpr {
  std::vector<std::pair<Rat, Prop>> summands;
  Rat constant = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Formula formula() {
    Formula f = parse_or();
    expect_end();
    return f;
  }

  Prop prop_only() {
    Prop p = parse_prop_or();
    expect_end();
    return p;
  }

 private:
  void expect_end() {
    if (lex_.peek().kind != Tok::End)
      throw SyntaxError(lex_.peek().pos, "end of input, got '" + lex_.peek().text + "'");
  }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind)
      throw SyntaxError(lex_.peek().pos, what + ", got '" +
                                             (lex_.peek().kind == Tok::End ? "end of input"
                                                                           : lex_.peek().text) +
                                             "'");
    return lex_.take();
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      f = f_or(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      f = f_and(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    if (lex_.peek().kind == Tok::Not) {
      lex_.take();
      return f_not(parse_unary());
    }
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      Formula f = parse_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_basic();
  }

  Formula parse_basic() {
    LinExpr lhs = parse_linexpr();
    Rel rel;
    switch (lex_.peek().kind) {
      case Tok::Ge: rel = Rel::Ge; break;
      case Tok::Le: rel = Rel::Le; break;
      case Tok::Gt: rel = Rel::Gt; break;
      case Tok::Lt: rel = Rel::Lt; break;
      case Tok::Eq: rel = Rel::Eq; break;
      default: throw SyntaxError(lex_.peek().pos, "comparison operator");
    }
    std::size_t rel_pos = lex_.take().pos;
    LinExpr rhs = parse_linexpr();

    BasicEDFormula b;
    b.term.summands = std::move(lhs.summands);
    for (auto& [coeff, arg] : rhs.summands)
      b.term.summands.emplace_back(-coeff, std::move(arg));
    if (b.term.summands.empty())
      throw SyntaxError(rel_pos, "at least one ED term in a comparison");
    b.rel = rel;
    b.bound = rhs.constant - lhs.constant;
    return f_basic(std::move(b));
  }

  LinExpr parse_linexpr() {
    LinExpr e;
    bool negate = false;
    if (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus)
      negate = lex_.take().kind == Tok::Minus;
    parse_summand(e, negate);
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      negate = lex_.take().kind == Tok::Minus;
      parse_summand(e, negate);
    }
    return e;
  }

  void parse_summand(LinExpr& e, bool negate) {
    Rat coeff = 1;
    bool have_number = false;
    if (lex_.peek().kind == Tok::Number) {
      Token t = lex_.take();
      try {
        coeff = parse_rational(t.text);
      } catch (const FormatError&) {
        throw UnknownToken(t.pos, t.text);
      }
      have_number = true;
    }
    if (negate) coeff = -coeff;
    if (have_number && lex_.peek().kind != Tok::Star) {
      e.constant += coeff;  // bare constant summand
      return;
    }
    if (have_number) expect(Tok::Star, "'*'");
    expect(Tok::KwEd, "'ED'");
    expect(Tok::LParen, "'('");
    Prop arg = parse_prop_or();
    expect(Tok::RParen, "')'");
    e.summands.emplace_back(std::move(coeff), std::move(arg));
  }

  Prop parse_prop_or() {
    Prop p = parse_prop_and();
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      p = prop_or(std::move(p), parse_prop_and());
    }
    return p;
  }

  Prop parse_prop_and() {
    Prop p = parse_prop_unary();
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      p = prop_and(std::move(p), parse_prop_unary());
    }
    return p;
  }

  Prop parse_prop_unary() {
    switch (lex_.peek().kind) {
      case Tok::Not:
        lex_.take();
        return prop_not(parse_prop_unary());
      case Tok::LParen: {
        lex_.take();
        Prop p = parse_prop_or();
        expect(Tok::RParen, "')'");
        return p;
      }
      case Tok::KwTrue: lex_.take(); return prop_true();
      case Tok::KwFalse: lex_.take(); return prop_false();
      case Tok::Ident: return prop_atom(lex_.take().text);
      default: throw SyntaxError(lex_.peek().pos, "proposition");
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula(); }
Prop parse_prop(std::string_view text) { return Parser(text).prop_only(); }

// ---------------------------------------------------------------------------
// DNF

namespace {

// Negation-normal form where negation is absorbed into relations;
// not(t = a) splits into (t < a) | (t > a).
Formula to_nnf(const Formula& f, bool negated) {
  switch (f->kind) {
    case FormulaNode::Kind::Basic: {
      if (!negated) return f;
      const BasicEDFormula& b = f->basic;
      if (b.rel == Rel::Eq) {
        BasicEDFormula lt = b, gt = b;
        lt.rel = Rel::Lt;
        gt.rel = Rel::Gt;
        return f_or(f_basic(std::move(lt)), f_basic(std::move(gt)));
      }
      BasicEDFormula flipped = b;
      flipped.rel = negate_rel(b.rel);
      return f_basic(std::move(flipped));
    }
    case FormulaNode::Kind::Not: return to_nnf(f->lhs, !negated);
    case FormulaNode::Kind::And: {
      Formula l = to_nnf(f->lhs, negated), r = to_nnf(f->rhs, negated);
      return negated ? f_or(std::move(l), std::move(r)) : f_and(std::move(l), std::move(r));
    }
    case FormulaNode::Kind::Or: {
      Formula l = to_nnf(f->lhs, negated), r = to_nnf(f->rhs, negated);
      return negated ? f_and(std::move(l), std::move(r)) : f_or(std::move(l), std::move(r));
    }
  }
  throw Error("InternalError", "bad formula node");
}

using Conjunct = std::vector<BasicEDFormula>;

void check_dnf_size(const std::vector<Conjunct>& dnf, int cap) {
  long total = 0;
  for (const auto& c : dnf) total += static_cast<long>(c.size());
  if (total > cap)
    throw DnfTooLarge("DNF would exceed " + std::to_string(cap) + " literals");
}

std::vector<Conjunct> dnf_of_nnf(const Formula& f, int cap) {
  switch (f->kind) {
    case FormulaNode::Kind::Basic: return {{f->basic}};
    case FormulaNode::Kind::Or: {
      auto l = dnf_of_nnf(f->lhs, cap);
      auto r = dnf_of_nnf(f->rhs, cap);
      l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      check_dnf_size(l, cap);
      return l;
    }
    case FormulaNode::Kind::And: {
      auto l = dnf_of_nnf(f->lhs, cap);
      auto r = dnf_of_nnf(f->rhs, cap);
      std::vector<Conjunct> out;
      out.reserve(l.size() * r.size());
      for (const auto& cl : l)
        for (const auto& cr : r) {
          Conjunct c = cl;
          c.insert(c.end(), cr.begin(), cr.end());
          out.push_back(std::move(c));
          check_dnf_size(out, cap);
        }
      return out;
    }
    case FormulaNode::Kind::Not: break;
  }
  throw Error("InternalError", "negation survived NNF");
}

}  // namespace

std::vector<std::vector<BasicEDFormula>> to_dnf(const Formula& f, int literal_cap) {
  return dnf_of_nnf(to_nnf(f, false), literal_cap);
}

// ---------------------------------------------------------------------------
// Atom basis

namespace {

void collect_formula_props(const Formula& f, std::vector<std::string>& out) {
  switch (f->kind) {
    case FormulaNode::Kind::Basic:
      for (const auto& [coeff, arg] : f->basic.term.summands) collect_props(arg, out);
      break;
    case FormulaNode::Kind::Not: collect_formula_props(f->lhs, out); break;
    case FormulaNode::Kind::And:
    case FormulaNode::Kind::Or:
      collect_formula_props(f->lhs, out);
      collect_formula_props(f->rhs, out);
      break;
  }
}

constexpr int kMaxAtomProps = 5;  // atom index sets are 32-bit masks

}  // namespace

AtomBasis atom_basis(const Formula& f) {
  AtomBasis basis;
  collect_formula_props(f, basis.props);
  std::sort(basis.props.begin(), basis.props.end());
  return basis;
}

AtomSet prop_to_atom_set(const Prop& psi, const AtomBasis& basis) {
  if (basis.k() > kMaxAtomProps)
    throw FormatError("atom basis over " + std::to_string(basis.k()) + " propositions");
  std::vector<std::string> used;
  collect_props(psi, used);
  std::map<std::string, int> index;
  for (int i = 0; i < basis.k(); ++i) index[basis.props[static_cast<std::size_t>(i)]] = i;
  for (const auto& name : used)
    if (!index.count(name)) throw UnknownProposition(name);

  AtomSet set = 0;
  for (std::uint32_t assignment = 0; assignment < (std::uint32_t{1} << basis.k()); ++assignment) {
    bool holds = eval_prop(psi, [&](const std::string& name) {
      return ((assignment >> index[name]) & 1) != 0;
    });
    if (holds) set |= (AtomSet{1} << assignment);
  }
  return set;
}

Prop atom_set_to_prop(AtomSet index_set, const AtomBasis& basis) {
  if (index_set == 0) return prop_false();
  Prop out;
  for (std::uint32_t pattern = 0; pattern < (std::uint32_t{1} << basis.k()); ++pattern) {
    if (!((index_set >> pattern) & 1)) continue;
    Prop atom;
    for (int j = 0; j < basis.k(); ++j) {
      Prop lit = prop_atom(basis.props[static_cast<std::size_t>(j)]);
      if (!((pattern >> j) & 1)) lit = prop_not(std::move(lit));
      atom = atom ? prop_and(std::move(atom), std::move(lit)) : std::move(lit);
    }
    if (!atom) atom = prop_true();  // k = 0
    out = out ? prop_or(std::move(out), std::move(atom)) : std::move(atom);
  }
  return out;
}

std::string atom_set_str(AtomSet set, int atom_count) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < atom_count; ++i)
    if ((set >> i) & 1) {
      if (!first) out += ",";
      out += std::to_string(i + 1);
      first = false;
    }
  out += "}";
  return out;
}

}  // namespace edlogic
