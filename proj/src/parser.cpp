#include <cctype>
#include <set>

#include "mcsp/lang.hpp"

namespace mcsp {

namespace {

enum class Tok { Name, Nat, Colon, Equals, Arrow, Ext, Int, BindOp, LBrace, RBrace, Semi, Comma, LParen, RParen, Plus, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string>& reserved() {
  static const std::set<std::string> words{"STOP", "SKIP", "RETURN", "fmap", "addTick", "Empty",
                                           "Unit", "Bool", "Fin", "inl", "inr", "tt",
                                           "true", "false"};
  return words;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Name:
    case Tok::Nat: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourcePos pos{line_, col_};
      if (at_end()) {
        out.push_back({Tok::End, "", pos});
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string s;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                             peek() == '\''))
          s += get();
        out.push_back({Tok::Name, s, pos});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string s;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += get();
        out.push_back({Tok::Nat, s, pos});
      } else if (match("->")) {
        out.push_back({Tok::Arrow, "->", pos});
      } else if (match("[]")) {
        out.push_back({Tok::Ext, "[]", pos});
      } else if (match("|~|")) {
        out.push_back({Tok::Int, "|~|", pos});
      } else if (match(">>=")) {
        out.push_back({Tok::BindOp, ">>=", pos});
      } else {
        Tok k;
        switch (c) {
          case ':': k = Tok::Colon; break;
          case '=': k = Tok::Equals; break;
          case '{': k = Tok::LBrace; break;
          case '}': k = Tok::RBrace; break;
          case ';': k = Tok::Semi; break;
          case ',': k = Tok::Comma; break;
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          case '+': k = Tok::Plus; break;
          default:
            throw ParseError(DiagnosticKind::Syntax,
                             std::string("unexpected character '") + c + "'", pos);
        }
        get();
        out.push_back({k, std::string(1, c), pos});
      }
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek() const { return src_[i_]; }

  char get() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool match(std::string_view s) {
    if (src_.substr(i_, s.size()) != s) return false;
    for (std::size_t k = 0; k < s.size(); ++k) get();
    return true;
  }

  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        get();
      } else if (src_.substr(i_, 2) == "--") {
        while (!at_end() && peek() != '\n') get();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Env file() {
    Env env;
    std::set<std::string> names;
    if (at(Tok::End)) fail("expected a definition");
    while (!at(Tok::End)) {
      Definition d = definition();
      if (!names.insert(d.name).second)
        throw ParseError(DiagnosticKind::Duplicate, "duplicate definition '" + d.name + "'", d.pos);
      env.add(std::move(d));
    }
    return env;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(std::size_t n) const { return toks_[std::min(i_ + n, toks_.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Name) && cur().text == w; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(DiagnosticKind::Syntax, what + ", found " + describe(cur()), cur().pos);
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return toks_[i_++];
  }

  std::string identifier(const char* what) {
    if (!at(Tok::Name) || reserved().count(cur().text)) fail(std::string("expected ") + what);
    return toks_[i_++].text;
  }

  Definition definition() {
    SourcePos pos = cur().pos;
    std::string name = identifier("a definition name");
    expect(Tok::Colon, "':'");
    Choice c = choice();
    expect(Tok::Equals, "'='");
    Term body = proc();
    return Definition{std::move(name), std::move(c), std::move(body), pos};
  }

  Choice choice() {
    Choice left = choice_atom();
    if (at(Tok::Plus)) {
      ++i_;
      return Choice::sum(std::move(left), choice());
    }
    return left;
  }

  Choice choice_atom() {
    if (at_word("Empty")) return ++i_, Choice::empty();
    if (at_word("Unit")) return ++i_, Choice::unit();
    if (at_word("Bool")) return ++i_, Choice::boolean();
    if (at_word("Fin")) {
      ++i_;
      Token n = expect(Tok::Nat, "a size after 'Fin'");
      std::size_t size = std::stoul(n.text);
      if (size == 0) throw ParseError(DiagnosticKind::Syntax, "Fin needs a positive size", n.pos);
      return Choice::fin(size);
    }
    if (at(Tok::LBrace)) {
      SourcePos pos = cur().pos;
      ++i_;
      std::vector<std::string> atoms{identifier("an atom name")};
      while (at(Tok::Comma)) {
        ++i_;
        atoms.push_back(identifier("an atom name"));
      }
      expect(Tok::RBrace, "'}'");
      std::set<std::string> seen(atoms.begin(), atoms.end());
      if (seen.size() != atoms.size())
        throw ParseError(DiagnosticKind::Syntax, "duplicate atom in set literal", pos);
      return Choice::named("", std::move(atoms));
    }
    if (at(Tok::LParen)) {
      ++i_;
      Choice c = choice();
      expect(Tok::RParen, "')'");
      return c;
    }
    fail("expected a choice set");
  }

  Value value() {
    if (at_word("inl")) return ++i_, Value::inl(value());
    if (at_word("inr")) return ++i_, Value::inr(value());
    if (at_word("tt")) return ++i_, Value::unit();
    if (at_word("true")) return ++i_, Value::boolean(true);
    if (at_word("false")) return ++i_, Value::boolean(false);
    if (at(Tok::Nat)) return Value::fin(std::stoul(toks_[i_++].text));
    return Value::atom(identifier("a value"));
  }

  // proc := int_expr (">>=" "{" branch (";" branch)* "}")*
  Term proc() {
    Term t = int_expr();
    while (at(Tok::BindOp)) {
      SourcePos pos = cur().pos;
      ++i_;
      expect(Tok::LBrace, "'{' after '>>='");
      std::vector<Branch> branches{branch()};
      while (at(Tok::Semi)) {
        ++i_;
        branches.push_back(branch());
      }
      expect(Tok::RBrace, "'}' closing the branches");
      t = term::bind(std::move(t), std::move(branches), pos);
    }
    return t;
  }

  Branch branch() {
    Value v = value();
    expect(Tok::Arrow, "'->' after a branch pattern");
    return Branch{std::move(v), proc()};
  }

  Term int_expr() {
    Term left = ext_expr();
    if (at(Tok::Int)) {
      SourcePos pos = cur().pos;
      ++i_;
      return term::int_choice(std::move(left), int_expr(), pos);
    }
    return left;
  }

  Term ext_expr() {
    Term left = prefix_expr();
    if (at(Tok::Ext)) {
      SourcePos pos = cur().pos;
      ++i_;
      return term::ext_choice(std::move(left), ext_expr(), pos);
    }
    return left;
  }

  Term prefix_expr() {
    SourcePos pos = cur().pos;
    if (at_word("fmap")) {
      ++i_;
      ValueMap::Name fn;
      if (at_word("id")) fn = ValueMap::Name::Id;
      else if (at_word("inl")) fn = ValueMap::Name::Inl;
      else if (at_word("inr")) fn = ValueMap::Name::Inr;
      else if (at_word("swap")) fn = ValueMap::Name::Swap;
      else fail("expected one of id, inl, inr, swap after 'fmap'");
      ++i_;
      return term::fmap(fn, prefix_expr(), pos);
    }
    if (at_word("addTick")) {
      ++i_;
      Value v = value();
      return term::add_tick(std::move(v), prefix_expr(), pos);
    }
    if (at(Tok::Name) && ahead(1).kind == Tok::Arrow && !reserved().count(cur().text)) {
      Label l(toks_[i_].text);
      i_ += 2;
      return term::prefix(std::move(l), prefix_expr(), pos);
    }
    return atom();
  }

  Term atom() {
    SourcePos pos = cur().pos;
    if (at_word("STOP")) return ++i_, term::stop(pos);
    if (at_word("SKIP")) {
      ++i_;
      return term::skip(value(), pos);
    }
    if (at_word("RETURN")) {
      ++i_;
      return term::ret(value(), pos);
    }
    if (at(Tok::LParen)) {
      ++i_;
      Term t = proc();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Name) && !reserved().count(cur().text)) return term::ref(toks_[i_++].text, pos);
    fail("expected a process");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ParseError::ParseError(DiagnosticKind kind, const std::string& message, SourcePos pos)
    : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      diag_{kind, message, pos, ""} {}

Env parse(std::string_view text) { return Parser(Lexer(text).run()).file(); }

std::string pretty(const Definition& d) {
  return d.name + " : " + d.annotation.to_string() + " = " + pretty(d.body);
}

std::string pretty(const Env& env) {
  std::string out;
  for (const auto& d : env.definitions()) out += pretty(d) + "\n";
  return out;
}

}  // namespace mcsp
