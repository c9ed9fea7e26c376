#include "probkb/kb_text.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace probkb {

namespace {

struct Token {
  enum Kind { Ident, Number, Bang, Amp, LParen, RParen, Bar, Arrow, RevArrow,
              LBracket, RBracket, Comma, End } kind;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::End, ""};
      return;
    }
    char c = text_[pos_];
    auto one = [&](Token::Kind k) {
      tok_ = {k, std::string(1, c)};
      ++pos_;
    };
    switch (c) {
      case '!': one(Token::Bang); return;
      case '&': one(Token::Amp); return;
      case '(': one(Token::LParen); return;
      case ')': one(Token::RParen); return;
      case '|': one(Token::Bar); return;
      case '[': one(Token::LBracket); return;
      case ']': one(Token::RBracket); return;
      case ',': one(Token::Comma); return;
      default: break;
    }
    if (c == '=' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_ = {Token::Arrow, "=>"};
      pos_ += 2;
      return;
    }
    if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      tok_ = {Token::RevArrow, "<="};
      pos_ += 2;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.' || text_[pos_] == '/'))
        ++pos_;
      tok_ = {Token::Number, std::string(text_.substr(start, pos_ - start))};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_ = {Token::Ident, std::string(text_.substr(start, pos_ - start))};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  size_t pos_ = 0;
  Token tok_{Token::End, ""};
};

// or_expr := and_expr ('v' and_expr)*
// and_expr := unary ('&' unary)*
// unary := '!' unary | primary
// primary := '(' or_expr ')' | atom | true | false
class EventParser {
 public:
  EventParser(Lexer& lex, const AtomTable& atoms) : lex_(lex), atoms_(atoms) {}

  Event parse_or() {
    Event e = parse_and();
    while (lex_.peek().kind == Token::Ident && lex_.peek().text == "v") {
      lex_.take();
      e = Event::lor(std::move(e), parse_and());
    }
    return e;
  }

 private:
  Event parse_and() {
    Event e = parse_unary();
    while (lex_.peek().kind == Token::Amp) {
      lex_.take();
      e = Event::land(std::move(e), parse_unary());
    }
    return e;
  }

  Event parse_unary() {
    if (lex_.peek().kind == Token::Bang) {
      lex_.take();
      return Event::lnot(parse_unary());
    }
    return parse_primary();
  }

  Event parse_primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::LParen: {
        Event e = parse_or();
        if (lex_.take().kind != Token::RParen) throw ParseError("expected ')'");
        return e;
      }
      case Token::Ident: {
        if (t.text == "true") return Event::top();
        if (t.text == "false") return Event::bottom();
        if (t.text == "v") throw ParseError("'v' is the or-operator, not an atom");
        int idx = atoms_.index_of(t.text);
        if (idx < 0) throw ParseError("unknown atom '" + t.text + "'");
        return Event::atom(idx);
      }
      default:
        throw ParseError("expected an event, got '" + t.text + "'");
    }
  }

  Lexer& lex_;
  const AtomTable& atoms_;
};

Rational parse_bound(const Token& t) {
  if (t.kind != Token::Number) throw ParseError("expected a probability bound");
  auto r = parse_rational(t.text);
  if (!r) throw ParseError("malformed number '" + t.text + "'");
  return *r;
}

void expect(Lexer& lex, Token::Kind kind, const char* what) {
  if (lex.take().kind != kind) throw ParseError(std::string("expected ") + what);
}

// "( psi | phi )" with optional "[l, u]".
Query parse_query_tokens(Lexer& lex, const AtomTable& atoms) {
  expect(lex, Token::LParen, "'('");
  EventParser ep(lex, atoms);
  Event psi = ep.parse_or();
  expect(lex, Token::Bar, "'|'");
  Event phi = ep.parse_or();
  expect(lex, Token::RParen, "')'");
  Query q{ConditionalEvent{std::move(psi), std::move(phi)}, {}, {}};
  if (lex.peek().kind == Token::LBracket) {
    lex.take();
    q.lower = parse_bound(lex.take());
    expect(lex, Token::Comma, "','");
    q.upper = parse_bound(lex.take());
    expect(lex, Token::RBracket, "']'");
  }
  return q;
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
  KnowledgeBase kb;
  bool saw_atoms = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    try {
      auto colon = line.find(':', start);
      if (colon == std::string::npos) throw ParseError("expected 'atoms:', 'L:' or 'P:'");
      std::string head = line.substr(start, colon - start);
      std::string rest = line.substr(colon + 1);
      if (head == "atoms") {
        if (saw_atoms) throw ParseError("duplicate atoms: line");
        std::istringstream names(rest);
        std::string name;
        while (names >> name) {
          if (!AtomTable::valid_name(name)) throw ParseError("invalid atom name '" + name + "'");
          if (kb.atoms.index_of(name) >= 0) throw ParseError("duplicate atom '" + name + "'");
          kb.atoms.names.push_back(name);
        }
        saw_atoms = true;
      } else if (head == "L") {
        if (!saw_atoms) throw ParseError("atoms: line must come first");
        Lexer lex(rest);
        EventParser ep(lex, kb.atoms);
        Event a = ep.parse_or();
        expect(lex, Token::Arrow, "'=>'");
        Event b = ep.parse_or();
        if (lex.peek().kind != Token::End) throw ParseError("trailing input on L line");
        kb.logical.push_back({std::move(b), std::move(a)});  // a => b: consequent b
      } else if (head == "P") {
        if (!saw_atoms) throw ParseError("atoms: line must come first");
        Lexer lex(rest);
        Query q = parse_query_tokens(lex, kb.atoms);
        if (lex.peek().kind != Token::End) throw ParseError("trailing input on P line");
        if (!q.lower || !q.upper) throw ParseError("P line needs an interval [l, u]");
        kb.conditional.push_back({std::move(q.cond), std::move(*q.lower), std::move(*q.upper)});
      } else {
        throw ParseError("unknown line kind '" + head + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!saw_atoms) throw ParseError("missing atoms: line");
  return kb;
}

namespace {

// Precedence-aware printer: 0 = or context, 1 = and context, 2 = unary.
void print_event(std::ostream& out, const Event& e, const AtomTable& atoms, int prec) {
  switch (e.kind()) {
    case NodeKind::Bottom:
      out << "false";
      return;
    case NodeKind::Top:
      out << "true";
      return;
    case NodeKind::Atom: {
      int idx = e.atom_index();
      if (idx >= atoms.size()) throw StructuralError("atom index outside table in printer");
      out << atoms.names[idx];
      return;
    }
    case NodeKind::Not:
      out << "!";
      print_event(out, e.child(), atoms, 2);
      return;
    case NodeKind::And: {
      bool paren = prec >= 2;
      if (paren) out << "(";
      print_event(out, e.left(), atoms, 1);
      out << " & ";
      print_event(out, e.right(), atoms, 1);
      if (paren) out << ")";
      return;
    }
  }
}

}  // namespace

std::string event_to_string(const Event& e, const AtomTable& atoms) {
  std::ostringstream out;
  print_event(out, e, atoms, 0);
  return out.str();
}

std::string query_to_string(const ConditionalEvent& q, const AtomTable& atoms) {
  return "(" + event_to_string(q.consequent, atoms) + " | " +
         event_to_string(q.antecedent, atoms) + ")";
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  out << "atoms:";
  for (const auto& name : kb.atoms.names) out << " " << name;
  out << "\n";
  for (const auto& lc : kb.logical)
    out << "L: " << event_to_string(lc.antecedent, kb.atoms) << " => "
        << event_to_string(lc.consequent, kb.atoms) << "\n";
  for (const auto& cc : kb.conditional)
    out << "P: " << query_to_string(cc.cond, kb.atoms) << " [" << to_fraction(cc.lower)
        << ", " << to_fraction(cc.upper) << "]\n";
  return out.str();
}

Event parse_event(std::string_view text, const AtomTable& atoms) {
  Lexer lex(text);
  EventParser ep(lex, atoms);
  Event e = ep.parse_or();
  if (lex.peek().kind != Token::End) throw ParseError("trailing input after event");
  return e;
}

Query parse_query(std::string_view text, const AtomTable& atoms) {
  Lexer lex(text);
  Query q = parse_query_tokens(lex, atoms);
  if (lex.peek().kind != Token::End) throw ParseError("trailing input after query");
  return q;
}

DefaultQuery parse_default_query(std::string_view text, const AtomTable& atoms) {
  Lexer lex(text);
  EventParser ep(lex, atoms);
  Event psi = ep.parse_or();
  expect(lex, Token::RevArrow, "'<='");
  Event phi = ep.parse_or();
  if (lex.peek().kind != Token::End) throw ParseError("trailing input after query");
  return DefaultQuery{std::move(psi), std::move(phi)};
}

}  // namespace probkb
