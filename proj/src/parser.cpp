#include "fwhile/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace fwhile {

namespace {

enum class Tok {
  Ident, Int,
  KwSkip, KwIf, KwThen, KwElse, KwWhile, KwDo, KwFork,
  Assign, Semi, LBrace, RBrace,
  Plus, Minus, Star, Eq, Le, Lt,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t begin;
  std::size_t end;
};

const char* tokName(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::KwSkip: return "'skip'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwDo: return "'do'";
    case Tok::KwFork: return "'fork'";
    case Tok::Assign: return "':='";
    case Tok::Semi: return "';'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Eq: return "'='";
    case Tok::Le: return "'<='";
    case Tok::Lt: return "'<'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < n && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                       src[i] == '_')) {
        ++i;
      }
      std::string word(src.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "skip") kind = Tok::KwSkip;
      else if (word == "if") kind = Tok::KwIf;
      else if (word == "then") kind = Tok::KwThen;
      else if (word == "else") kind = Tok::KwElse;
      else if (word == "while") kind = Tok::KwWhile;
      else if (word == "do") kind = Tok::KwDo;
      else if (word == "fork") kind = Tok::KwFork;
      out.push_back({kind, std::move(word), start, i});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Int, std::string(src.substr(start, i - start)),
                     start, i});
      continue;
    }
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, c), start, start + 1});
      ++i;
    };
    switch (c) {
      case ';': single(Tok::Semi); break;
      case '{': single(Tok::LBrace); break;
      case '}': single(Tok::RBrace); break;
      case '+': single(Tok::Plus); break;
      case '-': single(Tok::Minus); break;
      case '*': single(Tok::Star); break;
      case '=': single(Tok::Eq); break;
      case '<':
        if (i + 1 < n && src[i + 1] == '=') {
          out.push_back({Tok::Le, "<=", start, start + 2});
          i += 2;
        } else {
          single(Tok::Lt);
        }
        break;
      case ':':
        if (i + 1 < n && src[i + 1] == '=') {
          out.push_back({Tok::Assign, ":=", start, start + 2});
          i += 2;
        } else {
          throw ParseError("expected ':=' after ':'", {start, start + 1});
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         {start, start + 1});
    }
  }
  out.push_back({Tok::End, "", n, n});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Program parseProgram() {
    StmtPtr root = parseSeq();
    expect(Tok::End);
    Program p(std::move(root));
    renumber(p);
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token advance() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  Token expect(Tok k) {
    if (!at(k)) {
      throw ParseError(std::string("expected ") + tokName(k) + ", found " +
                           tokName(peek().kind),
                       {peek().begin, peek().end});
    }
    return advance();
  }

  bool atStmtStart() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::KwSkip:
      case Tok::KwIf:
      case Tok::KwWhile:
      case Tok::KwFork:
        return true;
      default:
        return false;
    }
  }

  StmtPtr parseSeq() {
    std::vector<StmtPtr> stmts;
    stmts.push_back(parseStmt());
    while (at(Tok::Semi)) {
      advance();
      if (!atStmtStart()) break;  // trailing separator
      stmts.push_back(parseStmt());
    }
    // Right-associate.
    StmtPtr result = std::move(stmts.back());
    for (std::size_t i = stmts.size() - 1; i-- > 0;) {
      SourceSpan span{stmts[i]->span.begin, result->span.end};
      result = makeStmt(Seq{std::move(stmts[i]), std::move(result)}, span);
    }
    return result;
  }

  StmtPtr parseBlock() {
    expect(Tok::LBrace);
    StmtPtr body = parseSeq();
    expect(Tok::RBrace);
    return body;
  }

  StmtPtr parseStmt() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        Token name = advance();
        expect(Tok::Assign);
        auto [rhs, end] = parseAExpr();
        return makeStmt(Assign{name.text, std::move(rhs)}, {name.begin, end});
      }
      case Tok::KwSkip: {
        Token kw = advance();
        return makeStmt(Skip{}, {kw.begin, kw.end});
      }
      case Tok::KwIf: {
        Token kw = advance();
        BExpr cond = parseBExpr();
        expect(Tok::KwThen);
        StmtPtr thenBranch = parseBlock();
        expect(Tok::KwElse);
        StmtPtr elseBranch = parseBlock();
        std::size_t end = toks_[pos_ - 1].end;
        return makeStmt(
            If{cond, std::move(thenBranch), std::move(elseBranch)},
            {kw.begin, end});
      }
      case Tok::KwWhile: {
        Token kw = advance();
        BExpr cond = parseBExpr();
        expect(Tok::KwDo);
        StmtPtr body = parseBlock();
        std::size_t end = toks_[pos_ - 1].end;
        return makeStmt(While{cond, std::move(body)}, {kw.begin, end});
      }
      case Tok::KwFork: {
        Token kw = advance();
        expect(Tok::LBrace);
        Fork fork;
        while (at(Tok::LBrace)) {
          fork.threads.push_back(parseBlock());
          if (at(Tok::Semi)) advance();
        }
        if (fork.threads.empty()) {
          throw ParseError("expected at least one '{' thread block in fork",
                           {peek().begin, peek().end});
        }
        Token close = expect(Tok::RBrace);
        return makeStmt(std::move(fork), {kw.begin, close.end});
      }
      default:
        throw ParseError(std::string("expected statement, found ") +
                             tokName(t.kind),
                         {t.begin, t.end});
    }
  }

  Literal parseLiteral() {
    if (at(Tok::Ident)) {
      return Literal::var(advance().text);
    }
    bool negative = false;
    if (at(Tok::Minus)) {
      advance();
      negative = true;
    }
    Token num = expect(Tok::Int);
    errno = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(num.text);
    } catch (const std::out_of_range&) {
      throw ParseError("integer literal out of range", {num.begin, num.end});
    }
    return Literal::num(negative ? -value : value);
  }

  std::pair<AExpr, std::size_t> parseAExpr() {
    Literal first = parseLiteral();
    std::optional<AOp> op;
    switch (peek().kind) {
      case Tok::Plus: op = AOp::Add; break;
      case Tok::Minus: op = AOp::Sub; break;
      case Tok::Star: op = AOp::Mul; break;
      default: break;
    }
    if (!op) return {AExpr::lit(std::move(first)), toks_[pos_ - 1].end};
    advance();
    Literal second = parseLiteral();
    return {AExpr::bin(*op, std::move(first), std::move(second)),
            toks_[pos_ - 1].end};
  }

  BExpr parseBExpr() {
    Literal lhs = parseLiteral();
    BOp op;
    switch (peek().kind) {
      case Tok::Eq: op = BOp::Eq; break;
      case Tok::Le: op = BOp::Le; break;
      case Tok::Lt: op = BOp::Lt; break;
      default:
        throw ParseError(std::string("expected comparison operator, found ") +
                             tokName(peek().kind),
                         {peek().begin, peek().end});
    }
    advance();
    Literal rhs = parseLiteral();
    return BExpr{op, std::move(lhs), std::move(rhs)};
  }

  std::vector<Token> toks_;
  std::size_t pos_{0};
};

}  // namespace

Program parse(std::string_view source) {
  Parser parser(source);
  return parser.parseProgram();
}

std::pair<std::size_t, std::size_t> lineColOf(std::string_view source,
                                              std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace fwhile
