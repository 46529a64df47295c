#include <algorithm>
#include <cctype>
#include <charconv>

#include "cwq/errors.hpp"
#include "cwq/expr.hpp"

namespace cwq {

namespace {

struct Token {
  enum Kind { Open, Close, Atom, End } kind;
  std::string_view text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    SourcePos pos{line_, column_};
    if (at_ >= src_.size()) return {Token::End, {}, pos};
    char c = src_[at_];
    if (c == '(' || c == ')') {
      advance();
      return {c == '(' ? Token::Open : Token::Close, src_.substr(at_ - 1, 1), pos};
    }
    std::size_t start = at_;
    while (at_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[at_])) && src_[at_] != '(' &&
           src_[at_] != ')') {
      advance();
    }
    return {Token::Atom, src_.substr(start, at_ - start), pos};
  }

  // Rest of the current line, used for the header.
  std::string_view line_rest() {
    std::size_t start = at_;
    while (at_ < src_.size() && src_[at_] != '\n') advance();
    return src_.substr(start, at_ - start);
  }

  void skip_space() {
    while (at_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[at_]))) advance();
  }

  SourcePos pos() const { return {line_, column_}; }

 private:
  void advance() {
    if (src_[at_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++at_;
  }

  std::string_view src_;
  std::size_t at_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Open: return "'('";
    case Token::Close: return "')'";
    case Token::End: return "end of input";
    case Token::Atom: return "'" + std::string(t.text) + "'";
  }
  return "?";
}

[[noreturn]] void fail(const std::string& message, SourcePos pos) { throw ParseError(message, pos.line, pos.column); }

bool valid_id(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

int parse_int(const Token& t, const char* what) {
  if (t.kind != Token::Atom) fail(std::string("expected ") + what + ", found " + describe(t), t.pos);
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    fail(std::string("expected ") + what + ", found " + describe(t), t.pos);
  }
  return value;
}

class Parser {
 public:
  Parser(Lexer& lex, int k) : lex_(lex), k_(k) {}

  ExprPtr run() {
    struct Frame {
      enum Kind { U, R, J } kind;
      SourcePos pos;
      Color a = 0, b = 0;
      std::vector<ExprPtr> kids;
    };
    std::vector<Frame> stack;
    ExprPtr root;
    while (!root) {
      Token open = lex_.next();
      if (open.kind != Token::Open) fail("expected '(' but found " + describe(open), open.pos);
      Token head = lex_.next();
      if (head.kind != Token::Atom) fail("expected an operator after '(' but found " + describe(head), head.pos);

      ExprPtr done;
      if (head.text == "v") {
        Token id = lex_.next();
        if (id.kind != Token::Atom || !valid_id(id.text)) {
          fail("expected a vertex id matching [A-Za-z0-9_.-]+, found " + describe(id), id.pos);
        }
        Token ct = lex_.next();
        Color c = parse_int(ct, "a colour");
        check_color(c, ct.pos);
        expect_close();
        done = make_leaf(std::string(id.text), c, open.pos);
      } else if (head.text == "union") {
        stack.push_back({Frame::U, open.pos, 0, 0, {}});
        continue;
      } else if (head.text == "recolor" || head.text == "join") {
        Token ta = lex_.next();
        Color a = parse_int(ta, "a colour");
        check_color(a, ta.pos);
        Token tb = lex_.next();
        Color b = parse_int(tb, "a colour");
        check_color(b, tb.pos);
        if (a == b) fail(std::string(head.text) + " " + std::to_string(a) + " " + std::to_string(b) + ": i and j must differ", head.pos);
        stack.push_back({head.text == "join" ? Frame::J : Frame::R, open.pos, a, b, {}});
        continue;
      } else {
        fail("unknown operator " + describe(head), head.pos);
      }

      while (done) {
        if (stack.empty()) {
          root = std::move(done);
          break;
        }
        Frame& top = stack.back();
        top.kids.push_back(std::move(done));
        const std::size_t arity = top.kind == Frame::U ? 2 : 1;
        if (top.kids.size() < arity) break;
        expect_close();
        switch (top.kind) {
          case Frame::U: done = make_union(top.kids[0], top.kids[1], top.pos); break;
          case Frame::R: done = make_recolor(top.a, top.b, top.kids[0], top.pos); break;
          case Frame::J: done = make_join(top.a, top.b, top.kids[0], top.pos); break;
        }
        stack.pop_back();
      }
    }
    Token tail = lex_.next();
    if (tail.kind != Token::End) fail("unexpected " + describe(tail) + " after the expression", tail.pos);
    return root;
  }

 private:
  void check_color(Color c, SourcePos pos) {
    if (c < 1 || c > k_) fail("colour " + std::to_string(c) + " is outside 1.." + std::to_string(k_), pos);
  }

  void expect_close() {
    Token t = lex_.next();
    if (t.kind != Token::Close) fail("expected ')' but found " + describe(t), t.pos);
  }

  Lexer& lex_;
  int k_;
};

int parse_header(Lexer& lex) {
  lex.skip_space();
  SourcePos pos = lex.pos();
  std::string_view line = lex.line_rest();
  // "cw k=<int>", whitespace-tolerant around '='.
  std::string compact;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.rfind("cwk=", 0) != 0) fail("expected header 'cw k=<int>'", pos);
  int k = 0;
  const char* first = compact.data() + 4;
  const char* last = compact.data() + compact.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc() || ptr != last || first == last) fail("malformed palette size in header", pos);
  if (k < 1) fail("palette size must be at least 1", pos);
  return k;
}

}  // namespace

CwExpr parse(std::string_view text) {
  Lexer lex(text);
  int k = parse_header(lex);
  Parser parser(lex, k);
  return CwExpr{k, parser.run()};
}

CwExpr parse_expression(std::string_view text, int k) {
  if (k < 1) throw InputError("palette size must be at least 1");
  Lexer lex(text);
  Parser parser(lex, k);
  return CwExpr{k, parser.run()};
}

std::string print(const CwExpr& e) {
  if (!e.root) throw InputError("empty expression");
  std::string out = "cw k=" + std::to_string(e.k) + "\n";
  struct Item {
    const ExprNode* node;
    std::size_t depth;
    std::size_t closers;
  };
  std::vector<Item> stack{{e.root.get(), 0, 0}};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    out.append(2 * item.depth, ' ');
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            out += "(v " + op.vertex + " " + std::to_string(op.color) + ")";
            out.append(item.closers, ')');
          } else if constexpr (std::is_same_v<T, Union>) {
            out += "(union";
            stack.push_back({op.right.get(), item.depth + 1, item.closers + 1});
            stack.push_back({op.left.get(), item.depth + 1, 0});
          } else if constexpr (std::is_same_v<T, Recolor>) {
            out += "(recolor " + std::to_string(op.from) + " " + std::to_string(op.to);
            stack.push_back({op.child.get(), item.depth + 1, item.closers + 1});
          } else {
            out += "(join " + std::to_string(op.first) + " " + std::to_string(op.second);
            stack.push_back({op.child.get(), item.depth + 1, item.closers + 1});
          }
        },
        item.node->op);
    out += '\n';
  }
  return out;
}

}  // namespace cwq
