#include "addcomb/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "addcomb/error.hpp"

namespace addcomb {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t byte;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  // Next whitespace-delimited token; stops at end of line when same_line is set.
  std::optional<Token> next(bool same_line = false) {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') {
        if (same_line) return std::nullopt;
        ++line_;
      }
      ++pos_;
    }
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    return Token{text_.substr(start, pos_ - start), line_, start};
  }

  // Consumes the rest of the current line; it must be blank.
  void expect_end_of_line(const char* what) {
    while (pos_ < text_.size() && text_[pos_] != '\n') {
      if (!is_space(text_[pos_])) fail(line_, pos_, std::string("unexpected data after ") + what);
      ++pos_;
    }
  }

  [[noreturn]] static void fail(std::size_t line, std::size_t byte, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ", byte " + std::to_string(byte) + ": " + msg);
  }

  std::size_t line() const { return line_; }
  std::size_t pos() const { return pos_; }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::uint64_t parse_hex(const Token& t) {
  if (t.text.empty() || t.text.size() > 8) Lexer::fail(t.line, t.byte, "bad hex code");
  std::uint64_t v = 0;
  for (char c : t.text) {
    unsigned d;
    if (c >= '0' && c <= '9')
      d = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      d = static_cast<unsigned>(c - 'a' + 10);
    else
      Lexer::fail(t.line, t.byte, "invalid hex digit '" + std::string(1, c) + "'");
    v = (v << 4) | d;
  }
  return v;
}

unsigned parse_dim(const Token& t, unsigned cap, const char* what) {
  if (t.text.empty() || t.text.size() > 3) Lexer::fail(t.line, t.byte, std::string("bad ") + what);
  unsigned v = 0;
  for (char c : t.text) {
    if (c < '0' || c > '9') Lexer::fail(t.line, t.byte, std::string("bad ") + what);
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  if (v > cap)
    Lexer::fail(t.line, t.byte, std::string(what) + " exceeds " + std::to_string(cap));
  return v;
}

}  // namespace

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

FnTable parse_fn(std::string_view text) {
  Lexer lex(text);
  const auto n_tok = lex.next();
  if (!n_tok) Lexer::fail(1, 0, "empty function file");
  const unsigned n = parse_dim(*n_tok, kMaxDim, "domain dimension");
  const auto m_tok = lex.next(true);
  if (!m_tok) Lexer::fail(lex.line(), lex.pos(), "header must be \"n m\"");
  const unsigned m = parse_dim(*m_tok, kMaxDim, "codomain dimension");
  if (m == 0) Lexer::fail(m_tok->line, m_tok->byte, "codomain dimension must be at least 1");
  lex.expect_end_of_line("header");
  const std::size_t size = std::size_t{1} << n;
  std::vector<Code> table;
  table.reserve(size);
  while (auto tok = lex.next()) {
    if (table.size() == size) Lexer::fail(tok->line, tok->byte, "more than 2^n entries");
    const std::uint64_t v = parse_hex(*tok);
    if ((v >> m) != 0) Lexer::fail(tok->line, tok->byte, "entry exceeds 2^m");
    table.push_back(static_cast<Code>(v));
  }
  if (table.size() != size) {
    Lexer::fail(lex.line(), lex.pos(),
                "expected " + std::to_string(size) + " entries, found " + std::to_string(table.size()));
  }
  return FnTable(n, m, std::move(table));
}

SubsetF2n parse_set(std::string_view text) {
  Lexer lex(text);
  const auto n_tok = lex.next();
  if (!n_tok) Lexer::fail(1, 0, "empty set file");
  const unsigned n = parse_dim(*n_tok, kMaxSetDim, "dimension");
  lex.expect_end_of_line("header");
  SubsetF2n s(n);
  std::optional<std::uint64_t> prev;
  std::size_t last_line = n_tok->line;
  while (auto tok = lex.next()) {
    if (tok->line == last_line) Lexer::fail(tok->line, tok->byte, "one code per line");
    last_line = tok->line;
    const std::uint64_t v = parse_hex(*tok);
    if ((v >> n) != 0) Lexer::fail(tok->line, tok->byte, "code exceeds 2^n");
    if (prev && v <= *prev) Lexer::fail(tok->line, tok->byte, "codes must be strictly ascending");
    prev = v;
    s.insert(static_cast<Code>(v));
  }
  return s;
}

std::string format_fn(const FnTable& f) {
  std::ostringstream os;
  os << f.dom_dim() << ' ' << f.codom_dim() << '\n' << std::hex;
  const auto t = f.table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << t[i] << ((i % 16 == 15 || i + 1 == t.size()) ? '\n' : ' ');
  }
  return os.str();
}

std::string format_set(const SubsetF2n& s) {
  std::ostringstream os;
  os << s.dim() << '\n' << std::hex;
  s.for_each([&](Code c) { os << c << '\n'; });
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

FnTable read_fn_file(const std::string& path) {
  try {
    return parse_fn(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SubsetF2n read_set_file(const std::string& path) {
  try {
    return parse_set(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const QuadraticForm& q) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Code r : q.quad()) rows.push_back(hex(r));
  return {{"dim", q.dim()}, {"quad", rows}, {"lin", hex(q.lin())}, {"const", q.const_bit()}};
}

QuadraticForm quadratic_from_json(const nlohmann::ordered_json& j) {
  try {
    const unsigned dim = j.at("dim").get<unsigned>();
    std::vector<Code> quad;
    for (const auto& r : j.at("quad")) {
      const std::string s = r.get<std::string>();
      quad.push_back(static_cast<Code>(parse_hex(Token{s, 0, 0})));
    }
    const std::string lin = j.at("lin").get<std::string>();
    return QuadraticForm(dim, std::move(quad), static_cast<Code>(parse_hex(Token{lin, 0, 0})),
                         j.at("const").get<unsigned>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("quadratic form JSON: ") + e.what());
  }
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace addcomb
