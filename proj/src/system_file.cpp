#include "nds/system_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "nds/errors.hpp"

namespace nds {

namespace {

struct Token {
  enum Kind { Ident, Number, String, Punct, End } kind = End;
  std::string text;
  double number = 0.0;
  int line = 1;
};

class Lexer {
 public:
  Lexer(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      t.kind = Token::Ident;
      t.text = text_.substr(start, pos_ - start);
      return t;
    }
    if (c == '"') {
      const auto end = text_.find('"', pos_ + 1);
      if (end == std::string::npos || text_.find('\n', pos_) < end) fail("unterminated string");
      t.kind = Token::String;
      t.text = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      t.kind = Token::Number;
      t.number = read_number();
      if (peek_char() == '/') {
        ++pos_;
        const double den = read_number();
        if (den == 0.0) fail("zero denominator");
        t.number /= den;
      }
      return t;
    }
    if (std::string("=[]{},").find(c) != std::string::npos) {
      t.kind = Token::Punct;
      t.text = std::string(1, c);
      ++pos_;
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }

 private:
  char peek_char() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  double read_number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first < last && *first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || !std::isfinite(v)) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  const std::string& text_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  Parser(const std::string& text, const std::string& source) : source_(source), lex_(text, source) { advance(); }

  MapSequence run() {
    std::optional<std::string> kind;
    std::optional<long> horizon;
    std::optional<std::vector<PiecewiseLinearMap>> maps;
    int maps_line = 1;
    while (cur_.kind != Token::End) {
      const Token key = expect(Token::Ident, "key");
      expect_punct("=");
      if (key.text == "kind") {
        if (kind) lex_fail(key.line, "duplicate key 'kind'");
        kind = expect(Token::String, "string").text;
        if (*kind != "periodic" && *kind != "finite")
          lex_fail(key.line, "kind must be \"periodic\" or \"finite\"");
      } else if (key.text == "horizon") {
        if (horizon) lex_fail(key.line, "duplicate key 'horizon'");
        const Token t = expect(Token::Number, "integer");
        if (t.number != std::floor(t.number) || t.number < 1) lex_fail(t.line, "horizon must be a positive integer");
        horizon = static_cast<long>(t.number);
      } else if (key.text == "maps") {
        if (maps) lex_fail(key.line, "duplicate key 'maps'");
        maps_line = key.line;
        maps = parse_maps();
      } else {
        lex_fail(key.line, "unknown key '" + key.text + "'");
      }
    }
    if (!kind) lex_fail(cur_.line, "missing key 'kind'");
    if (!maps) lex_fail(cur_.line, "missing key 'maps'");
    if (maps->empty()) lex_fail(maps_line, "maps must not be empty");
    if (*kind == "periodic") {
      if (horizon) lex_fail(cur_.line, "horizon is only valid for finite systems");
      return MapSequence::periodic(std::move(*maps));
    }
    if (!horizon) lex_fail(cur_.line, "finite systems need a horizon");
    if (static_cast<long>(maps->size()) < *horizon) lex_fail(maps_line, "fewer maps than the horizon");
    return MapSequence::finite(std::move(*maps), *horizon);
  }

 private:
  std::vector<PiecewiseLinearMap> parse_maps() {
    std::vector<PiecewiseLinearMap> maps;
    expect_punct("[");
    while (!is_punct("]")) {
      const int line = cur_.line;
      expect_punct("{");
      std::optional<std::vector<double>> bp, vals;
      while (!is_punct("}")) {
        const Token key = expect(Token::Ident, "breakpoints or values");
        expect_punct("=");
        if (key.text == "breakpoints" && !bp) {
          bp = parse_numbers();
        } else if (key.text == "values" && !vals) {
          vals = parse_numbers();
        } else {
          lex_fail(key.line, "unexpected map key '" + key.text + "'");
        }
        if (!is_punct("}")) expect_punct(",");
      }
      advance();
      if (!bp || !vals) lex_fail(line, "map needs both breakpoints and values");
      try {
        maps.emplace_back(std::move(*bp), std::move(*vals));
      } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(line) + ": " + e.what());
      }
      if (!is_punct("]")) expect_punct(",");
    }
    advance();
    return maps;
  }

  std::vector<double> parse_numbers() {
    std::vector<double> out;
    expect_punct("[");
    while (!is_punct("]")) {
      out.push_back(expect(Token::Number, "number").number);
      if (!is_punct("]")) expect_punct(",");
    }
    advance();
    return out;
  }

  void advance() { cur_ = lex_.next(); }
  bool is_punct(const char* p) const { return cur_.kind == Token::Punct && cur_.text == p; }

  Token expect(Token::Kind kind, const char* what) {
    if (cur_.kind != kind) lex_fail(cur_.line, std::string("expected ") + what);
    Token t = cur_;
    advance();
    return t;
  }

  void expect_punct(const char* p) {
    if (!is_punct(p)) lex_fail(cur_.line, std::string("expected '") + p + "'");
    advance();
  }

  [[noreturn]] void lex_fail(int line, const std::string& what) const { throw ParseError(source_, line, what); }

  std::string source_;
  Lexer lex_;
  Token cur_;
};

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string number_list(std::span<const double> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + shortest(xs[i]);
  return out + "]";
}

}  // namespace

MapSequence parse_system(const std::string& text, const std::string& source) {
  return Parser(text, source).run();
}

MapSequence parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read system file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str(), path);
}

std::string serialize_system(const MapSequence& F) {
  std::ostringstream os;
  os << "kind = \"" << (F.is_periodic() ? "periodic" : "finite") << "\"\n";
  if (!F.is_periodic()) os << "horizon = " << *F.horizon() << "\n";
  os << "maps = [\n";
  for (const auto& m : F.maps())
    os << "  { breakpoints = " << number_list(m.breakpoints()) << ", values = " << number_list(m.values())
       << " },\n";
  os << "]\n";
  return os.str();
}

void write_system_file(const std::string& path, const MapSequence& F) {
  std::ofstream out(path);
  if (!out) throw ConfigurationError("cannot write system file '" + path + "'");
  out << serialize_system(F);
}

}  // namespace nds
