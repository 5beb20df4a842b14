#include "pyliteral.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace trustrec::detail {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  nlohmann::json document() {
    nlohmann::json v = value();
    skip_space();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    return s_[pos_];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool consume_word(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  nlohmann::json value() {
    const char c = peek();
    if (c == '{') return dict();
    if (c == '[') return sequence('[', ']');
    if (c == '(') return sequence('(', ')');
    if (c == '\'' || c == '"') return string();
    if ((c == 'u' || c == 'b' || c == 'r') && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '\'' || s_[pos_ + 1] == '"')) {
      ++pos_;
      return string();
    }
    if (consume_word("True")) return true;
    if (consume_word("False")) return false;
    if (consume_word("None")) return nullptr;
    return number();
  }

  nlohmann::json dict() {
    expect('{');
    nlohmann::json out = nlohmann::json::object();
    if (peek() == '}') {
      ++pos_;
      return out;
    }
    while (true) {
      nlohmann::json key = value();
      if (!key.is_string()) key = key.dump();
      expect(':');
      out[key.get<std::string>()] = value();
      const char c = peek();
      ++pos_;
      if (c == '}') return out;
      if (c != ',') fail("expected ',' or '}'");
      if (peek() == '}') {
        ++pos_;
        return out;
      }
    }
  }

  nlohmann::json sequence(char open, char close) {
    expect(open);
    nlohmann::json out = nlohmann::json::array();
    if (peek() == close) {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(value());
      const char c = peek();
      ++pos_;
      if (c == close) return out;
      if (c != ',') fail("expected ',' in sequence");
      if (peek() == close) {
        ++pos_;
        return out;
      }
    }
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::uint32_t hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) fail("truncated escape");
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + pos_ + digits, v, 16);
    if (ec != std::errc() || ptr != s_.data() + pos_ + digits) fail("bad hex escape");
    pos_ += digits;
    return v;
  }

  nlohmann::json string() {
    const char quote = s_[pos_++];
    std::string out;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated string");
      const char c = s_[pos_++];
      if (c == quote) break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= s_.size()) fail("unterminated escape");
      const char e = s_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '0': out += '\0'; break;
        case 'x': append_utf8(out, hex(2)); break;
        case 'u': append_utf8(out, hex(4)); break;
        case 'U': append_utf8(out, hex(8)); break;
        default: out += e; break;
      }
    }
    // Adjacent literals concatenate.
    skip_space();
    if (pos_ < s_.size() && (s_[pos_] == '\'' || s_[pos_] == '"')) out += string().get<std::string>();
    return out;
  }

  nlohmann::json number() {
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    bool is_float = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' || c == 'e' || c == 'E' || ((c == '-' || c == '+') && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))) {
        is_float = true;
        ++pos_;
      } else {
        break;
      }
    }
    std::string_view token = s_.substr(start, pos_ - start);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty() || token == "-") fail("expected a value");
    if (!is_float) {
      std::int64_t v = 0;
      const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec == std::errc() && p == token.data() + token.size()) return v;
    }
    double d = 0.0;
    const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), d);
    if (ec != std::errc() || p != token.data() + token.size()) fail("bad number");
    return d;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

nlohmann::json parse_python_literal(std::string_view text) { return Parser(text).document(); }

}  // namespace trustrec::detail
