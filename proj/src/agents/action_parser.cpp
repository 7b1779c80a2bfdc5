#include "phoneagent/agents/action_parser.hpp"

#include <cctype>
#include <optional>

#include "phoneagent/agents/grammar.hpp"
#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    if (!done() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      ++pos_;
      while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  /// Looks ahead for `name =` without consuming anything else.
  std::optional<std::string> keyword() {
    const std::size_t saved = pos_;
    skip_space();
    if (!done() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      std::string name = identifier();
      if (accept('=')) return name;
    }
    pos_ = saved;
    return std::nullopt;
  }

  ArgValue value() {
    skip_space();
    if (peek() == '"') return string_literal();
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.empty() || digits == "-" || digits == "+") fail("expected a number or a quoted string");
    if (peek() == '.') fail("coordinates must be integers");
    try {
      return static_cast<std::int64_t>(std::stoll(digits));
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("cannot parse action '" + std::string(text_) + "': " + message + " at column " +
                     std::to_string(pos_ + 1));
  }

 private:
  std::string string_literal() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (done()) fail("unterminated string");
      const char c = text_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (done()) fail("unterminated escape");
      const char e = text_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CallExpression parse_call(std::string_view raw) {
  std::string text = trim(raw);
  if (text.size() >= 2 && text.front() == '`' && text.back() == '`') text = trim(text.substr(1, text.size() - 2));
  Cursor cur(text);
  CallExpression call;
  call.name = cur.identifier();
  if (cur.accept('(')) {
    if (!cur.accept(')')) {
      do {
        if (auto key = cur.keyword()) {
          for (const auto& [existing, _] : call.named) {
            if (existing == *key) cur.fail("argument '" + *key + "' given twice");
          }
          call.named.emplace_back(std::move(*key), cur.value());
        } else {
          if (!call.named.empty()) cur.fail("positional argument after a named one");
          call.positional.push_back(cur.value());
        }
      } while (cur.accept(','));
      cur.expect(')');
    }
  }
  cur.skip_space();
  if (!cur.done()) cur.fail("unexpected trailing text");
  return call;
}

namespace {

// Lines up positional and named values against an ordered parameter list.
std::vector<ArgValue> arrange(const CallExpression& call, const std::vector<std::string_view>& params) {
  if (call.positional.size() + call.named.size() > params.size() || call.positional.size() > params.size()) {
    throw ParseError(call.name + " takes " + std::to_string(params.size()) + " argument(s)");
  }
  std::vector<std::optional<ArgValue>> slots(params.size());
  for (std::size_t i = 0; i < call.positional.size(); ++i) slots[i] = call.positional[i];
  for (const auto& [name, value] : call.named) {
    std::size_t i = 0;
    while (i < params.size() && params[i] != name) ++i;
    if (i == params.size()) throw ParseError(call.name + " has no parameter '" + name + "'");
    if (slots[i]) throw ParseError(call.name + " parameter '" + name + "' given twice");
    slots[i] = value;
  }
  std::vector<ArgValue> out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!slots[i]) throw ParseError(call.name + " is missing parameter '" + std::string(params[i]) + "'");
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace

Action parse_action(std::string_view text, const LongTermMemory& memory) {
  const CallExpression call = parse_call(text);

  if (call.name == "Stop") {
    if (call.positional.empty() && call.named.empty()) return Stop{};
    const auto values = arrange(call, {"message"});
    const auto* message = std::get_if<std::string>(&values[0]);
    if (message == nullptr) throw ParseError("Stop message must be a string");
    return Stop{*message};
  }

  if (const OperationSpec* spec = find_operation_spec(call.name)) {
    std::vector<std::string_view> params;
    for (const auto& p : spec->params) params.push_back(p.name);
    const auto values = arrange(call, params);
    try {
      return make_operation(call.name, values);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }

  if (const StoredShortcut* stored = memory.find_shortcut(call.name)) {
    const auto& declared = stored->shortcut.arguments;
    std::vector<std::string_view> params(declared.begin(), declared.end());
    const auto values = arrange(call, params);
    ShortcutCall out{call.name, {}};
    for (std::size_t i = 0; i < declared.size(); ++i) out.arguments.emplace_back(declared[i], values[i]);
    return out;
  }

  throw ParseError("unknown action '" + call.name + "'");
}

}  // namespace phoneagent
