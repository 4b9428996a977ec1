#include "moralswf/scenario.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace moralswf {
namespace {

struct Pos {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Token {
  std::string text;
  Pos pos;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message, Pos pos,
                       ErrorCode inner = ErrorCode::SyntaxError) {
  std::string where = pos.line ? "line " + std::to_string(pos.line) + ", column " +
                                     std::to_string(pos.column) + ": "
                               : std::string();
  throw ScenarioError(code, where + message, pos.line, pos.column,
                      code == ErrorCode::ValidationError ? inner : code);
}

[[noreturn]] void invalid(ErrorCode inner, const std::string& message, Pos pos) {
  fail(ErrorCode::ValidationError, message, pos, inner);
}

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Trims `text` (a slice of a line starting at column `col`) and returns the
// trimmed token with its own column.
Token trimmed(std::string_view text, std::size_t line, std::size_t col) {
  std::size_t b = 0, e = text.size();
  while (b < e && isSpace(text[b])) ++b;
  while (e > b && isSpace(text[e - 1])) --e;
  return {std::string(text.substr(b, e - b)), {line, col + b}};
}

Rational number(const Token& tok) {
  try {
    return Rational::parse(tok.text);
  } catch (const Error& e) {
    fail(ErrorCode::NumberFormat, e.what(), tok.pos);
  }
}

struct TheoryDraft {
  Token id;
  std::optional<Token> credence;
  std::vector<std::pair<Token, Token>> evaluations;  // (action, value)
};

struct Header {
  std::map<std::string, std::pair<Token, Token>> fields;  // key -> (key, value)
};

const char* const kHeaderKeys[] = {"version", "actions", "swf", "k", "trim-mode"};

bool isHeaderKey(const std::string& key) {
  for (const char* k : kHeaderKeys) {
    if (key == k) return true;
  }
  return false;
}

std::vector<Token> splitList(const Token& value) {
  std::vector<Token> items;
  std::size_t start = 0;
  const std::string& s = value.text;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string_view piece =
        std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    Token item = trimmed(piece, value.pos.line, value.pos.column + start);
    if (item.text.empty()) fail(ErrorCode::SyntaxError, "empty entry in action list", item.pos);
    items.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

}  // namespace

ScenarioDocument parseScenario(std::string_view text) {
  Header header;
  std::vector<TheoryDraft> theories;
  Pos end{1, 1};

  std::size_t lineNo = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    std::string_view raw = text.substr(offset, nl == std::string_view::npos ? std::string_view::npos
                                                                            : nl - offset);
    ++lineNo;
    end = {lineNo, raw.size() + 1};
    offset = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    // '#' starts a comment anywhere; no identifier or number may contain it.
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Token line = trimmed(raw, lineNo, 1);
    if (line.text.empty()) continue;

    if (line.text.front() == '[') {
      if (line.text.back() != ']') {
        fail(ErrorCode::SyntaxError, "section header is missing ']'", line.pos);
      }
      std::string_view inner = std::string_view(line.text).substr(1, line.text.size() - 2);
      Token body = trimmed(inner, lineNo, line.pos.column + 1);
      std::size_t gap = body.text.find_first_of(" \t");
      if (gap == std::string::npos || body.text.substr(0, gap) != "theory") {
        fail(ErrorCode::SyntaxError, "expected '[theory <id>]'", body.pos);
      }
      Token id = trimmed(std::string_view(body.text).substr(gap), lineNo, body.pos.column + gap);
      if (!isValidIdentifier(id.text)) {
        invalid(ErrorCode::InvalidIdentifier, "invalid theory id '" + id.text + "'", id.pos);
      }
      for (const auto& t : theories) {
        if (t.id.text == id.text) {
          invalid(ErrorCode::DuplicateTheoryId, "duplicate theory '" + id.text + "'", id.pos);
        }
      }
      theories.push_back({std::move(id), std::nullopt, {}});
      continue;
    }

    std::size_t eq = line.text.find('=');
    if (eq == std::string::npos) fail(ErrorCode::SyntaxError, "expected 'key = value'", line.pos);
    Token key = trimmed(std::string_view(line.text).substr(0, eq), lineNo, line.pos.column);
    Token value = trimmed(std::string_view(line.text).substr(eq + 1), lineNo,
                          line.pos.column + eq + 1);
    if (key.text.empty()) fail(ErrorCode::SyntaxError, "missing key before '='", line.pos);
    if (value.text.empty()) {
      fail(ErrorCode::SyntaxError, "missing value for '" + key.text + "'", value.pos);
    }

    if (theories.empty()) {
      if (!isHeaderKey(key.text)) {
        fail(ErrorCode::SyntaxError, "unknown field '" + key.text + "'", key.pos);
      }
      if (header.fields.count(key.text)) {
        fail(ErrorCode::SyntaxError, "duplicate field '" + key.text + "'", key.pos);
      }
      header.fields.emplace(key.text, std::make_pair(key, value));
      continue;
    }

    TheoryDraft& theory = theories.back();
    if (key.text == "credence") {
      if (theory.credence) {
        fail(ErrorCode::SyntaxError, "duplicate credence for theory '" + theory.id.text + "'",
             key.pos);
      }
      theory.credence = value;
      continue;
    }
    for (const auto& [a, v] : theory.evaluations) {
      if (a.text == key.text) {
        fail(ErrorCode::SyntaxError,
             "duplicate evaluation of '" + key.text + "' in theory '" + theory.id.text + "'",
             key.pos);
      }
    }
    theory.evaluations.emplace_back(key, value);
  }

  auto field = [&](const char* name) -> const std::pair<Token, Token>* {
    auto it = header.fields.find(name);
    return it == header.fields.end() ? nullptr : &it->second;
  };

  if (const auto* v = field("version")) {
    if (v->second.text != std::to_string(kScenarioVersion)) {
      fail(ErrorCode::SyntaxError, "unsupported version '" + v->second.text + "'", v->second.pos);
    }
  }

  const auto* actionsField = field("actions");
  if (!actionsField) fail(ErrorCode::SyntaxError, "missing 'actions' field", end);
  std::vector<ActionId> actionIds;
  for (const auto& item : splitList(actionsField->second)) {
    if (!isValidIdentifier(item.text) || item.text == "credence") {
      invalid(ErrorCode::InvalidIdentifier, "invalid action id '" + item.text + "'", item.pos);
    }
    for (const auto& a : actionIds) {
      if (a == item.text) {
        invalid(ErrorCode::DuplicateActionId, "duplicate action '" + item.text + "'", item.pos);
      }
    }
    actionIds.push_back(item.text);
  }
  ActionSet actions(actionIds);

  std::optional<SwfSpec> swf;
  const auto* swfField = field("swf");
  const auto* kField = field("k");
  const auto* modeField = field("trim-mode");
  if (swfField) {
    auto kind = parseSwfKind(swfField->second.text);
    if (!kind) {
      invalid(ErrorCode::InvalidSpec, "unknown functional '" + swfField->second.text + "'",
              swfField->second.pos);
    }
    swf = SwfSpec{*kind, std::nullopt, TrimMode::Literal};
  }
  if (kField) {
    if (!swf || swf->kind != SwfKind::Kthm) {
      invalid(ErrorCode::InvalidSpec, "'k' is only allowed with 'swf = kthm'", kField->first.pos);
    }
    swf->k = number(kField->second);
  }
  if (modeField) {
    if (!swf || swf->kind != SwfKind::Kthm) {
      invalid(ErrorCode::InvalidSpec, "'trim-mode' is only allowed with 'swf = kthm'",
              modeField->first.pos);
    }
    auto mode = parseTrimMode(modeField->second.text);
    if (!mode) {
      invalid(ErrorCode::InvalidSpec, "unknown trim mode '" + modeField->second.text + "'",
              modeField->second.pos);
    }
    swf->trimMode = *mode;
  }
  if (swf) {
    try {
      swf->validate();
    } catch (const Error& e) {
      invalid(e.code(), e.what(), kField ? kField->second.pos : swfField->second.pos);
    }
  }

  std::vector<CredencedTheory> members;
  Pos lastCredence = end;
  for (const auto& draft : theories) {
    if (!draft.credence) {
      fail(ErrorCode::SyntaxError, "theory '" + draft.id.text + "' has no credence", draft.id.pos);
    }
    Rational credence = number(*draft.credence);
    if (credence.sign() <= 0 || credence > Rational(1)) {
      invalid(ErrorCode::CredenceOutOfRange,
              "credence of theory '" + draft.id.text + "' is outside (0, 1]", draft.credence->pos);
    }
    lastCredence = draft.credence->pos;
    Theory theory{draft.id.text, {}};
    for (const auto& [action, value] : draft.evaluations) {
      if (!actions.contains(action.text)) {
        invalid(ErrorCode::UnknownAction,
                "theory '" + draft.id.text + "' evaluates undeclared action '" + action.text + "'",
                action.pos);
      }
      theory.evaluations[action.text] = number(value);
    }
    for (const auto& a : actions) {
      if (!theory.evaluations.count(a)) {
        invalid(ErrorCode::MissingEvaluation,
                "theory '" + draft.id.text + "' has no evaluation for action '" + a + "'",
                draft.id.pos);
      }
    }
    members.push_back({std::move(theory), credence});
  }

  EthicalFramework framework(std::move(members));
  try {
    validateFramework(framework, actions);
  } catch (const Error& e) {
    invalid(e.code(), e.what(), lastCredence);
  }
  return {std::move(actions), std::move(framework), std::move(swf)};
}

std::string serializeScenario(const ScenarioDocument& document) {
  std::ostringstream out;
  out << "version = " << kScenarioVersion << '\n';
  out << "actions = ";
  for (std::size_t i = 0; i < document.actions.size(); ++i) {
    if (i) out << ", ";
    out << document.actions.ids()[i];
  }
  out << '\n';
  if (document.defaultSwf) {
    const SwfSpec& swf = *document.defaultSwf;
    out << "swf = " << swfKindName(swf.kind) << '\n';
    if (swf.kind == SwfKind::Kthm && swf.k) {
      out << "k = " << swf.k->str() << '\n';
      out << "trim-mode = " << trimModeName(swf.trimMode) << '\n';
    }
  }
  for (const auto& [theory, credence] : document.framework.members()) {
    out << '\n' << "[theory " << theory.id << "]\n";
    out << "credence = " << credence.str() << '\n';
    for (const auto& a : document.actions) out << a << " = " << theory.at(a).str() << '\n';
  }
  return out.str();
}

ScenarioDocument loadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioError(ErrorCode::SyntaxError, "cannot read scenario file '" + path.string() + "'",
                        0, 0, ErrorCode::SyntaxError);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseScenario(buf.str());
}

void saveScenarioFile(const std::filesystem::path& path, const ScenarioDocument& document) {
  std::ofstream out(path, std::ios::binary);
  out << serializeScenario(document);
  if (!out) {
    throw Error(ErrorCode::ValidationError, "cannot write scenario file '" + path.string() + "'");
  }
}

}  // namespace moralswf
