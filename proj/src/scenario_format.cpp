#include "obsel/scenario_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "obsel/errors.hpp"

namespace obsel {
namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool valid_name(std::string_view name) {
  if (name.empty() || name.front() == '=' || name.front() == '[') return false;
  return std::none_of(name.begin(), name.end(),
                      [](char c) { return c == '#' || std::isspace(static_cast<unsigned char>(c)); });
}

struct Row {
  std::string hypothesis;
  Quantity value;
  std::size_t line;
  std::size_t column;
};

struct ClassBlock {
  std::string name;
  std::size_t line;
  std::vector<Row> rows;
};

struct HypothesisLine {
  std::string name;
  Quantity prior;
  std::size_t line;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ScenarioDocument parse() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos), text_.size());
      std::string_view line = text_.substr(pos, end - pos);
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const auto tokens = tokenize(line);
      if (!tokens.empty()) parse_line(tokens);
      pos = end + 1;
    }
    return finish();
  }

 private:
  enum class Block { kNone, kHypothesis, kClass, kEvidence };

  [[noreturn]] void fail(std::size_t column, const std::string& message) const {
    throw ParseError(line_no_, column, message);
  }

  Quantity number(const Token& t) const {
    try {
      return Quantity::parse(t.text);
    } catch (const Error& e) {
      fail(t.column, "bad number '" + t.text + "': " + e.what());
    }
  }

  std::string identifier(const Token& t) const {
    if (!valid_name(t.text)) fail(t.column, "bad name '" + t.text + "'");
    return t.text;
  }

  // `key = value` or `key=value` starting at tokens[i]; advances i.
  std::pair<Token, Token> pair_at(const std::vector<Token>& tokens, std::size_t& i) const {
    const Token& t = tokens[i];
    const auto eq = t.text.find('=');
    if (eq == std::string::npos) {
      if (i + 2 < tokens.size() && tokens[i + 1].text == "=") {
        auto out = std::make_pair(t, tokens[i + 2]);
        i += 3;
        return out;
      }
      fail(t.column, "expected key=value, found '" + t.text + "'");
    }
    if (eq == 0) fail(t.column, "missing key before '='");
    Token key{t.text.substr(0, eq), t.column};
    if (eq + 1 == t.text.size()) {
      if (i + 1 >= tokens.size()) fail(t.column + eq + 1, "missing value after '='");
      auto out = std::make_pair(key, tokens[i + 1]);
      i += 2;
      return out;
    }
    Token value{t.text.substr(eq + 1), t.column + eq + 1};
    ++i;
    return {key, value};
  }

  std::map<std::string, Token> pairs(const std::vector<Token>& tokens, std::size_t from,
                                     std::initializer_list<std::string_view> allowed) const {
    std::map<std::string, Token> out;
    std::size_t i = from;
    while (i < tokens.size()) {
      const auto [key, value] = pair_at(tokens, i);
      if (std::find(allowed.begin(), allowed.end(), key.text) == allowed.end()) {
        fail(key.column, "unknown key '" + key.text + "' in " + tokens[0].text);
      }
      if (!out.emplace(key.text, value).second) fail(key.column, "key '" + key.text + "' given twice");
    }
    for (auto k : allowed) {
      if (!out.contains(std::string(k))) fail(0, tokens[0].text + " needs " + std::string(k) + "=...");
    }
    return out;
  }

  Token directive(const std::vector<Token>& tokens) const {
    std::size_t i = 0;
    const auto [key, value] = pair_at(tokens, i);
    if (i != tokens.size()) fail(tokens[i].column, "unexpected '" + tokens[i].text + "'");
    return value;
  }

  void parse_line(const std::vector<Token>& tokens) {
    const std::string& head = tokens[0].text;
    const std::string key = head.substr(0, head.find('='));
    if (head == "scenario") {
      if (tokens.size() != 2) fail(tokens[0].column, "expected 'scenario <name>'");
      if (seen_name_) fail(tokens[0].column, "scenario name given twice");
      seen_name_ = true;
      doc_name_ = identifier(tokens[1]);
    } else if (key == "rule") {
      const Token v = directive(tokens);
      if (rule_) fail(tokens[0].column, "rule given twice");
      try {
        rule_ = parse_rule(v.text);
      } catch (const ConfigurationError& e) {
        fail(v.column, e.what());
      }
    } else if (key == "class") {
      const Token v = directive(tokens);
      if (class_name_) fail(tokens[0].column, "class given twice");
      class_name_ = identifier(v);
      class_line_ = line_no_;
      class_column_ = v.column;
    } else if (head == "[hypothesis]") {
      block_ = Block::kHypothesis;
      const auto kv = pairs(tokens, 1, {"name", "prior"});
      const Token& name = kv.at("name");
      const std::string n = identifier(name);
      for (const auto& h : hypotheses_) {
        if (h.name == n) fail(name.column, "hypothesis '" + n + "' declared twice (first on line " + std::to_string(h.line) + ")");
      }
      hypotheses_.push_back({n, number(kv.at("prior")), line_no_});
    } else if (head == "[class]") {
      block_ = Block::kClass;
      const auto kv = pairs(tokens, 1, {"name"});
      const Token& name = kv.at("name");
      const std::string n = identifier(name);
      for (const auto& c : classes_) {
        if (c.name == n) fail(name.column, "class '" + n + "' declared twice (first on line " + std::to_string(c.line) + ")");
      }
      classes_.push_back({n, line_no_, {}});
    } else if (head == "[evidence]") {
      if (tokens.size() != 1) fail(tokens[1].column, "[evidence] takes no keys");
      if (evidence_line_) fail(tokens[0].column, "[evidence] given twice");
      block_ = Block::kEvidence;
      evidence_line_ = line_no_;
    } else if (head.front() == '[') {
      fail(tokens[0].column, "unknown section " + head + " (expected [hypothesis], [class] or [evidence])");
    } else if (head == "count" || head == "epsilon") {
      if (tokens.size() != 4 || tokens[2].text != "=") {
        fail(tokens[0].column, "expected '" + head + " <hypothesis> = <number>'");
      }
      Row row{identifier(tokens[1]), number(tokens[3]), line_no_, tokens[1].column};
      if (head == "epsilon") {
        if (block_ != Block::kEvidence) fail(tokens[0].column, "epsilon rows belong in [evidence]");
        if (row.value.is_exact() ? ExactProb(1) < row.value.exact() : row.value.as_magnitude().log10() > 0.0) {
          fail(tokens[3].column, "match probability exceeds 1");
        }
        epsilon_.push_back(std::move(row));
      } else if (block_ == Block::kClass) {
        classes_.back().rows.push_back(std::move(row));
      } else if (block_ == Block::kEvidence) {
        counts_.push_back(std::move(row));
      } else {
        fail(tokens[0].column, "count rows belong in [class] or [evidence]");
      }
    } else {
      fail(tokens[0].column, "unknown key '" + key + "'");
    }
  }

  ScenarioBuilder::Mapping mapping(const std::vector<Row>& rows, const std::string& what, std::size_t header_line) const {
    ScenarioBuilder::Mapping out;
    std::set<std::string> seen;
    for (const auto& r : rows) {
      const bool known = std::any_of(hypotheses_.begin(), hypotheses_.end(),
                                     [&](const HypothesisLine& h) { return h.name == r.hypothesis; });
      if (!known) throw ParseError(r.line, r.column, "unknown hypothesis '" + r.hypothesis + "' in " + what);
      if (!seen.insert(r.hypothesis).second) {
        throw ParseError(r.line, r.column, "hypothesis '" + r.hypothesis + "' repeated in " + what);
      }
      out.emplace_back(r.hypothesis, r.value);
    }
    for (const auto& h : hypotheses_) {
      if (!seen.contains(h.name)) throw ParseError(header_line, 0, what + " has no row for hypothesis '" + h.name + "'");
    }
    return out;
  }

  ScenarioDocument finish() {
    if (hypotheses_.empty()) throw ParseError(line_no_, 0, "no [hypothesis] blocks");
    ScenarioBuilder b;
    for (const auto& h : hypotheses_) b.hypothesis(h.name, h.prior);
    for (const auto& c : classes_) b.reference_class(c.name, mapping(c.rows, "[class] " + c.name, c.line));
    if (evidence_line_) {
      if (counts_.empty() && epsilon_.empty()) throw ParseError(evidence_line_, 0, "[evidence] has no rows");
      if (!counts_.empty()) b.evidence_counts(mapping(counts_, "[evidence] counts", evidence_line_));
      if (!epsilon_.empty()) b.match_probabilities(mapping(epsilon_, "[evidence] epsilon", evidence_line_));
    }
    if (class_name_) {
      const bool known = std::any_of(classes_.begin(), classes_.end(),
                                     [&](const ClassBlock& c) { return c.name == *class_name_; });
      if (!known) throw ParseError(class_line_, class_column_, "class '" + *class_name_ + "' has no [class] block");
    }
    try {
      return {doc_name_, b.build(), rule_, class_name_};
    } catch (const InconsistentScenarioError& e) {
      throw ParseError(hypotheses_.front().line, 0, std::string("[hypothesis] blocks: ") + e.what());
    }
  }

  std::string_view text_;
  std::size_t line_no_ = 0;
  Block block_ = Block::kNone;

  bool seen_name_ = false;
  std::string doc_name_;
  std::optional<Rule> rule_;
  std::optional<std::string> class_name_;
  std::size_t class_line_ = 0;
  std::size_t class_column_ = 0;

  std::vector<HypothesisLine> hypotheses_;
  std::vector<ClassBlock> classes_;
  std::size_t evidence_line_ = 0;
  std::vector<Row> counts_;
  std::vector<Row> epsilon_;
};

void require_name(std::string_view name) {
  if (!valid_name(name)) throw ConfigurationError("name '" + std::string(name) + "' cannot be written to a scenario file");
}

}  // namespace

ScenarioDocument parse_scenario(std::string_view text) { return Parser(text).parse(); }

std::string serialize_scenario(const ScenarioDocument& doc) {
  const Scenario& s = doc.scenario;
  std::ostringstream out;
  if (!doc.name.empty()) {
    require_name(doc.name);
    out << "scenario " << doc.name << "\n";
  }
  if (doc.rule) out << "rule = " << to_string(*doc.rule) << "\n";
  if (doc.class_name) {
    require_name(*doc.class_name);
    out << "class = " << *doc.class_name << "\n";
  }
  out << "\n";
  for (const auto& h : s.hypotheses()) {
    require_name(h.name);
    out << "[hypothesis] name=" << h.name << " prior=" << h.prior.to_literal() << "\n";
  }
  auto rows = [&](std::string_view key, const std::vector<Quantity>& values) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << key << " " << s.hypotheses()[i].name << " = " << values[i].to_literal() << "\n";
    }
  };
  for (const auto& c : s.classes()) {
    require_name(c.name);
    out << "\n[class] name=" << c.name << "\n";
    rows("count", c.counts);
  }
  const auto& e = s.evidence();
  if (e.counts || e.match_probabilities) {
    out << "\n[evidence]\n";
    if (e.counts) rows("count", *e.counts);
    if (e.match_probabilities) rows("epsilon", *e.match_probabilities);
  }
  return out.str();
}

}  // namespace obsel
