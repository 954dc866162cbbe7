#include "exactreach/model_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "exactreach/errors.hpp"

namespace exactreach {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Splits one line into whitespace-separated tokens, dropping '#' comments.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
    }
    tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return tokens;
}

int parse_state_id(const Token& tok, int line, int state_count) {
  for (char c : tok.text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(line, tok.column, "expected a state id, got '" + tok.text + "'");
    }
  }
  long id;
  try {
    id = std::stol(tok.text);
  } catch (const std::exception&) {
    throw ParseError(line, tok.column, "state id out of range: '" + tok.text + "'");
  }
  if (state_count >= 0 && id >= state_count) {
    throw ParseError(line, tok.column,
                     "state id " + tok.text + " exceeds the declared state count");
  }
  return static_cast<int>(id);
}

}  // namespace

ParsedModel parse_model(std::string_view text) {
  RawModel raw;
  std::map<std::string, std::vector<int>> labels;

  enum class Section { Header, Preamble, Transitions } section = Section::Header;
  int line_no = 0;
  bool have_states = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (section == Section::Header) {
      if (tokens[0].text != "mdp") {
        throw ParseError(line_no, tokens[0].column, "expected header 'mdp'");
      }
      if (tokens.size() > 1) {
        throw ParseError(line_no, tokens[1].column, "unexpected token after 'mdp'");
      }
      section = Section::Preamble;
      continue;
    }

    if (section == Section::Preamble) {
      if (tokens[0].text == "states") {
        if (tokens.size() != 2) {
          throw ParseError(line_no, tokens[0].column, "'states' takes exactly one count");
        }
        raw.state_count = parse_state_id(tokens[1], line_no, -1);
        if (raw.state_count <= 0) {
          throw ParseError(line_no, tokens[1].column, "state count must be positive");
        }
        have_states = true;
        continue;
      }
      if (tokens[0].text == "label") {
        if (!have_states) {
          throw ParseError(line_no, tokens[0].column, "'label' must come after 'states'");
        }
        if (tokens.size() < 3) {
          throw ParseError(line_no, tokens[0].column, "'label' needs a name and at least one state");
        }
        std::vector<int>& ids = labels[tokens[1].text];
        for (std::size_t k = 2; k < tokens.size(); ++k) {
          ids.push_back(parse_state_id(tokens[k], line_no, raw.state_count));
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        continue;
      }
      if (tokens[0].text == "transitions") {
        if (!have_states) {
          throw ParseError(line_no, tokens[0].column, "'transitions' must come after 'states'");
        }
        section = Section::Transitions;
        continue;
      }
      throw ParseError(line_no, tokens[0].column,
                       "expected 'states', 'label' or 'transitions', got '" + tokens[0].text + "'");
    }

    // transition line: <source> <action> <dest>:<prob> [...]
    if (tokens.size() < 3) {
      throw ParseError(line_no, tokens[0].column,
                       "transition line needs a source, an action and at least one branch");
    }
    RawTransition t;
    t.source = parse_state_id(tokens[0], line_no, raw.state_count);
    t.action = tokens[1].text;
    for (std::size_t k = 2; k < tokens.size(); ++k) {
      const Token& tok = tokens[k];
      std::size_t colon = tok.text.find(':');
      if (colon == std::string::npos) {
        throw ParseError(line_no, tok.column, "expected <state>:<probability>, got '" + tok.text + "'");
      }
      Token dest_tok{tok.text.substr(0, colon), tok.column};
      int dest = parse_state_id(dest_tok, line_no, raw.state_count);
      std::string prob_text = tok.text.substr(colon + 1);
      Rational prob;
      try {
        prob = Rational::parse(prob_text);
      } catch (const std::exception& e) {
        throw ParseError(line_no, tok.column + static_cast<int>(colon) + 1, e.what());
      }
      if (prob.sign() <= 0) {
        throw ParseError(line_no, tok.column + static_cast<int>(colon) + 1,
                         "probability must be positive");
      }
      t.support.emplace_back(dest, prob);
    }
    raw.transitions.push_back(std::move(t));
  }

  if (section == Section::Header) throw ParseError(1, 1, "empty model: expected header 'mdp'");
  if (!have_states) throw ParseError(line_no, 1, "missing 'states' declaration");

  ParsedModel model{validate_mdp(raw), std::move(labels)};
  return model;
}

ParsedModel parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::string serialize_model(const ParsedModel& model) {
  std::ostringstream os;
  os << "mdp\n";
  os << "states " << model.mdp.state_count() << "\n";
  for (const auto& [name, ids] : model.labels) {
    os << "label " << name;
    for (int s : ids) os << " " << s;
    os << "\n";
  }
  os << "transitions\n";
  for (const Transition& t : model.mdp.transitions()) {
    os << t.source << " " << t.action;
    for (const auto& [dest, p] : t.support) os << " " << dest << ":" << p.fraction_string();
    os << "\n";
  }
  return os.str();
}

}  // namespace exactreach
