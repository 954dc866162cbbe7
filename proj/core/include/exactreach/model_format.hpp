#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "exactreach/mdp.hpp"

namespace exactreach {

/// A validated model plus its named state-label sets.
struct ParsedModel {
  Mdp mdp;
  std::map<std::string, std::vector<int>> labels;  // label -> ascending state ids
};

/**
 * Parses the line-oriented model format:
 *
 *   mdp
 *   states 3
 *   label goal 1
 *   transitions
 *   0 a 1:1/2 2:1/2
 *   0 b 1:1/3 2:2/3
 *   1 - 1:1
 *   2 - 2:1
 *
 * '#' starts a comment. Probabilities are "p/q" or decimal literals, both
 * converted exactly. Multiple lines with the same source are distinct
 * nondeterministic choices; action names are cosmetic. Throws ParseError with
 * a 1-based line and column, or ValidationError for semantic violations.
 */
ParsedModel parse_model(std::string_view text);

/// Reads and parses a model file. Throws Error when the file cannot be read.
ParsedModel parse_model_file(const std::string& path);

/// Canonical rendering; parse_model(serialize_model(m)) reproduces m exactly.
std::string serialize_model(const ParsedModel& model);

}  // namespace exactreach
