#pragma once

#include "fibpair/fibexpr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fibpair::corpus {

struct CorpusEntry {
    std::string label;
    std::string constraints_text;  // raw column, e.g. "r >= 1"
    std::string identity_text;     // raw column, parseable DSL
    std::string source;
    expr::Identity identity;
};

// The built-in catalog, parsed and validated once.
const std::vector<CorpusEntry>& entries();

// The catalog in file form: "LABEL | constraints | identity | source" lines,
// '#' comments allowed.
const std::string& corpus_text();

// Parses corpus-format text. Throws std::runtime_error mentioning the line
// number on any malformed line.
std::vector<CorpusEntry> parse_corpus_text(const std::string& text);

// Label of a corpus entry whose canonical (lhs, rhs) match the given identity
// exactly (same orientation), if any.
std::optional<std::string> find_matching_label(const expr::Identity& id);

}  // namespace fibpair::corpus
