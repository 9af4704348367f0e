#pragma once

// Error types shared across the toolkit. Everything derives from
// std::runtime_error so callers can catch broadly; the CLI maps these
// onto exit codes (usage=1, data=2, numeric=3).

#include <stdexcept>
#include <string>

namespace pathvec {

// Source text could not be tokenized or parsed.
struct SyntaxError : std::runtime_error {
  int line;
  int column;
  SyntaxError(int line, int column, const std::string& msg)
      : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
};

// Legal C that falls outside the supported subset (goto, switch, typedef, ...).
// Not fatal for a corpus run: the offending sample is skipped upstream.
struct UnsupportedConstruct : std::runtime_error {
  int line;
  UnsupportedConstruct(int line, const std::string& what)
      : std::runtime_error("unsupported construct at line " + std::to_string(line) +
                           ": " + what),
        line(line) {}
};

// END is unreachable from some CFG node; the post-dominator tree is undefined.
// Indicates a frontend bug, so it is fatal for the affected function.
struct PostDominanceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DotParseError : std::runtime_error {
  std::string file;
  int line;
  DotParseError(const std::string& file, int line, const std::string& msg)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg),
        file(file),
        line(line) {}
};

// A DOT node whose label attribute does not encode a "(TYPE,CODE)" pair.
struct MissingLabelError : DotParseError {
  MissingLabelError(const std::string& file, int line, const std::string& node)
      : DotParseError(file, line, "node '" + node + "' has no parseable (TYPE,CODE) label") {}
};

// Malformed dataset or vocabulary file.
struct FormatError : std::runtime_error {
  int line;
  FormatError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
};

struct EmptyLabel : std::runtime_error {
  EmptyLabel() : std::runtime_error("label normalizes to the empty string") {}
};

struct ClassTooSmall : std::runtime_error {
  ClassTooSmall(const std::string& label, size_t n)
      : std::runtime_error("class '" + label + "' has only " + std::to_string(n) +
                           " samples; stratified splitting needs at least 10") {}
};

struct IndexOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every context slot of an active representation is masked out.
struct AllMasked : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// NaN or Inf escaped a numeric kernel.
struct NumericFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroVector : std::runtime_error {
  ZeroVector() : std::runtime_error("cosine similarity of a zero-magnitude vector") {}
};

struct ChecksumMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VocabMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pathvec
