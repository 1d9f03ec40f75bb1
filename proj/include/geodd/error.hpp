#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geodd {

enum class ErrorKind {
  Syntax,      // malformed FOF text
  Semantic,    // well-formed text with invalid meaning (arity, unknown name)
  Include,     // missing file or include cycle
  Degenerate,  // fact with a collapsed line, segment or triangle
  Input,       // bad user input outside the FOF frontend
  Limit,       // saturation limit tripped
};

/// Position inside a source file; line and column are 1-based, 0 when unknown.
struct SourcePos {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;

  std::string str() const;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourcePos pos = {});

  ErrorKind kind() const noexcept { return kind_; }
  const SourcePos& pos() const noexcept { return pos_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
};

}  // namespace geodd
