#include "geodd/error.hpp"

namespace geodd {

namespace {

std::string with_pos(const std::string& message, const SourcePos& pos) {
  if (pos.file.empty() && pos.line == 0) return message;
  return pos.str() + ": " + message;
}

}  // namespace

std::string SourcePos::str() const {
  std::string s = file.empty() ? "<input>" : file;
  if (line > 0) s += ":" + std::to_string(line) + ":" + std::to_string(column);
  return s;
}

Error::Error(ErrorKind kind, const std::string& message, SourcePos pos)
    : std::runtime_error(with_pos(message, pos)), kind_(kind), pos_(std::move(pos)) {}

}  // namespace geodd
