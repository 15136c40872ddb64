#pragma once

#include <stdexcept>
#include <string>

namespace swbnet {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind { config = 2, ingestion = 3, computation = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Invalid argument or configuration value.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorKind::config, what) {}
};

/// Malformed or unusable input data. Carries the 1-based line number when known.
class IngestError : public Error {
 public:
  explicit IngestError(const std::string& what, long line = 0)
      : Error(ErrorKind::ingestion, line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// A computation whose inputs make the result undefined (empty graph, zero variance...).
class ComputeError : public Error {
 public:
  explicit ComputeError(const std::string& what) : Error(ErrorKind::computation, what) {}
};

}  // namespace swbnet
