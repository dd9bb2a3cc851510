#pragma once

#include <stdexcept>
#include <string>

namespace nds {

// Configuration-class errors: the caller asked for something ill-posed.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedLength : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Analysis-class errors: the input is fine but the requested quantity does
// not exist for this system.
class NonIsolatedFixedPoints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotChainMixing : public std::runtime_error {
 public:
  NotChainMixing(const std::string& what, int worst_node)
      : std::runtime_error(what), worst_node_(worst_node) {}
  int worst_node() const noexcept { return worst_node_; }

 private:
  int worst_node_;
};

class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, long iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

}  // namespace nds
