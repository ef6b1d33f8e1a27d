#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace retroscat {

// Error hierarchy. Each category maps to a distinct CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument value (non-positive parameter, point inside a scatterer...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent measurement geometry or boundary parametrization.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A per-mode 2x2 transmission system is singular.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, int mode) : Error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

// The boundary-integral matrix is numerically singular.
class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// No active receiver contributes to the misfit at a probe point.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A forward solve failed for a specific receiver.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int receiver) : Error(what), receiver_(receiver) {}
  int receiver() const { return receiver_; }

 private:
  int receiver_;
};

// Warnings are non-fatal and routed through a process-wide sink (stderr by
// default). Tests install their own handler to capture them.
using WarningHandler = std::function<void(const std::string&)>;

void warn(const std::string& message);

// Installs a handler and returns the previous one. Passing an empty function
// restores the default stderr sink.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace retroscat
