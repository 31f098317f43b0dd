#pragma once

#include <stdexcept>
#include <string>

namespace ghn {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text. Carries a 1-based source position when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = 0, int col = 0)
      : Error(format(msg, line, col)), line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  static std::string format(const std::string& msg, int line, int col) {
    if (line <= 0) return msg;
    return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
  }
  int line_;
  int col_;
};

/// Input uses a construct outside the supported subset.
class UnsupportedFeature : public Error {
  using Error::Error;
};

/// Predicate arity outside the supported range.
class ArityError : public Error {
  using Error::Error;
};

/// Reference to an undeclared predicate, type, object or action.
class UnknownSymbol : public Error {
  using Error::Error;
};

/// Goal contains a negated atom.
class NegativeGoal : public Error {
  using Error::Error;
};

/// Action not applicable in the given state.
class NotApplicable : public Error {
  using Error::Error;
};

/// A generated name clashes with an existing one.
class NameCollision : public Error {
  using Error::Error;
};

/// Vocabulary construction got no data.
class EmptyTrainingSet : public Error {
  using Error::Error;
};

/// Training got an empty dataset.
class EmptyDataset : public Error {
  using Error::Error;
};

/// Action name missing from a vocabulary.
class UnknownAction : public Error {
  using Error::Error;
};

/// Feature vector does not match the model's input dimensions, or the
/// model vocabulary does not bind to the current domain.
class DimensionMismatch : public Error {
  using Error::Error;
};

/// Model file is damaged or truncated.
class CorruptModel : public Error {
  using Error::Error;
};

/// Model file has an unsupported format version.
class VersionMismatch : public Error {
  using Error::Error;
};

/// Stored trajectory does not replay through the simulator.
class ReplayError : public Error {
  using Error::Error;
};

/// Leapfrog iteration 0 produced no training data.
class BootstrapFailure : public Error {
  using Error::Error;
};

}  // namespace ghn
