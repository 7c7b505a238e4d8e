#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace virtmod {

// Base class for every domain error raised by the library. Callers that only
// care about "library said no" can catch this; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ZeroElementError : public Error {
 public:
  ZeroElementError() : Error("element must be non-zero") {}
};

class DivisionByZeroError : public Error {
 public:
  DivisionByZeroError() : Error("division by zero") {}
};

class RingMismatchError : public Error {
 public:
  explicit RingMismatchError(const std::string& what = "operands belong to different rings")
      : Error(what) {}
};

class BothZeroError : public Error {
 public:
  BothZeroError() : Error("gcd of (0, 0) is undefined") {}
};

class ZeroOrUnitError : public Error {
 public:
  ZeroOrUnitError() : Error("element must be neither zero nor a unit") {}
};

class UnsupportedRingError : public Error {
 public:
  explicit UnsupportedRingError(const std::string& what) : Error(what) {}
};

class FactorizationTooHardError : public Error {
 public:
  explicit FactorizationTooHardError(const std::string& what) : Error(what) {}
};

class ShapeMismatchError : public Error {
 public:
  explicit ShapeMismatchError(const std::string& what) : Error(what) {}
};

class UnitIdealError : public Error {
 public:
  UnitIdealError() : Error("the unit ideal is excluded") {}
};

class IndexOutOfRangeError : public Error {
 public:
  explicit IndexOutOfRangeError(const std::string& what) : Error(what) {}
};

class BoundExceededError : public Error {
 public:
  explicit BoundExceededError(const std::string& what) : Error(what) {}
};

class UnknownPredicateError : public Error {
 public:
  explicit UnknownPredicateError(const std::string& name)
      : Error("unknown predicate: " + name) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Which of the two embedding directions failed a subisomorphism test.
enum class EmbedDirection { ANotIntoB, BNotIntoA };

class NotSubisomorphicError : public Error {
 public:
  explicit NotSubisomorphicError(EmbedDirection direction)
      : Error(direction == EmbedDirection::ANotIntoB
                  ? "not subisomorphic: first module does not embed in second"
                  : "not subisomorphic: second module does not embed in first"),
        direction_(direction) {}

  EmbedDirection direction() const { return direction_; }

 private:
  EmbedDirection direction_;
};

class NotVirtuallySimpleEntryError : public Error {
 public:
  NotVirtuallySimpleEntryError(char side, std::size_t index)
      : Error(std::string("summand multiset '") + side + "' entry " +
              std::to_string(index) + " is not virtually simple"),
        side_(side),
        index_(index) {}

  char side() const { return side_; }
  std::size_t index() const { return index_; }

 private:
  char side_;
  std::size_t index_;
};

}  // namespace virtmod
