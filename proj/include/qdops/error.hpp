#ifndef QDOPS_ERROR_HPP
#define QDOPS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qdops {

/// Base of every domain error raised by the engine. `name()` is the stable
/// identifier reported by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define QDOPS_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                      \
   public:                                                         \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  };

QDOPS_DEFINE_ERROR(DivisionByZero)
QDOPS_DEFINE_ERROR(NotIntegralAtOne)
QDOPS_DEFINE_ERROR(OutOfSupport)
QDOPS_DEFINE_ERROR(DomainMismatch)
QDOPS_DEFINE_ERROR(UnsupportedGenerator)
QDOPS_DEFINE_ERROR(NotDegreeZero)
QDOPS_DEFINE_ERROR(UnknownSuite)
QDOPS_DEFINE_ERROR(ZeroOperator)
QDOPS_DEFINE_ERROR(CompatibilityViolation)
QDOPS_DEFINE_ERROR(GlueFailure)
QDOPS_DEFINE_ERROR(Overflow)

#undef QDOPS_DEFINE_ERROR

/// Syntax error in one of the expression grammars; `position` is a 0-based
/// offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("ParseError", what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qdops

#endif  // QDOPS_ERROR_HPP
