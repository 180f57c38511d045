#ifndef MEASFIELD_ERRORS_HPP
#define MEASFIELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace measfield {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define MEASFIELD_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

MEASFIELD_DEFINE_ERROR(DuplicatePoint);
MEASFIELD_DEFINE_ERROR(SpaceMismatch);
MEASFIELD_DEFINE_ERROR(NotAbsolutelyContinuous);
MEASFIELD_DEFINE_ERROR(ZeroMeasure);
MEASFIELD_DEFINE_ERROR(MaharamViolation);
MEASFIELD_DEFINE_ERROR(BaseMismatch);
MEASFIELD_DEFINE_ERROR(SupportViolation);
MEASFIELD_DEFINE_ERROR(InvariantViolation);
MEASFIELD_DEFINE_ERROR(UnknownName);
MEASFIELD_DEFINE_ERROR(ParseError);

#undef MEASFIELD_DEFINE_ERROR

}  // namespace measfield

#endif  // MEASFIELD_ERRORS_HPP
