#ifndef RELILAT_ERRORS_HPP
#define RELILAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relilat {

/// Coarse error classes; the command-line front end maps each to an exit code.
enum class ErrorCategory { Parse, Validation, Numerical, Verification };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define RELILAT_DEFINE_ERROR(Name, Category)                                  \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(ErrorCategory::Category, what) {} \
  }

RELILAT_DEFINE_ERROR(ParseError, Parse);
RELILAT_DEFINE_ERROR(ValidationError, Validation);
RELILAT_DEFINE_ERROR(DimensionMismatch, Validation);
RELILAT_DEFINE_ERROR(DomainError, Validation);
RELILAT_DEFINE_ERROR(RangeError, Validation);
RELILAT_DEFINE_ERROR(NonBooleanInput, Validation);
RELILAT_DEFINE_ERROR(EmptyCover, Validation);
RELILAT_DEFINE_ERROR(MonotonicityError, Validation);
RELILAT_DEFINE_ERROR(ModelMismatch, Validation);
RELILAT_DEFINE_ERROR(NumericalError, Numerical);
RELILAT_DEFINE_ERROR(NonconvergenceError, Numerical);
RELILAT_DEFINE_ERROR(InfiniteSample, Numerical);
RELILAT_DEFINE_ERROR(IdentityViolation, Verification);

#undef RELILAT_DEFINE_ERROR

}  // namespace relilat

#endif  // RELILAT_ERRORS_HPP
