#ifndef FRACSTOCH_ERRORS_HPP
#define FRACSTOCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracstoch {

/// Base of every error raised by the library. `name()` is the stable
/// identifier printed by the command-line front-end.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept { return "Error"; }
  /// Accuracy failures map to a distinct exit status in the CLI.
  virtual bool is_accuracy_failure() const noexcept { return false; }
};

#define FRACSTOCH_DEFINE_ERROR(Type, Accuracy)                         \
  class Type : public Error {                                          \
   public:                                                             \
    using Error::Error;                                                \
    const char* name() const noexcept override { return #Type; }       \
    bool is_accuracy_failure() const noexcept override { return Accuracy; } \
  };

FRACSTOCH_DEFINE_ERROR(PoleError, false)
FRACSTOCH_DEFINE_ERROR(ConfigError, false)
FRACSTOCH_DEFINE_ERROR(DomainError, false)
FRACSTOCH_DEFINE_ERROR(GridMismatchError, false)
FRACSTOCH_DEFINE_ERROR(NonFiniteError, false)
FRACSTOCH_DEFINE_ERROR(EllipticityError, false)
FRACSTOCH_DEFINE_ERROR(SignError, false)
FRACSTOCH_DEFINE_ERROR(AccuracyError, true)
FRACSTOCH_DEFINE_ERROR(StepTooCoarse, true)

#undef FRACSTOCH_DEFINE_ERROR

}  // namespace fracstoch

#endif  // FRACSTOCH_ERRORS_HPP
