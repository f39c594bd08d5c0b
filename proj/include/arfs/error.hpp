#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arfs {

enum class ErrorKind {
  TolTooSmall,
  DimensionCap,
  DegenerateInput,
  IllConditioned,
  NearCoincidentExponents,
  PreconditionViolated,
  GapViolated,
  HypothesisViolated,
  ThresholdViolated,
  RTooLarge,
  NotSurjective,
  NotAnARFS,
  NotSpanning,
  ScheduleStall,
  NoConvergence,
  ZeroVector,
  ConfigInvalid,
  CheckFailed,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Non-fatal diagnostics go through here; tests silence it.
void warn(std::string_view message);
void set_warnings_enabled(bool enabled) noexcept;

}  // namespace arfs
