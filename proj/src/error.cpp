#include "arfs/error.hpp"

#include <atomic>
#include <iostream>

namespace arfs {

namespace {
std::atomic<bool> g_warnings_enabled{true};
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::TolTooSmall: return "TolTooSmall";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NearCoincidentExponents: return "NearCoincidentExponents";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::GapViolated: return "GapViolated";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ThresholdViolated: return "ThresholdViolated";
    case ErrorKind::RTooLarge: return "RTooLarge";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotAnARFS: return "NotAnARFS";
    case ErrorKind::NotSpanning: return "NotSpanning";
    case ErrorKind::ScheduleStall: return "ScheduleStall";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

void warn(std::string_view message) {
  if (g_warnings_enabled.load(std::memory_order_relaxed)) std::clog << "arfs warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) noexcept { g_warnings_enabled.store(enabled, std::memory_order_relaxed); }

}  // namespace arfs
