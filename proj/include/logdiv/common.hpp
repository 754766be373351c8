#ifndef LOGDIV_COMMON_HPP
#define LOGDIV_COMMON_HPP

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace logdiv {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a computation hits a configured cap (degree bound, attempt
// bound) without reaching a definite answer.  Callers map this to the
// "inconclusive" exit path, never to a fabricated result.
struct Inconclusive : Error {
  explicit Inconclusive(const std::string& msg) : Error(msg) {}
};

struct DeadlineExceeded : Error {
  DeadlineExceeded() : Error("deadline exceeded") {}
};

// Caller-supplied cancellation token for long-running basis computations.
class Deadline {
 public:
  Deadline() = default;

  static Deadline after(std::chrono::milliseconds d) {
    Deadline dl;
    dl.at_ = std::chrono::steady_clock::now() + d;
    return dl;
  }
  static Deadline after_seconds(double secs) {
    return after(std::chrono::milliseconds(static_cast<long>(secs * 1000.0)));
  }

  bool expired() const {
    return at_ && std::chrono::steady_clock::now() > *at_;
  }
  void check() const {
    if (expired()) throw DeadlineExceeded();
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace logdiv

#endif
