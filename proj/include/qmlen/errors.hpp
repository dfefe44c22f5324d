#ifndef QMLEN_ERRORS_HPP
#define QMLEN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmlen {

/// Precondition violated by the caller (bad argument, mismatched group instance).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed text input. `position` is a byte offset into the parsed string.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string &what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), message_(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string &message() const noexcept { return message_; }

private:
  std::string message_;
  std::size_t position_;
};

/// A configured memory or size cap was hit. `partial_radius` is the last
/// radius that was fully enumerated before the cap.
class resource_error : public std::runtime_error {
public:
  resource_error(const std::string &what, int partial_radius)
      : std::runtime_error(what), partial_radius_(partial_radius) {}

  int partial_radius() const noexcept { return partial_radius_; }

private:
  int partial_radius_;
};

/// An internal consistency check failed. Any certificate in flight is invalid.
class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// The quasimorphism lower-bound method yields nothing (phi(g) may be zero).
class no_certificate_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace qmlen

#endif // QMLEN_ERRORS_HPP
