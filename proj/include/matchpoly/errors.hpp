#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace matchpoly {

/// Malformed input: bad file, unknown vertex, violated precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// An identity that must hold by construction failed. Always a bug, never caller error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace matchpoly
