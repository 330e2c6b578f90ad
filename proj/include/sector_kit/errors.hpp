#pragma once

#include <stdexcept>
#include <string>

namespace sector_kit {

// Invalid argument: a malformed partition, a non-standard tableau, a
// non-invariant kernel, a map that is not a section, ...
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

// A requested dense object would exceed the configured size cap.
class ResourceError : public std::length_error {
  public:
    explicit ResourceError(const std::string &what) : std::length_error(what) {}
};

// An internal identity failed (non-integral multiplicity, leaking carrier).
// Seeing one of these means a bug, not bad input.
class ConsistencyError : public std::logic_error {
  public:
    explicit ConsistencyError(const std::string &what) : std::logic_error(what) {}
};

} // namespace sector_kit
