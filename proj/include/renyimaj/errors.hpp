#pragma once

#include <stdexcept>
#include <string>

namespace renyimaj {

// Input outside an operation's mathematical domain (bad masses, m out of
// range, beta outside its window, Kraft violation, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The request is well-posed but larger than the enumeration cap of an
// exact/oracle routine.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bound whose denominator vanishes or turns negative.
class DegenerateBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace renyimaj
