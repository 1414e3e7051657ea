#pragma once

#include <stdexcept>
#include <string>

namespace mixedfree {

// Malformed input: bad vertex ids, overlapping sets, unparsable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact oracle refused an instance above its configured size cap.
class OracleCapError : public std::runtime_error {
 public:
  explicit OracleCapError(const std::string& what)
      : std::runtime_error("oracle cap exceeded: " + what) {}
};

// A structural promise (e.g. "input is a cograph") does not hold.
class PromiseViolated : public std::runtime_error {
 public:
  explicit PromiseViolated(const std::string& what)
      : std::runtime_error("promise violated: " + what) {}
};

// An internal invariant failed. Always a bug, never an input problem.
class EngineBug : public std::logic_error {
 public:
  explicit EngineBug(const std::string& what) : std::logic_error("engine bug: " + what) {}
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw EngineBug(what);
}

}  // namespace mixedfree
