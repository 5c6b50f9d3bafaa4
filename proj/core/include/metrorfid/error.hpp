#pragma once

#include <stdexcept>
#include <string>

namespace metrorfid {

// Root of every error the simulator throws. Scenario loading and the CLI
// treat anything derived from this as a configuration problem.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Track segments leave a gap or overlap.
class OverlapError : public Error {
 public:
  using Error::Error;
};

// Segment geometry outside physical bounds (radius, grade, limit, stop point).
class GeometryError : public Error {
 public:
  using Error::Error;
};

class OutOfTrack : public Error {
 public:
  using Error::Error;
};

// A numeric argument outside a formula's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An infrastructure tag that warns about no feature on the track.
class DanglingTag : public Error {
 public:
  using Error::Error;
};

class UnknownTag : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace metrorfid
