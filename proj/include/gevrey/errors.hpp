#pragma once

#include <stdexcept>
#include <string>

namespace gevrey {

// Bad user-supplied parameters: ranges, schema, incompatible equation/transform pairs.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A field failed a structural precondition (wrong lattice, non-solenoidal input, ...).
class state_error : public std::runtime_error {
public:
  explicit state_error(const std::string& what) : std::runtime_error(what) {}
};

// The psi solve or a field transform could not produce a valid result.
class transform_error : public std::runtime_error {
public:
  explicit transform_error(const std::string& what) : std::runtime_error(what) {}
};

// A diagnostic is undefined for the given data (too few shells, too few samples, ...).
class diagnostic_error : public std::runtime_error {
public:
  explicit diagnostic_error(const std::string& what) : std::runtime_error(what) {}
};

// Time stepping left the representable regime: non-finite coefficients or a norm
// above the divergence threshold. Carries the last time that was still valid.
class blow_up_error : public std::runtime_error {
public:
  blow_up_error(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

private:
  double last_valid_time_;
};

// An envelope was evaluated outside its guaranteed horizon t < t_star.
class horizon_error : public std::runtime_error {
public:
  explicit horizon_error(const std::string& what) : std::runtime_error(what) {}
};

// File-level problems: parse failures, missing columns, schema mismatches.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gevrey
