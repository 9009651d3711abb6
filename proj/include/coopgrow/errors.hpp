#ifndef COOPGROW_ERRORS_HPP
#define COOPGROW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coopgrow {

/// A model or operation parameter is outside its valid domain.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// The ensemble curve never crosses the requested threshold inside the scanned grid.
class NoTransitionInRange : public std::runtime_error {
 public:
  explicit NoTransitionInRange(const std::string& what) : std::runtime_error(what) {}
};

/// No Ni in a fixation curve satisfies the cooperative-seed criterion.
class SeedNotFound : public std::runtime_error {
 public:
  explicit SeedNotFound(const std::string& what) : std::runtime_error(what) {}
};

/// Too few degree samples above k_min for a tail fit.
class InsufficientTail : public std::runtime_error {
 public:
  explicit InsufficientTail(const std::string& what) : std::runtime_error(what) {}
};

/// Bad configuration key or value. `key()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace coopgrow

#endif  // COOPGROW_ERRORS_HPP
