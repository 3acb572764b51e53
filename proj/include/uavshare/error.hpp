#pragma once

#include <stdexcept>
#include <string>

namespace uavshare {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate geometry, e.g. a zero-length direction vector.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A value or document violates a model invariant. `path()` names the
/// offending field (JSON-pointer-like, e.g. "$.ground_station.tx_power_dbm").
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)), message_(message) {}
  explicit ValidationError(const std::string& message) : ValidationError("", message) {}

  /// Same error reported one level further out, e.g. "antenna" -> "uavs[0].antenna".
  static ValidationError nested(const std::string& prefix, const ValidationError& inner) {
    return ValidationError(inner.path().empty() ? prefix : prefix + "." + inner.path(), inner.message());
  }

  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string path_;
  std::string message_;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavshare
