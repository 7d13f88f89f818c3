#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wcat {

/// Structured failure raised by kernel operations. `code` is a stable
/// machine-readable tag (e.g. "NotFull", "UnknownGenerator"), `path`
/// locates the offending subterm when there is one.
class Error : public std::runtime_error {
public:
  Error(std::string code, std::string path, std::string message)
      : std::runtime_error(code + (path.empty() ? "" : " at " + path) + ": " + message),
        code_(std::move(code)),
        path_(std::move(path)),
        message_(std::move(message)) {}

  const std::string& code() const { return code_; }
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

private:
  std::string code_;
  std::string path_;
  std::string message_;
};

[[noreturn]] inline void fail(std::string code, std::string path, const std::string& message) {
  throw Error(std::move(code), std::move(path), message);
}

inline void require(bool cond, const std::string& code, const std::string& path,
                    const std::string& message) {
  if (!cond) fail(code, path, message);
}

}  // namespace wcat
