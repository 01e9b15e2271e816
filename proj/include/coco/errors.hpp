#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace coco {

// Library error with a stable machine-readable code ("ccv-overflow",
// "gamma-violation", ...). The code is the contract; the message is advisory.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string message)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        message_(std::move(message)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string code_;
  std::string message_;
};

}  // namespace coco
