#pragma once

#include <stdexcept>
#include <string>

namespace hogroup {

// Raised when an input violates a module precondition or invariant.
// `module()` names the module, `code()` the violated invariant.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string code, const std::string& detail);

  const std::string& module() const noexcept { return module_; }
  const std::string& code() const noexcept { return code_; }

 private:
  std::string module_;
  std::string code_;
};

}  // namespace hogroup
