#ifndef MFSM_ERRORS_HPP
#define MFSM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mfsm {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a process exit code: 2 = bad configuration/arguments, 3 = degenerate
// data, 4 = numeric failure.
class error : public std::runtime_error {
public:
  error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

private:
  int exit_code_;
};

class domain_error : public error {
public:
  explicit domain_error(const std::string& msg) : error(msg, 2) {}
};

class config_error : public error {
public:
  explicit config_error(const std::string& msg) : error(msg, 2) {}
};

class degenerate_error : public error {
public:
  explicit degenerate_error(const std::string& msg) : error(msg, 3) {}
};

class numeric_error : public error {
public:
  explicit numeric_error(const std::string& msg) : error(msg, 4) {}
};

} // namespace mfsm

#endif
