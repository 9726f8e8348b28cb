#pragma once

#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mixdim {

/// Exception type thrown on any contract violation or I/O failure.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

template <typename... Args>
[[noreturn]] void failf(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  throw Error(os.str());
}

/// Non-fatal diagnostics go to stderr.
template <typename... Args>
void warn(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  std::cerr << "[mixdim] warning: " << os.str() << "\n";
}

}  // namespace mixdim
