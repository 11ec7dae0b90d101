#pragma once

#include <stdexcept>
#include <string>

namespace condtypes {

// Parse errors cover manifest syntax/shape problems (CLI exit 2).
// Domain errors cover violated mathematical preconditions (CLI exit 1).
enum class errc { parse, domain };

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw error(errc::parse, msg); }
[[noreturn]] inline void fail_domain(const std::string& msg) { throw error(errc::domain, msg); }

}  // namespace condtypes
