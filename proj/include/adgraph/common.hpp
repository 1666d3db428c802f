#pragma once

#include <stdexcept>
#include <string>

namespace adgraph {

/// Failure domains, mapped 1:1 onto CLI exit codes.
enum class ErrorKind {
    Usage = 1,    // bad flags / invalid configuration
    Data = 2,     // unreadable or inconsistent input data
    Numeric = 3,  // non-finite values, failed numerical preconditions
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_usage(const std::string& msg) { throw Error(ErrorKind::Usage, msg); }
[[noreturn]] inline void fail_data(const std::string& msg) { throw Error(ErrorKind::Data, msg); }
[[noreturn]] inline void fail_numeric(const std::string& msg) { throw Error(ErrorKind::Numeric, msg); }

}  // namespace adgraph
