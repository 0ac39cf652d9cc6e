#pragma once

#include <stdexcept>
#include <string>

namespace irislab {

enum class ErrorKind {
    domain,
    pole,
    no_convergence,
    parameter_pattern,
    conditioning,
    rank_deficient,
    dimension,
    insufficient_points,
    division_by_zero,
    overflow,
    config,
    io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace irislab
