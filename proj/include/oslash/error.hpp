#pragma once

#include <stdexcept>
#include <string>

namespace oslash {

enum class ErrorKind {
    Input,     // malformed or out-of-range input
    Resource,  // a configured cap would be exceeded
    Internal,  // broken invariant inside the library
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& message) {
    throw Error(ErrorKind::Input, message);
}

[[noreturn]] inline void fail_resource(const std::string& message) {
    throw Error(ErrorKind::Resource, message);
}

[[noreturn]] inline void fail_internal(const std::string& message) {
    throw Error(ErrorKind::Internal, message);
}

struct Caps {
    std::size_t exhaustive_vertex_cap = 24;
    std::size_t power_edge_cap = 1000000;
    std::size_t connected_subset_cap = 50000000;
    unsigned jobs = 1;
};

}  // namespace oslash
