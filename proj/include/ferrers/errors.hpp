#pragma once

#include <stdexcept>
#include <string>

namespace ferrers {

// Invalid input: bad parameters, points outside a polytope, wrong shapes.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A size guard refused the computation. Callers may retry with force.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed; indicates a bug, never user error.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw InvariantError(what);
}

}  // namespace ferrers
