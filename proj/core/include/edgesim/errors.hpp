#pragma once

#include <stdexcept>
#include <string>

namespace edgesim {

// Exit-code mapping lives in the CLI: validation -> 2, io -> 3, invariant -> 4.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace edgesim
