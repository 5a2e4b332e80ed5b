#pragma once

#include <stdexcept>
#include <string>

namespace asymlat {

// All library failures carry a stable machine-readable name (the CLI maps
// them to exit code 3 and prints the name).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const char* name, const std::string& what) {
    throw Error(name, what);
}

} // namespace asymlat
