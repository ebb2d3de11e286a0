#pragma once
#include <stdexcept>
#include <string>

namespace mpx {

/* Every domain error carries a stable machine-readable code (e.g. "MP2Violation")
 * plus a human-readable witness message. */
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace mpx
