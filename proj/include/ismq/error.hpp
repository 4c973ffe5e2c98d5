#pragma once

#include <stdexcept>
#include <string>

namespace ismq {

// All library failures surface as Error. `code` is a stable machine-readable
// tag (used by the CLI's error JSON); what() carries the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace ismq
