#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semcloud {

enum class errc {
    empty_input,
    unknown_term,
    unknown_state,
    empty_history,
    non_convergence,
    schema,
    invalid_argument,
};

std::string_view to_string(errc code) noexcept;

/// Every failure raised by the engine carries one of the codes above so that
/// front-ends (CLI exit codes, HTTP statuses) can map it without parsing text.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string &what)
        : std::runtime_error(what)
        , code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace semcloud
