#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superconf {

enum class ErrorKind {
    DegenerateJet,
    RankDeficient,
    NotImmersion,
    NotRegular,
    DegenerateEllipse,
    PedalDegenerate,
    PoleProximity,
    IsotropyViolation,
    InsufficientOrder,
};

std::string_view to_string(ErrorKind kind);

/// Per-point geometric failure. Grid drivers catch these and mark the
/// point excluded instead of aborting.
class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace superconf
