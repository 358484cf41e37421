#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ntl {

// ESRI grid / GeoJSON / CSV parse failures. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A caller broke an operation's precondition (mismatched grids, bad bounds, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Zone features that parse but fail validation.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
public:
    explicit DecodeError(std::uint32_t raw, const std::string& what)
        : std::runtime_error("quality value " + std::to_string(raw) + ": " + what), raw_(raw) {}

    std::uint32_t raw() const noexcept { return raw_; }

private:
    std::uint32_t raw_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StatsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ntl
