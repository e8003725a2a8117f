#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgshift {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or unparsable configuration; `key()` names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error("config key '" + key + "': " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested transverse order has no root at this frequency (below cutoff).
class NoGuidedMode : public Error {
public:
    using Error::Error;
};

/// Root sits on the cutoff itself (gammaX = 0); the tail is not normalizable.
class DegenerateMode : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double lo, double hi, double err)
        : Error(what), lo_(lo), hi_(hi), err_(err) {}
    double worst_lo() const noexcept { return lo_; }
    double worst_hi() const noexcept { return hi_; }
    double worst_error() const noexcept { return err_; }

private:
    double lo_, hi_, err_;
};

class SingularConfiguration : public Error {
public:
    using Error::Error;
};

class InsufficientSignal : public Error {
public:
    using Error::Error;
};

class UndersampledLine : public Error {
public:
    UndersampledLine(const std::string& what, std::size_t required)
        : Error(what), required_(required) {}
    std::size_t required_samples() const noexcept { return required_; }

private:
    std::size_t required_;
};

}  // namespace wgshift
