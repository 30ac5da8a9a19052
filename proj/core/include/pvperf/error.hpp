#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvperf {

enum class ErrorKind { usage, data, config };

/// Base for every error the toolkit raises. Carries enough context
/// (module, file, line) for the CLI to emit a machine-readable record.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, std::string message,
          std::string file = {}, std::size_t line = 0);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

    /// Returns a copy with the file name attached (line is kept).
    Error with_file(std::string file) const;

    /// Throws a copy of the same error class with the file name attached.
    [[noreturn]] void rethrow_with_file(std::string file) const;

private:
    ErrorKind kind_;
    std::string module_;
    std::string message_;
    std::string file_;
    std::size_t line_;
};

class DataError : public Error {
public:
    DataError(std::string module, std::string message, std::size_t line = 0, std::string file = {})
        : Error(ErrorKind::data, std::move(module), std::move(message), std::move(file), line) {}
};

class ConfigError : public Error {
public:
    ConfigError(std::string module, std::string message, std::string file = {})
        : Error(ErrorKind::config, std::move(module), std::move(message), std::move(file)) {}
};

class UsageError : public Error {
public:
    explicit UsageError(std::string message)
        : Error(ErrorKind::usage, "cli", std::move(message)) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace pvperf
