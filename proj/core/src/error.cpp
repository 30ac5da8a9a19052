#include "pvperf/error.hpp"

namespace pvperf {
namespace {

std::string compose(const std::string& module, const std::string& message,
                    const std::string& file, std::size_t line) {
    std::string out = module + ": ";
    if (!file.empty()) {
        out += file;
        out += line ? ":" + std::to_string(line) + ": " : ": ";
    } else if (line) {
        out += "line " + std::to_string(line) + ": ";
    }
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string module, std::string message, std::string file,
             std::size_t line)
    : std::runtime_error(compose(module, message, file, line)),
      kind_(kind),
      module_(std::move(module)),
      message_(std::move(message)),
      file_(std::move(file)),
      line_(line) {}

Error Error::with_file(std::string file) const {
    return Error(kind_, module_, message_, std::move(file), line_);
}

void Error::rethrow_with_file(std::string file) const {
    switch (kind_) {
        case ErrorKind::data: throw DataError(module_, message_, line_, std::move(file));
        case ErrorKind::config: throw ConfigError(module_, message_, std::move(file));
        case ErrorKind::usage: break;
    }
    throw with_file(std::move(file));
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::usage: return "usage";
        case ErrorKind::data: return "data";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

}  // namespace pvperf
