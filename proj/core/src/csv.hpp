#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace pvperf::csv {

struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based line where the row starts
};

/// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.
/// A leading UTF-8 byte order mark is skipped.
class Reader {
public:
    Reader(std::istream& in, std::string module);

    /// False at end of input. Blank lines are skipped.
    bool next(Row& row);

private:
    int get();
    int peek();

    std::istream& in_;
    std::string module_;
    std::size_t line_ = 1;
    bool started_ = false;
};

/// Quotes the field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

}  // namespace pvperf::csv
