#include "csv.hpp"

#include "pvperf/error.hpp"

namespace pvperf::csv {

Reader::Reader(std::istream& in, std::string module) : in_(in), module_(std::move(module)) {}

int Reader::get() { return in_.get(); }
int Reader::peek() { return in_.peek(); }

bool Reader::next(Row& row) {
    if (!started_) {
        started_ = true;
        if (peek() == 0xEF) {
            char bom[3];
            in_.read(bom, 3);
            if (!(static_cast<unsigned char>(bom[1]) == 0xBB && static_cast<unsigned char>(bom[2]) == 0xBF))
                throw DataError(module_, "invalid byte order mark", 1);
        }
    }
    for (;;) {
        row.fields.clear();
        row.line = line_;
        if (peek() == std::char_traits<char>::eof()) return false;

        std::string field;
        bool quoted = false;
        bool after_quote = false;
        bool any = false;
        for (;;) {
            int c = get();
            if (c == std::char_traits<char>::eof()) {
                if (quoted) throw DataError(module_, "unterminated quoted field", row.line);
                break;
            }
            any = true;
            if (quoted) {
                if (c == '"') {
                    if (peek() == '"') {
                        get();
                        field.push_back('"');
                    } else {
                        quoted = false;
                        after_quote = true;
                    }
                } else {
                    if (c == '\n') ++line_;
                    field.push_back(static_cast<char>(c));
                }
                continue;
            }
            if (c == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
                after_quote = false;
            } else if (c == '\r' && peek() == '\n') {
                continue;
            } else if (c == '\n') {
                ++line_;
                break;
            } else if (c == '"') {
                if (!field.empty() || after_quote)
                    throw DataError(module_, "stray quote inside unquoted field", row.line);
                quoted = true;
            } else {
                if (after_quote) throw DataError(module_, "characters after closing quote", row.line);
                field.push_back(static_cast<char>(c));
            }
        }
        if (!any) return false;
        row.fields.push_back(std::move(field));
        if (row.fields.size() == 1 && row.fields[0].empty()) continue;  // blank line
        return true;
    }
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace pvperf::csv
