#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "mwt/errors.hpp"

namespace mwt::cli {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

using Cell = std::variant<double, long long, std::string>;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::initializer_list<Cell> cells) { rows_.emplace_back(cells); }
    std::size_t rows() const { return rows_.size(); }

    std::string str() const {
        std::string out;
        append_line(out, header_);
        for (const auto& row : rows_) {
            std::vector<std::string> fields;
            for (const auto& c : row) fields.push_back(render(c));
            append_line(out, fields);
        }
        return out;
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot write '" + path.string() + "'");
        const std::string text = str();
        os.write(text.data(), static_cast<std::streamsize>(text.size()));
    }

private:
    static std::string render(const Cell& c) {
        if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
        if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
        return std::get<std::string>(c);
    }

    static void append_line(std::string& out, const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += fields[i];
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace mwt::cli
