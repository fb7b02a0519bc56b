#include "csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

namespace isac::app {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable::Row CsvTable::row() {
    rows_.emplace_back();
    return Row(rows_.back());
}

CsvTable::Row& CsvTable::Row::operator<<(double v) {
    cells_.push_back(format_number(v));
    return *this;
}
CsvTable::Row& CsvTable::Row::operator<<(int v) { return *this << static_cast<long long>(v); }
CsvTable::Row& CsvTable::Row::operator<<(long v) { return *this << static_cast<long long>(v); }
CsvTable::Row& CsvTable::Row::operator<<(long long v) {
    cells_.push_back(std::to_string(v));
    return *this;
}
CsvTable::Row& CsvTable::Row::operator<<(const std::string& v) {
    cells_.push_back(v);
    return *this;
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) throw std::out_of_range("no column " + name);
    return static_cast<std::size_t>(it - header_.begin());
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        if (cells.size() != header_.size()) throw std::logic_error("csv row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw OutputError("cannot open " + path + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            throw OutputError("write failed for " + path);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw OutputError("cannot replace " + path + ": " + ec.message());
    }
}

}  // namespace isac::app
