#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isac::app {

// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    class Row {
    public:
        Row& operator<<(double v);
        Row& operator<<(int v);
        Row& operator<<(long v);
        Row& operator<<(long long v);
        Row& operator<<(const std::string& v);
        Row& operator<<(const char* v) { return *this << std::string(v); }

    private:
        friend class CsvTable;
        explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
        std::vector<std::string>& cells_;
    };

    Row row();
    const std::vector<std::string>& header() const { return header_; }
    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& at(std::size_t i) const { return rows_[i]; }
    // Index of a header column; throws std::out_of_range.
    std::size_t column(const std::string& name) const;
    // Throws std::logic_error when a row width differs from the header.
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace isac::app
