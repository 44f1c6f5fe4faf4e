#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ugap::io {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

enum class Format { Csv, Json };

Format parse_format(const std::string& s);

// Columns holding log2 magnitudes must end in "_log2".
class Table {
public:
    explicit Table(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    void add_row(std::vector<Cell> row);
    bool empty() const noexcept { return rows_.empty(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);  // 12 significant digits
std::string render_csv(const Table& t);
nlohmann::ordered_json render_json(const Table& t);
std::string render(const Table& t, Format f);

// Writes through a temporary file and renames, so failures leave no partial output.
void write_report(const Table& t, Format f, const std::filesystem::path& path);

Table parse_csv(const std::string& text);

}  // namespace ugap::io
