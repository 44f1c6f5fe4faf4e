#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ugap/errors.hpp"
#include "ugap/report.hpp"

namespace ugap::io {

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ValidationError("unknown output format '" + s + "' (expected csv or json)");
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw ValidationError("a report needs at least one column");
    for (const auto& c : columns_)
        if (c.empty() || c.find_first_of(",\"\n") != std::string::npos)
            throw ValidationError("invalid column name '" + c + "'");
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw ValidationError("row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
}

std::string format_double(double v) {
    if (v == 0) return "0";
    return fmt::format("{:.12g}", v);
}

namespace {

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) return format_double(v);
            else if constexpr (std::is_same_v<V, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<V, std::string>) return v;
            else return std::to_string(v);
        },
        c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns().size(); ++i) out += (i ? "," : "") + t.columns()[i];
    out += "\n";
    for (const auto& row : t.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(cell_text(row[i]));
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json render_json(const Table& t) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows()) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& name = t.columns()[i];
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    // Same rounding as the CSV rendering.
                    if constexpr (std::is_same_v<V, double>) obj[name] = std::stod(format_double(v));
                    else obj[name] = v;
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json out;
    out["columns"] = t.columns();
    out["rows"] = std::move(rows);
    return out;
}

std::string render(const Table& t, Format f) { return f == Format::Csv ? render_csv(t) : render_json(t).dump(2) + "\n"; }

void write_report(const Table& t, Format f, const std::filesystem::path& path) {
    const std::string text = render(t, f);
    auto tmp = path;
    tmp += ".partial";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ResourceError("cannot write report to '" + path.string() + "'");
        os << text;
        if (!os.flush()) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw ResourceError("failed while writing '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ResourceError("cannot move report into place at '" + path.string() + "'");
    }
}

Table parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (quoted) {
            if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (ch == '\n') {
            fields.push_back(std::move(cur));
            cur.clear();
            lines.push_back(std::move(fields));
            fields.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty() || !fields.empty()) {
        fields.push_back(std::move(cur));
        lines.push_back(std::move(fields));
    }
    if (lines.empty()) throw ValidationError("empty CSV");
    Table t(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<Cell> row(lines[i].begin(), lines[i].end());
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace ugap::io
