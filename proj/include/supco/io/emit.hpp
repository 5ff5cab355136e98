#pragma once

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace supco::io {

inline std::string fmt_num(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Rounded to 12 significant digits so JSON and CSV outputs agree.
inline double round12(double v) { return std::isfinite(v) ? std::stod(fmt_num(v)) : v; }

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

using Cell = std::variant<double, long long, std::string>;

class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::string& schema, const std::vector<std::string>& columns) : os_(os) {
        os_ << "# schema: " << schema << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << csv_field(columns[i]);
        os_ << "\n";
    }

    void row(const std::vector<Cell>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            std::visit([&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, double>) os_ << fmt_num(c);
                else if constexpr (std::is_same_v<T, long long>) os_ << c;
                else os_ << csv_field(c);
            }, cells[i]);
        }
        os_ << "\n";
    }

private:
    std::ostream& os_;
};

inline void put(nlohmann::ordered_json& j, const std::string& key, double v) {
    if (std::isfinite(v)) j[key] = round12(v);
    else j[key] = nullptr;
}

}  // namespace supco::io
