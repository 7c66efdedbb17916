#ifndef BYZGD_CSV_HPP
#define BYZGD_CSV_HPP

#include <optional>
#include <string>
#include <vector>

namespace byzgd::csvio {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render(const Table& table);
void write_file(const Table& table, const std::string& path);
Table parse(const std::string& text);

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

} // namespace byzgd::csvio

#endif
