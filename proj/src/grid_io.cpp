#include "ntl/grid_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "ntl/format.hpp"

namespace ntl {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_int(std::string_view s, long long& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

struct Header {
    GridSpec spec;
    std::optional<std::string> nodata_token;
    std::optional<double> nodata;
    std::size_t first_data_line = 0;  // 0-based index into lines
};

bool is_header_key(const std::string& key) {
    static const char* keys[] = {"ncols", "nrows", "xllcorner", "yllcorner", "xllcenter", "yllcenter",
                                 "cellsize", "nodata_value", "dx", "dy"};
    return std::any_of(std::begin(keys), std::end(keys), [&](const char* k) { return key == k; });
}

Header parse_header(const std::vector<std::string_view>& lines, const std::string& source) {
    Header h;
    std::optional<long long> ncols, nrows;
    std::optional<double> xll, yll, cellsize;
    bool x_center = false, y_center = false;

    std::size_t i = 0;
    for (; i < lines.size(); ++i) {
        auto tokens = split_ws(lines[i]);
        if (tokens.empty()) continue;
        const std::string key = lower(tokens[0]);
        if (!is_header_key(key)) {
            if (std::isalpha(static_cast<unsigned char>(tokens[0][0])) && lower(tokens[0]) != "nan" &&
                lower(tokens[0]) != "inf")
                throw ParseError(source, i + 1, "unknown header key '" + std::string(tokens[0]) + "'");
            break;
        }
        if (tokens.size() != 2) throw ParseError(source, i + 1, "header key '" + key + "' expects one value");
        const auto value = tokens[1];
        if (key == "dx" || key == "dy") throw ParseError(source, i + 1, "rectangular cells are not supported");
        if (key == "ncols" || key == "nrows") {
            long long n = 0;
            if (!parse_int(value, n) || n < 1)
                throw ParseError(source, i + 1, key + " must be a positive integer");
            (key == "ncols" ? ncols : nrows) = n;
        } else if (key == "nodata_value") {
            auto v = parse_real(value);
            if (!v) throw ParseError(source, i + 1, "NODATA_value is not numeric");
            h.nodata = v;
            h.nodata_token = std::string(value);
        } else {
            auto v = parse_real(value);
            if (!v) throw ParseError(source, i + 1, key + " is not numeric");
            if (key == "xllcorner" || key == "xllcenter") {
                xll = v;
                x_center = key == "xllcenter";
            } else if (key == "yllcorner" || key == "yllcenter") {
                yll = v;
                y_center = key == "yllcenter";
            } else {
                if (!(*v > 0)) throw ParseError(source, i + 1, "cellsize must be positive");
                cellsize = v;
            }
        }
    }
    if (!ncols || !nrows || !xll || !yll || !cellsize)
        throw ParseError(source, i + 1, "header missing one of ncols, nrows, xllcorner, yllcorner, cellsize");

    h.spec.ncols = static_cast<int>(*ncols);
    h.spec.nrows = static_cast<int>(*nrows);
    h.spec.cell_size = *cellsize;
    h.spec.x_origin = x_center ? *xll - 0.5 * *cellsize : *xll;
    h.spec.y_origin = y_center ? *yll - 0.5 * *cellsize : *yll;
    h.first_data_line = i;
    return h;
}

std::vector<std::string_view> split_lines(const std::string& text) {
    std::vector<std::string_view> lines;
    std::string_view sv(text);
    std::size_t start = 0;
    while (start <= sv.size()) {
        auto end = sv.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < sv.size()) lines.push_back(sv.substr(start));
            break;
        }
        lines.push_back(sv.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

template <typename T, typename ParseCell>
Grid<T> parse_cells(const std::string& text, const std::string& source, ParseCell parse_cell) {
    const auto lines = split_lines(text);
    const Header h = parse_header(lines, source);
    Grid<T> grid(h.spec);

    int row = 0;
    std::size_t i = h.first_data_line;
    for (; i < lines.size(); ++i) {
        auto tokens = split_ws(lines[i]);
        if (tokens.empty()) continue;
        if (row >= h.spec.nrows)
            throw ParseError(source, i + 1, "more rows than nrows=" + std::to_string(h.spec.nrows));
        if (tokens.size() != static_cast<std::size_t>(h.spec.ncols))
            throw ParseError(source, i + 1,
                             "row has " + std::to_string(tokens.size()) + " cells, expected ncols=" +
                                 std::to_string(h.spec.ncols));
        for (int col = 0; col < h.spec.ncols; ++col) {
            const auto tok = tokens[static_cast<std::size_t>(col)];
            auto v = parse_cell(tok);
            if (!v) throw ParseError(source, i + 1, "non-numeric cell '" + std::string(tok) + "'");
            const bool is_nodata =
                (h.nodata && static_cast<double>(*v) == *h.nodata) || (h.nodata_token && tok == *h.nodata_token);
            if (is_nodata)
                grid.set_missing(row, col);
            else
                grid.set(row, col, *v);
        }
        ++row;
    }
    if (row != h.spec.nrows)
        throw ParseError(source, i, "found " + std::to_string(row) + " rows, expected nrows=" + std::to_string(h.spec.nrows));
    return grid;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::string header_text(const GridSpec& s, const std::string& nodata) {
    std::string out;
    out += "ncols " + std::to_string(s.ncols) + "\n";
    out += "nrows " + std::to_string(s.nrows) + "\n";
    out += "xllcorner " + format_real(s.x_origin) + "\n";
    out += "yllcorner " + format_real(s.y_origin) + "\n";
    out += "cellsize " + format_real(s.cell_size) + "\n";
    out += "NODATA_value " + nodata + "\n";
    return out;
}

template <typename T, typename Fmt>
std::string format_cells(const Grid<T>& grid, T nodata, const std::string& nodata_text, Fmt fmt) {
    std::string out = header_text(grid.spec, nodata_text);
    for (int r = 0; r < grid.spec.nrows; ++r) {
        for (int c = 0; c < grid.spec.ncols; ++c) {
            if (c) out += ' ';
            if (grid.is_missing(r, c)) {
                out += nodata_text;
            } else {
                const T v = grid.values[grid.spec.offset(r, c)];
                if (v == nodata) throw ContractViolation("valid cell holds the nodata value " + nodata_text);
                out += fmt(v);
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace

RasterGrid parse_grid(const std::string& text, const std::string& source) {
    return parse_cells<double>(text, source, [](std::string_view tok) { return parse_real(tok); });
}

IntRaster parse_int_grid(const std::string& text, const std::string& source) {
    return parse_cells<std::int64_t>(text, source, [](std::string_view tok) -> std::optional<std::int64_t> {
        long long v = 0;
        if (parse_int(tok, v)) return v;
        // Tolerate integral floats such as "6.0" or "-9999.0".
        auto d = parse_real(tok);
        if (d && std::floor(*d) == *d && std::abs(*d) < 9.0e15) return static_cast<std::int64_t>(*d);
        return std::nullopt;
    });
}

RasterGrid read_grid(const std::filesystem::path& path) { return parse_grid(slurp(path), path.string()); }

IntRaster read_int_grid(const std::filesystem::path& path) { return parse_int_grid(slurp(path), path.string()); }

GridSpec read_grid_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::string text, line;
    for (int n = 0; n < 8 && std::getline(in, line); ++n) text += line + "\n";
    return parse_header(split_lines(text), path.string()).spec;
}

std::string format_grid(const RasterGrid& grid, double nodata) {
    return format_cells<double>(grid, nodata, format_real(nodata), [](double v) { return format_real(v); });
}

std::string format_grid(const IntRaster& grid, std::int64_t nodata) {
    return format_cells<std::int64_t>(grid, nodata, std::to_string(nodata),
                                      [](std::int64_t v) { return std::to_string(v); });
}

void write_grid(const RasterGrid& grid, const std::filesystem::path& path, double nodata) {
    spit(path, format_grid(grid, nodata));
}

void write_grid(const IntRaster& grid, const std::filesystem::path& path, std::int64_t nodata) {
    spit(path, format_grid(grid, nodata));
}

}  // namespace ntl
