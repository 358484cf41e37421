#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ntl/errors.hpp"

namespace ntl {

struct CellIndex {
    int row = 0;
    int col = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

struct Coord {
    double x = 0.0;
    double y = 0.0;
};

// Square-cell georeferencing. Origin is the lower-left corner of the grid,
// row 0 is the northernmost row.
struct GridSpec {
    int ncols = 1;
    int nrows = 1;
    double x_origin = 0.0;
    double y_origin = 0.0;
    double cell_size = 1.0;

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(ncols) * static_cast<std::size_t>(nrows);
    }

    std::size_t offset(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(ncols) + static_cast<std::size_t>(col);
    }

    Coord center(int row, int col) const noexcept {
        return {x_origin + (col + 0.5) * cell_size, y_origin + (nrows - row - 0.5) * cell_size};
    }

    // Cell containing (x, y); cells are half-open [west, east) x (south, north].
    std::optional<CellIndex> cell_at(double x, double y) const noexcept {
        const double fc = std::floor((x - x_origin) / cell_size);
        const double fr = std::floor((y_origin + nrows * cell_size - y) / cell_size);
        if (!(fc >= 0 && fc < ncols && fr >= 0 && fr < nrows)) return std::nullopt;
        return CellIndex{static_cast<int>(fr), static_cast<int>(fc)};
    }

    bool valid() const noexcept {
        return ncols >= 1 && nrows >= 1 && cell_size > 0 && std::isfinite(cell_size) && std::isfinite(x_origin) &&
               std::isfinite(y_origin);
    }

    void require_valid() const {
        if (!valid()) throw ContractViolation("invalid grid spec: ncols, nrows must be >= 1 and cell_size > 0");
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Row-major grid with a per-cell missing flag. Values under a missing flag
// are never read by any statistic.
template <typename T>
struct Grid {
    GridSpec spec;
    std::vector<T> values;
    std::vector<std::uint8_t> missing;

    Grid() : values(1, T{}), missing(1, 0) {}

    explicit Grid(const GridSpec& s, T fill = T{}) : spec(s), values(s.size(), fill), missing(s.size(), 0) {
        spec.require_valid();
    }

    Grid(const GridSpec& s, std::vector<T> v, std::vector<std::uint8_t> m)
        : spec(s), values(std::move(v)), missing(std::move(m)) {
        spec.require_valid();
        if (values.size() != spec.size() || missing.size() != spec.size())
            throw ContractViolation("grid buffers do not match ncols*nrows");
    }

    std::size_t size() const noexcept { return values.size(); }

    bool is_missing(std::size_t i) const noexcept { return missing[i] != 0; }
    bool is_missing(int row, int col) const noexcept { return is_missing(spec.offset(row, col)); }

    std::optional<T> get(std::size_t i) const noexcept {
        if (is_missing(i)) return std::nullopt;
        return values[i];
    }
    std::optional<T> get(int row, int col) const noexcept { return get(spec.offset(row, col)); }

    void set(std::size_t i, T v) noexcept {
        values[i] = v;
        missing[i] = 0;
    }
    void set(int row, int col, T v) noexcept { set(spec.offset(row, col), v); }

    void set_missing(std::size_t i) noexcept {
        values[i] = T{};
        missing[i] = 1;
    }
    void set_missing(int row, int col) noexcept { set_missing(spec.offset(row, col)); }

    std::size_t valid_count() const noexcept {
        std::size_t n = 0;
        for (auto m : missing) n += (m == 0);
        return n;
    }

    // Equality ignores the stored value of missing cells.
    friend bool operator==(const Grid& a, const Grid& b) {
        if (!(a.spec == b.spec) || a.missing != b.missing) return false;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            if (!a.is_missing(i) && !(a.values[i] == b.values[i])) return false;
        return true;
    }
};

using RasterGrid = Grid<double>;
using IntRaster = Grid<std::int64_t>;

template <typename A, typename B>
void require_same_grid(const Grid<A>& a, const Grid<B>& b, const char* what) {
    if (!(a.spec == b.spec)) throw ContractViolation(std::string(what) + ": grid specs differ");
}

}  // namespace ntl
