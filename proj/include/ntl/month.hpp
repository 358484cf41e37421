#pragma once

#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ntl/errors.hpp"

namespace ntl {

// Calendar month. ordinal() counts months from year 0 so differences are
// plain integer subtraction.
struct MonthIndex {
    int year = 1970;
    int month = 1;

    constexpr int ordinal() const noexcept { return year * 12 + (month - 1); }

    static constexpr MonthIndex from_ordinal(int ord) noexcept {
        const int y = ord >= 0 ? ord / 12 : -((-ord + 11) / 12);
        return {y, ord - y * 12 + 1};
    }

    constexpr MonthIndex operator+(int months) const noexcept { return from_ordinal(ordinal() + months); }
    constexpr MonthIndex operator-(int months) const noexcept { return from_ordinal(ordinal() - months); }
    constexpr int operator-(const MonthIndex& other) const noexcept { return ordinal() - other.ordinal(); }

    constexpr auto operator<=>(const MonthIndex& o) const noexcept { return ordinal() <=> o.ordinal(); }
    constexpr bool operator==(const MonthIndex& o) const noexcept { return ordinal() == o.ordinal(); }

    std::string str() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
        return buf;
    }

    // "YYYY-MM"
    static std::optional<MonthIndex> parse(std::string_view s) {
        if (s.size() != 7 || s[4] != '-') return std::nullopt;
        int y = 0, m = 0;
        for (int i = 0; i < 4; ++i) {
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
            y = y * 10 + (s[i] - '0');
        }
        for (int i = 5; i < 7; ++i) {
            if (s[i] < '0' || s[i] > '9') return std::nullopt;
            m = m * 10 + (s[i] - '0');
        }
        if (m < 1 || m > 12) return std::nullopt;
        return MonthIndex{y, m};
    }
};

// Time-ordered layers, one per month, months strictly increasing. Months may
// have gaps.
template <typename Layer>
struct TimeStack {
    std::vector<MonthIndex> months;
    std::vector<Layer> layers;

    std::size_t size() const noexcept { return months.size(); }

    const Layer* find(const MonthIndex& m) const noexcept {
        for (std::size_t i = 0; i < months.size(); ++i)
            if (months[i] == m) return &layers[i];
        return nullptr;
    }

    void push_back(const MonthIndex& m, Layer layer) {
        if (!months.empty() && !(months.back() < m))
            throw ContractViolation("time stack months must be strictly increasing, got " + m.str() + " after " +
                                    months.back().str());
        months.push_back(m);
        layers.push_back(std::move(layer));
    }

    friend bool operator==(const TimeStack&, const TimeStack&) = default;
};

}  // namespace ntl
