#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ntl/timeseries.hpp"
#include "test_util.hpp"

using namespace ntl;
using ntl::test::make_grid;

namespace {

ZoneSeries series_of(std::vector<std::optional<double>> v, MonthIndex start = {2017, 1}) {
    return ZoneSeries{"Z", start, std::move(v)};
}

ZoneMask full_mask(const GridSpec& spec) { return ZoneMask{spec, std::vector<std::uint8_t>(spec.size(), 1)}; }

}  // namespace

TEST_CASE("monthly_median_composite") {
    std::vector<RasterGrid> odd{make_grid({{1.0, NAN}}), make_grid({{5.0, NAN}}), make_grid({{3.0, NAN}})};
    const auto m = monthly_median_composite(odd);
    CHECK(m.values[0] == 3.0);
    CHECK(m.is_missing(1));

    std::vector<RasterGrid> even{make_grid({{1.0, 4.0}}), make_grid({{3.0, NAN}})};
    const auto e = monthly_median_composite(even);
    CHECK(e.values[0] == 2.0);
    CHECK(e.values[1] == 4.0);

    std::vector<RasterGrid> mismatched{make_grid({{1.0}}), make_grid({{1.0, 2.0}})};
    CHECK_THROWS_AS(monthly_median_composite(mismatched), ContractViolation);
    CHECK_THROWS_AS(monthly_median_composite({}), ContractViolation);
}

TEST_CASE("monthly_median_composite matches a sort-based oracle and ignores day order") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> val(0.0, 100.0);
    std::bernoulli_distribution miss(0.25);
    for (int trial = 0; trial < 100; ++trial) {
        const int days = 1 + trial % 31;
        std::vector<RasterGrid> daily;
        for (int d = 0; d < days; ++d) {
            RasterGrid g(GridSpec{3, 2, 0, 0, 1});
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (miss(rng))
                    g.set_missing(i);
                else
                    g.set(i, val(rng));
            }
            daily.push_back(g);
        }
        const auto out = monthly_median_composite(daily);
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::vector<double> v;
            for (const auto& g : daily)
                if (!g.is_missing(i)) v.push_back(g.values[i]);
            if (v.empty()) {
                CHECK(out.is_missing(i));
                continue;
            }
            std::sort(v.begin(), v.end());
            const std::size_t n = v.size();
            const double med = n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
            CHECK(out.values[i] == med);
        }
        std::shuffle(daily.begin(), daily.end(), rng);
        CHECK(monthly_median_composite(daily) == out);
    }
}

TEST_CASE("build_zone_series") {
    const GridSpec spec{2, 2, 0, 0, 1};
    const EventWindow w{{2018, 10}};
    REQUIRE(w.length() == 25);

    RadianceStack constant;
    for (int k = 0; k < w.length(); ++k) constant.push_back(w.first() + k, RasterGrid(spec, 10.0));
    const auto s = build_zone_series(constant, full_mask(spec), w, "A");
    CHECK(s.zone_id == "A");
    CHECK(s.start == w.first());
    REQUIRE(s.values.size() == 25);
    for (const auto& v : s.values) CHECK(v == 10.0);

    RadianceStack gap;
    for (int k = 0; k < w.length(); ++k)
        if (w.first() + k != MonthIndex{2018, 3}) gap.push_back(w.first() + k, RasterGrid(spec, 10.0));
    const auto sg = build_zone_series(gap, full_mask(spec), w);
    CHECK_FALSE(sg.at({2018, 3}).has_value());
    CHECK(sg.at({2018, 4}) == 10.0);

    RadianceStack dip;
    for (int k = 0; k < w.length(); ++k) {
        const auto m = w.first() + k;
        dip.push_back(m, RasterGrid(spec, m == w.event_month ? 6.0 : 10.0));
    }
    const auto sd = build_zone_series(dip, full_mask(spec), w);
    for (int k = 0; k < w.length(); ++k) {
        const auto m = w.first() + k;
        CHECK(sd.at(m) == (m == w.event_month ? 6.0 : 10.0));
    }
    CHECK(*event_drop(sd, w) == doctest::Approx(40.0).epsilon(1e-12));

    // Months beyond the stack and empty masks come out missing rather than zero.
    const auto empty = build_zone_series(constant, ZoneMask{spec, std::vector<std::uint8_t>(4, 0)}, w);
    for (const auto& v : empty.values) CHECK_FALSE(v.has_value());
    const auto later = build_zone_series(constant, full_mask(spec), EventWindow{{2022, 1}});
    for (const auto& v : later.values) CHECK_FALSE(v.has_value());
}

TEST_CASE("rolling_baseline") {
    const auto c = series_of(std::vector<std::optional<double>>(12, 10.0));
    CHECK_FALSE(rolling_baseline(c, c.start).has_value());
    for (int k = 1; k < 12; ++k) CHECK(rolling_baseline(c, c.start + k) == 10.0);

    const auto ramp = series_of({8.0, 9.0, 10.0, 11.0, 12.0, 13.0, 99.0});
    CHECK(rolling_baseline(ramp, ramp.start + 6) == 10.5);  // current month excluded

    auto holes = series_of({8.0, std::nullopt, 10.0, std::nullopt, 12.0, std::nullopt, 0.0});
    CHECK(rolling_baseline(holes, holes.start + 6) == 10.0);

    const auto gone = series_of({5.0, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                                 std::nullopt, 1.0});
    CHECK_FALSE(rolling_baseline(gone, gone.start + 7).has_value());
    CHECK(rolling_baseline(gone, gone.start + 7, 7) == 5.0);

    CHECK_THROWS_AS(rolling_baseline(c, c.start + 6, 0), ContractViolation);
}

TEST_CASE("percent_change and event_drop fixtures") {
    const auto s = series_of({10.0, 10.0, 10.0, 10.0, 10.0, 10.0, 6.0, std::nullopt});
    CHECK(*percent_change(s, s.start + 6) == doctest::Approx(-40.0).epsilon(1e-12));
    CHECK(percent_change(s, s.start + 5) == 0.0);
    CHECK_FALSE(percent_change(s, s.start + 7).has_value());
    CHECK_FALSE(percent_change(s, s.start).has_value());

    const auto dark = series_of({0.0, 0.0, 5.0});
    CHECK_FALSE(percent_change(dark, dark.start + 2).has_value());
    const auto near_dark = series_of({kBaselineEpsilon, 5.0});
    CHECK_FALSE(percent_change(near_dark, near_dark.start + 1).has_value());

    const EventWindow w{s.start + 6, 6, 1};
    CHECK(*event_drop(s, w) == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(*event_drop(s, EventWindow{s.start + 5, 5, 2}) == 0.0);
    CHECK_FALSE(event_drop(s, EventWindow{s.start + 7, 7, 0}).has_value());
}

TEST_CASE("relative measures: constant zero, scale invariance, baseline envelope") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> val(0.5, 80.0);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    std::bernoulli_distribution miss(0.2);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::optional<double>> v(25);
        for (auto& x : v)
            if (!miss(rng)) x = val(rng);
        const auto s = series_of(v);
        const double k = scale(rng);
        auto scaled = s;
        for (auto& x : scaled.values)
            if (x) *x *= k;
        const double c = val(rng);
        const auto flat = series_of(std::vector<std::optional<double>>(25, c));
        const EventWindow w{s.start + 12};
        for (int t = 0; t < 25; ++t) {
            const auto m = s.start + t;
            if (auto p = percent_change(flat, m)) CHECK(std::abs(*p) <= 1e-12);
            const auto a = percent_change(s, m);
            const auto b = percent_change(scaled, m);
            REQUIRE(a.has_value() == b.has_value());
            if (a) CHECK(*b == doctest::Approx(*a).epsilon(1e-9).scale(1.0));
            if (auto base = rolling_baseline(s, m)) {
                double lo = INFINITY, hi = -INFINITY;
                for (int j = std::max(0, t - 6); j < t; ++j)
                    if (v[static_cast<std::size_t>(j)]) {
                        lo = std::min(lo, *v[static_cast<std::size_t>(j)]);
                        hi = std::max(hi, *v[static_cast<std::size_t>(j)]);
                    }
                CHECK(*base >= lo);
                CHECK(*base <= hi);
            }
        }
        const auto d1 = event_drop(s, w);
        const auto d2 = event_drop(scaled, w);
        REQUIRE(d1.has_value() == d2.has_value());
        if (d1) CHECK(*d2 == doctest::Approx(*d1).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("series CSV") {
    const auto s = ZoneSeries{"Z007", {2018, 11}, {10.0, std::nullopt, 463.83, 0.1}};
    const auto text = format_series_csv(s, 1);
    CHECK(text ==
          "zone_id,year,month,mean_radiance,percent_change\n"
          "Z007,2018,11,10,\n"
          "Z007,2018,12,,\n"
          "Z007,2019,1,463.83,\n"
          "Z007,2019,2,0.1,-99.9784403768622\n");
    CHECK(parse_series_csv(text) == s);

    ntl::test::TempDir dir;
    write_series_csv(s, dir.path() / "s.csv");
    CHECK(read_series_csv(dir.path() / "s.csv") == s);

    CHECK_THROWS_AS(parse_series_csv("zone_id,year,month,mean_radiance,percent_change\nZ,2018,1,1,\nZ,2018,3,1,\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_series_csv("bogus\n"), ParseError);
}
