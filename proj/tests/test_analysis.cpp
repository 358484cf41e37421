#include <doctest.h>

#include <cmath>
#include <random>

#include "ntl/analysis.hpp"
#include "test_util.hpp"

using namespace ntl;

namespace {

// Reference: extended-precision two-pass.
double reference_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    long double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

Zone zone(std::string id, double damage, std::int64_t pop = 1000) { return Zone{std::move(id), {}, damage, pop}; }

std::vector<std::string> ids(const std::vector<Zone>& zs) {
    std::vector<std::string> out;
    for (const auto& z : zs) out.push_back(z.zone_id);
    return out;
}

}  // namespace

TEST_CASE("pearson fixtures") {
    CHECK(pearson(std::vector{1.0, 2.0, 3.0}, std::vector{2.0, 4.0, 6.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pearson(std::vector{1.0, 2.0, 3.0}, std::vector{3.0, 2.0, 1.0}) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(pearson(std::vector{1.0, 2.0, 3.0, 4.0}, std::vector{1.0, 3.0, 2.0, 4.0}) ==
          doctest::Approx(0.8).epsilon(1e-14));

    CHECK_THROWS_AS(pearson(std::vector{1.0}, std::vector{1.0}), StatsError);
    CHECK_THROWS_AS(pearson(std::vector{1.0, 2.0}, std::vector{1.0, 2.0, 3.0}), StatsError);
    CHECK_THROWS_AS(pearson(std::vector{1.0, 1.0, 1.0}, std::vector{1.0, 2.0, 3.0}), StatsError);
    CHECK_THROWS_AS(pearson(std::vector{1.0, 2.0, 3.0}, std::vector{4.0, 4.0, 4.0}), StatsError);
}

TEST_CASE("pearson survives a large common offset") {
    const std::vector<double> x{1e9 + 1, 1e9 + 2, 1e9 + 3, 1e9 + 4};
    const std::vector<double> y{1.0, 3.0, 2.0, 4.0};
    CHECK(pearson(x, y) == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("pearson properties on random vectors") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_int_distribution<int> len(2, 1000);
    std::uniform_real_distribution<double> coef(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = len(rng);
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = nd(rng) * 5 + 3;
            y[i] = 0.5 * x[i] + nd(rng);
        }
        const double r = pearson(x, y);
        CHECK(std::abs(r - reference_pearson(x, y)) <= 1e-12);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        CHECK(pearson(y, x) == doctest::Approx(r).epsilon(1e-14));
        CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-14));
        std::vector<double> neg(n), affine(n), flipped(n);
        const double a = coef(rng), b = nd(rng) * 100;
        for (int i = 0; i < n; ++i) {
            neg[i] = -x[i];
            affine[i] = a * y[i] + b;
            flipped[i] = -a * y[i] + b;
        }
        CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(std::abs(pearson(x, affine) - r) <= 1e-12);
        CHECK(std::abs(pearson(x, flipped) + r) <= 1e-12);
    }
}

TEST_CASE("pearson of independent draws averages near zero") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double sum = 0.0;
    const int draws = 2000;
    for (int d = 0; d < draws; ++d) {
        std::vector<double> drops(25), damage(25);
        for (int i = 0; i < 25; ++i) {
            drops[i] = 100 * u(rng);
            damage[i] = u(rng);
        }
        sum += pearson(drops, damage);
    }
    CHECK(std::abs(sum / draws) < 0.03);
}

TEST_CASE("filter_zones") {
    const std::vector<DropSample> samples{
        {"A", "H", 0.005, 10, 5.0},
        {"B", "H", 0.01, 10, 6.0},
        {"C", "H", 0.2, 10, std::nullopt},
        {"D", "H", 0.3, 10, 30.0},
    };
    const auto r = filter_zones(samples);
    REQUIRE(r.kept.size() == 2);
    CHECK(r.kept[0].zone_id == "B");
    CHECK(r.kept[1].zone_id == "D");
    REQUIRE(r.excluded.size() == 2);
    CHECK(r.excluded[0].sample.zone_id == "A");
    CHECK(r.excluded[0].reason == ExclusionReason::below_damage_threshold);
    CHECK(r.excluded[1].sample.zone_id == "C");
    CHECK(r.excluded[1].reason == ExclusionReason::missing_drop);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 0.05);
    std::bernoulli_distribution miss(0.2);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<DropSample> s(30);
        for (auto& x : s) {
            x.damage_ratio = u(rng);
            if (!miss(rng)) x.drop = u(rng);
        }
        const auto f = filter_zones(s);
        CHECK(f.kept.size() <= s.size());
        CHECK(f.kept.size() + f.excluded.size() == s.size());
        for (const auto& k : f.kept) CHECK(k.damage_ratio >= 0.01);
    }
}

TEST_CASE("select_case_study_zones") {
    const std::vector<Zone> zs{zone("D", 0.05), zone("A", 0.5), zone("F", 0.01),
                               zone("B", 0.3),  zone("E", 0.02), zone("C", 0.1)};
    const auto sel = select_case_study_zones(zs, 3);
    CHECK(ids(sel.top) == std::vector<std::string>{"A", "B", "C"});
    CHECK(ids(sel.bottom) == std::vector<std::string>{"F", "E", "D"});

    const std::vector<Zone> tied{zone("Q", 0.5), zone("P", 0.2), zone("M", 0.2), zone("N", 0.0)};
    const auto t = select_case_study_zones(tied, 1);
    CHECK(ids(t.top) == std::vector<std::string>{"Q"});
    CHECK(ids(t.bottom) == std::vector<std::string>{"N"});
    const auto t2 = select_case_study_zones(tied, 2);
    CHECK(ids(t2.top) == std::vector<std::string>{"Q", "M"});
    CHECK(ids(t2.bottom) == std::vector<std::string>{"N", "P"});

    CHECK_THROWS_AS(select_case_study_zones(zs, 0), ConfigError);
    CHECK_THROWS_AS(select_case_study_zones(zs, 4), ConfigError);

    std::vector<Zone> pops{zone("A", 0.5, 10), zone("B", 0.4, 5000), zone("C", 0.3, 6000), zone("D", 0.2, 7000),
                           zone("E", 0.1, 8000)};
    const auto banded = select_case_study_zones(pops, 2, PopulationBand{1000, 10000});
    CHECK(ids(banded.top) == std::vector<std::string>{"B", "C"});
    CHECK(ids(banded.bottom) == std::vector<std::string>{"E", "D"});
    CHECK_THROWS_AS(select_case_study_zones(pops, 2, PopulationBand{6500, 10000}), ConfigError);
}

TEST_CASE("correlate_method and build_report") {
    std::vector<DropSample> perfect;
    for (int i = 0; i < 25; ++i) {
        const double d = 0.01 + 0.02 * i;
        perfect.push_back({"Z" + std::to_string(i), i % 2 ? "Irma" : "Harvey", d, 1000, 100 * d});
    }
    PipelineConfig raw;
    const auto row = correlate_method(raw, perfect);
    CHECK(row.methods == "raw");
    CHECK(row.n_samples == 25);
    CHECK(row.pcc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(correlate_method(raw, std::span(perfect).first(1)), StatsError);

    std::vector<PipelineConfig> expected = enumerate_configs(Dataset::vsc_ntl);
    for (const auto& c : enumerate_configs(Dataset::vnp46a2)) expected.push_back(c);
    REQUIRE(expected.size() == 16);

    std::vector<ConfigResult> results;
    for (auto it = expected.rbegin(); it != expected.rend(); ++it) results.push_back({*it, perfect});
    const auto report = build_report(expected, results, 0.01, {"Harvey", "Irma"});
    REQUIRE(report.rows.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(report.rows[i].methods == expected[i].label());
        CHECK(report.rows[i].dataset == expected[i].dataset);
    }

    const auto csv = format_report_csv(report);
    CHECK(csv.rfind("dataset,methods,pcc,n_samples\nVSC-NTL,raw,", 0) == 0);
    CHECK(csv.find("VNP46A2,built+quality,") != std::string::npos);

    results.pop_back();  // drops VSC-NTL raw
    try {
        build_report(expected, results);
        FAIL("expected ReportError");
    } catch (const ReportError& e) {
        CHECK(std::string(e.what()).find("VSC-NTL/raw") != std::string::npos);
    }

    std::vector<ConfigResult> thin{{expected[0], {perfect[0], perfect[1]}}};
    thin[0].samples[1].drop.reset();
    CHECK_THROWS_AS(build_report(std::span(expected).first(1), thin), ReportError);
}
