#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "ntl/pipeline.hpp"
#include "ntl/quality.hpp"
#include "test_util.hpp"

using namespace ntl;
using ntl::test::make_grid;

namespace {

RadianceStack stack_of(std::vector<RasterGrid> layers, MonthIndex start = {2018, 1}) {
    RadianceStack s;
    for (std::size_t k = 0; k < layers.size(); ++k) s.push_back(start + static_cast<int>(k), std::move(layers[k]));
    return s;
}

QualityStack quality_of(const RadianceStack& r, std::int64_t good) {
    QualityStack q;
    for (std::size_t k = 0; k < r.size(); ++k) q.push_back(r.months[k], IntRaster(r.layers[k].spec, good));
    return q;
}

}  // namespace

TEST_CASE("threshold fixtures") {
    const auto g = make_grid({{75.0, -3.0, 25.0, NAN}});
    const auto clipped = threshold(g, ThresholdMode::clip, 0, 50);
    CHECK(clipped.values[0] == 50.0);
    CHECK(clipped.values[1] == 0.0);
    CHECK(clipped.values[2] == 25.0);
    CHECK(clipped.is_missing(3));

    const auto removed = threshold(g, ThresholdMode::remove, 0, 50);
    CHECK(removed.is_missing(0));
    CHECK(removed.is_missing(1));
    CHECK(removed.values[2] == 25.0);
    CHECK(removed.is_missing(3));

    const auto edges = threshold(make_grid({{0.0, 50.0}}), ThresholdMode::remove, 0, 50);
    CHECK(edges.valid_count() == 2);

    CHECK_THROWS_AS(threshold(g, ThresholdMode::clip, 50, 50), ContractViolation);
    CHECK_THROWS_AS(threshold(g, ThresholdMode::remove, 10, 0), ContractViolation);
}

TEST_CASE("threshold properties on random grids") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> val(-40.0, 400.0);
    std::bernoulli_distribution miss(0.1);
    for (int trial = 0; trial < 200; ++trial) {
        RasterGrid g(GridSpec{6, 5, 0, 0, 1});
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (miss(rng))
                g.set_missing(i);
            else
                g.set(i, val(rng));
        }
        const auto c = threshold(g, ThresholdMode::clip);
        const auto r = threshold(g, ThresholdMode::remove);
        CHECK(threshold(c, ThresholdMode::clip) == c);
        CHECK(threshold(r, ThresholdMode::remove) == r);
        // Clip never produces a value that remove would delete.
        CHECK(threshold(c, ThresholdMode::remove) == c);
        // Removal keeps exactly the cells clip leaves untouched.
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!r.is_missing(i)) CHECK(c.values[i] == r.values[i]);
    }
}

TEST_CASE("decode_vnp46a2_quality fixtures") {
    const auto zero = decode_vnp46a2_quality(0);
    CHECK(zero == QualityFlags{});
    CHECK(zero.day_night == DayNight::night);
    CHECK(zero.background == Background::land_desert);
    CHECK(zero.cloud_mask_quality == CloudMaskQuality::poor);
    CHECK(zero.cloud_confidence == CloudConfidence::confident_clear);

    const auto good = decode_vnp46a2_quality(114);
    CHECK(good.background == Background::land_no_desert);
    CHECK(good.cloud_mask_quality == CloudMaskQuality::high);
    CHECK(good.cloud_confidence == CloudConfidence::probably_clear);
    CHECK_FALSE(good.shadow);
    CHECK_FALSE(good.cirrus);
    CHECK_FALSE(good.snow_ice);

    auto shadowed = good;
    shadowed.shadow = true;
    CHECK(decode_vnp46a2_quality(370) == shadowed);

    for (std::uint32_t bg : {4u, 6u, 7u}) {
        try {
            decode_vnp46a2_quality(bg << 1);
            FAIL("reserved background accepted");
        } catch (const DecodeError& e) {
            CHECK(e.raw() == (bg << 1));
        }
    }
    CHECK_THROWS_AS(decode_vnp46a2_quality(1u << 16), DecodeError);
    CHECK(decode_vnp46a2_quality((1u << 11) | 114u) == good);  // unused high bits ignored
}

TEST_CASE("quality bit layout round trips over every defined field combination") {
    int valid = 0;
    for (std::uint32_t qf = 0; qf < (1u << 11); ++qf) {
        const auto bg = (qf >> 1) & 7u;
        if (bg == 4 || bg == 6 || bg == 7) {
            CHECK_THROWS_AS(decode_vnp46a2_quality(qf), DecodeError);
            continue;
        }
        ++valid;
        const auto flags = decode_vnp46a2_quality(qf);
        REQUIRE(encode_vnp46a2_quality(flags) == qf);
        REQUIRE(decode_vnp46a2_quality(encode_vnp46a2_quality(flags)) == flags);
    }
    CHECK(valid == 2 * 5 * 4 * 4 * 2 * 2 * 2);
}

TEST_CASE("is_high_quality_vnp46a2") {
    CHECK(is_high_quality_vnp46a2(decode_vnp46a2_quality(114)));
    CHECK_FALSE(is_high_quality_vnp46a2(decode_vnp46a2_quality(370)));

    auto water = decode_vnp46a2_quality(114);
    water.background = Background::inland_water;
    CHECK_FALSE(is_high_quality_vnp46a2(water));

    // Exhaustive: the rule accepts exactly the land-no-desert, high-quality,
    // clear-ish, no shadow/cirrus/snow codes, with either day/night bit.
    std::set<std::uint32_t> accepted;
    for (std::uint32_t qf = 0; qf < (1u << 11); ++qf) {
        const auto bg = (qf >> 1) & 7u;
        if (bg == 4 || bg == 6 || bg == 7) continue;
        if (is_high_quality_vnp46a2(decode_vnp46a2_quality(qf))) accepted.insert(qf);
    }
    CHECK(accepted == std::set<std::uint32_t>{50, 51, 114, 115});
}

TEST_CASE("is_high_quality_vscntl") {
    CHECK_FALSE(is_high_quality_vscntl(0));
    CHECK(is_high_quality_vscntl(1));
    CHECK(is_high_quality_vscntl(17));
}

TEST_CASE("impute_pixel fixtures") {
    const int t = 100;
    PixelHistory constant;
    for (int m = t - 12; m < t; ++m) constant.observations.push_back({m, 9.0, true});
    CHECK(*impute_pixel(constant, t, 12) == 9.0);

    PixelHistory two{{{t - 2, 10.0, true}, {t - 1, 20.0, true}}};
    const double expected = (10.0 * (1.0 / 2) + 20.0 * (1.0 / 1)) / (1.0 / 2 + 1.0 / 1);
    CHECK(*impute_pixel(two, t, 12) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(*impute_pixel(two, t, 12) == doctest::Approx(16.666666666666668).epsilon(1e-12));

    PixelHistory none{{{t - 3, 5.0, false}, {t - 13, 7.0, true}}};
    CHECK_FALSE(impute_pixel(none, t, 12).has_value());
    CHECK(*impute_pixel(none, t, 13) == 7.0);  // window boundary t - window is included

    PixelHistory future{{{t + 1, 5.0, true}}};
    CHECK_FALSE(impute_pixel(future, t, 12).has_value());

    CHECK_THROWS_AS(impute_pixel(two, t, 0), ContractViolation);
    PixelHistory conflict{{{t, 4.0, true}}};
    CHECK_THROWS_AS(impute_pixel(conflict, t, 12), ContractViolation);
}

TEST_CASE("quality_filter_and_impute") {
    const auto base = make_grid({{1.0, 2.0}});
    SUBCASE("all high quality is the identity") {
        auto r = stack_of({base, make_grid({{3.0, 4.0}}), make_grid({{5.0, 6.0}})});
        CHECK(quality_filter_and_impute(r, quality_of(r, 114), Dataset::vnp46a2) == r);
        CHECK(quality_filter_and_impute(r, quality_of(r, 3), Dataset::vsc_ntl) == r);
    }
    SUBCASE("low quality pixel is imputed from its history") {
        auto r = stack_of({make_grid({{10.0, 2.0}}), make_grid({{20.0, 2.0}}), make_grid({{99.0, 2.0}})});
        auto q = quality_of(r, 1);
        q.layers[2].set(0, 0, 0);
        const auto out = quality_filter_and_impute(r, q, Dataset::vsc_ntl);
        PixelHistory h{{{r.months[0].ordinal(), 10.0, true}, {r.months[1].ordinal(), 20.0, true}}};
        CHECK(out.layers[2].values[0] == *impute_pixel(h, r.months[2].ordinal(), 12));
        CHECK(out.layers[2].values[0] == doctest::Approx(50.0 / 3.0));
        CHECK(out.layers[2].values[1] == 2.0);
    }
    SUBCASE("low quality at series start becomes missing") {
        auto r = stack_of({base, base});
        auto q = quality_of(r, 114);
        q.layers[0].set(0, 1, 242);
        const auto out = quality_filter_and_impute(r, q, Dataset::vnp46a2);
        CHECK(out.layers[0].is_missing(0, 1));
        CHECK(out.layers[0].values[0] == 1.0);
    }
    SUBCASE("missing quality cells and missing radiance are low quality") {
        auto r = stack_of({base, make_grid({{NAN, 7.0}})});
        auto q = quality_of(r, 5);
        q.layers[1].set_missing(1);
        const auto out = quality_filter_and_impute(r, q, Dataset::vsc_ntl);
        CHECK(out.layers[1].values[0] == 1.0);
        CHECK(out.layers[1].values[1] == 2.0);
    }
    SUBCASE("imputation uses original high-quality values only") {
        auto r = stack_of({make_grid({{8.0}}), make_grid({{0.0}}), make_grid({{0.0}})});
        auto q = quality_of(r, 1);
        q.layers[1].set(0, 0);
        q.layers[2].set(0, 0);
        const auto out = quality_filter_and_impute(r, q, Dataset::vsc_ntl);
        CHECK(out.layers[1].values[0] == 8.0);
        CHECK(out.layers[2].values[0] == 8.0);
    }
    SUBCASE("months gaps shift the weights") {
        RadianceStack r;
        r.push_back({2018, 1}, make_grid({{10.0}}));
        r.push_back({2018, 4}, make_grid({{40.0}}));
        r.push_back({2018, 5}, make_grid({{0.0}}));
        auto q = quality_of(r, 1);
        q.layers[2].set(0, 0);
        const auto out = quality_filter_and_impute(r, q, Dataset::vsc_ntl);
        CHECK(out.layers[2].values[0] == doctest::Approx((10.0 / 4 + 40.0) / (1.0 / 4 + 1.0)));
    }
    SUBCASE("misaligned stacks") {
        auto r = stack_of({base, base});
        auto q = quality_of(stack_of({base, base}, {2019, 1}), 1);
        CHECK_THROWS_AS(quality_filter_and_impute(r, q, Dataset::vsc_ntl), ContractViolation);
        auto q2 = quality_of(r, 1);
        q2.layers[1] = IntRaster(GridSpec{1, 1, 0, 0, 1}, 1);
        CHECK_THROWS_AS(quality_filter_and_impute(r, q2, Dataset::vsc_ntl), ContractViolation);
    }
    SUBCASE("reserved quality code propagates as a decode error") {
        auto r = stack_of({base});
        auto q = quality_of(r, 8);
        CHECK_THROWS_AS(quality_filter_and_impute(r, q, Dataset::vnp46a2), DecodeError);
    }
}

TEST_CASE("quality_filter_and_impute never touches high-quality pixels") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> val(0.0, 60.0);
    std::bernoulli_distribution bad(0.3);
    for (int trial = 0; trial < 30; ++trial) {
        RadianceStack r;
        QualityStack q;
        const GridSpec spec{5, 4, 0, 0, 1};
        for (int k = 0; k < 20; ++k) {
            RasterGrid layer(spec);
            IntRaster ql(spec, 50);
            for (std::size_t i = 0; i < layer.size(); ++i) {
                layer.set(i, val(rng));
                if (bad(rng)) ql.set(i, 242);
            }
            r.push_back(MonthIndex{2017, 1} + k, layer);
            q.push_back(MonthIndex{2017, 1} + k, ql);
        }
        const auto out = quality_filter_and_impute(r, q, Dataset::vnp46a2);
        for (std::size_t k = 0; k < r.size(); ++k)
            for (std::size_t i = 0; i < spec.size(); ++i)
                if (q.layers[k].values[i] == 50) {
                    REQUIRE_FALSE(out.layers[k].is_missing(i));
                    REQUIRE(out.layers[k].values[i] == r.layers[k].values[i]);
                }
    }
}

TEST_CASE("apply_built_mask") {
    const auto v = make_grid({{5.0, 6.0, 7.0, 8.0}});
    const auto frac = make_grid({{1.0, 0.2, 0.5, NAN}});
    const auto out = apply_built_mask(v, frac, 0.5);
    CHECK(out.values[0] == 5.0);
    CHECK(out.is_missing(1));
    CHECK(out.values[2] == 7.0);
    CHECK(out.is_missing(3));
    CHECK_THROWS_AS(apply_built_mask(v, make_grid({{1.0}}), 0.5), ContractViolation);
    CHECK_THROWS_AS(apply_built_mask(v, frac, 1.5), ContractViolation);
}

TEST_CASE("enumerate_configs") {
    const auto vsc = enumerate_configs(Dataset::vsc_ntl);
    const auto vnp = enumerate_configs(Dataset::vnp46a2);
    REQUIRE(vsc.size() == 12);
    REQUIRE(vnp.size() == 4);

    std::vector<std::string> labels;
    for (const auto& c : vsc) labels.push_back(c.label());
    CHECK(labels == std::vector<std::string>{"raw", "clip", "remove", "built", "clip+built", "remove+built", "quality",
                                             "clip+quality", "remove+quality", "built+quality",
                                             "clip+built+quality", "remove+built+quality"});
    labels.clear();
    for (const auto& c : vnp) labels.push_back(c.label());
    CHECK(labels == std::vector<std::string>{"raw", "built", "quality", "built+quality"});

    for (const auto& c : vsc) {
        CHECK(config_from_label(c.label(), c) == c);
        CHECK_NOTHROW(c.validate());
    }
    CHECK_THROWS_AS(config_from_label("built+clip", {}), ConfigError);
    CHECK_THROWS_AS(config_from_label("clip+remove", {}), ConfigError);
    CHECK_THROWS_AS(config_from_label("", {}), ConfigError);
}

TEST_CASE("run_pipeline") {
    auto r = stack_of({make_grid({{75.0, 10.0}}), make_grid({{20.0, 75.0}})});
    const auto q = quality_of(r, 114);
    const RasterGrid built = make_grid({{1.0, 0.0}});

    SUBCASE("all stages disabled is the identity") {
        PipelineConfig raw;
        CHECK(run_pipeline({r, &q, &built}, raw) == r);
        CHECK(run_pipeline({r}, raw) == r);
    }
    SUBCASE("VNP46A2 rejects thresholding") {
        PipelineConfig bad;
        bad.dataset = Dataset::vnp46a2;
        bad.threshold_mode = ThresholdMode::clip;
        CHECK_THROWS_AS(bad.validate(), ConfigError);
        CHECK_THROWS_AS(run_pipeline({r}, bad), ConfigError);
    }
    SUBCASE("clip-only caps every 75") {
        PipelineConfig clip;
        clip.threshold_mode = ThresholdMode::clip;
        const auto out = run_pipeline({r}, clip);
        CHECK(out.layers[0].values[0] == 50.0);
        CHECK(out.layers[1].values[1] == 50.0);
        CHECK(out.layers[0].values[1] == 10.0);
    }
    SUBCASE("missing inputs name the stage") {
        PipelineConfig cfg;
        cfg.quality_filter = true;
        try {
            run_pipeline({r}, cfg);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("quality") != std::string::npos);
        }
        cfg = {};
        cfg.built_mask = true;
        try {
            run_pipeline({r}, cfg);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("built") != std::string::npos);
        }
    }
    SUBCASE("imputation runs before thresholding and built masking") {
        auto qq = quality_of(r, 3);
        qq.layers[1].set(0, 0, 0);  // low quality; history holds 75
        PipelineConfig cfg;
        cfg.quality_filter = true;
        cfg.threshold_mode = ThresholdMode::clip;
        cfg.built_mask = true;
        const auto out = run_pipeline({r, &qq, &built}, cfg);
        CHECK(out.layers[1].values[0] == 50.0);  // imputed 75, then clipped
        CHECK(out.layers[0].is_missing(1));       // not built
        CHECK(out.layers[1].is_missing(1));
    }
}
