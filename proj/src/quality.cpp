#include "ntl/quality.hpp"

#include "ntl/errors.hpp"

namespace ntl {

QualityFlags decode_vnp46a2_quality(std::uint32_t qf) {
    if (qf >= (1u << 16)) throw DecodeError(qf, "exceeds 16 bits");
    QualityFlags f;
    f.day_night = static_cast<DayNight>(qf & 0x1u);
    const auto bg = (qf >> 1) & 0x7u;
    if (bg == 4 || bg == 6 || bg == 7) throw DecodeError(qf, "reserved land/water background code " + std::to_string(bg));
    f.background = static_cast<Background>(bg);
    f.cloud_mask_quality = static_cast<CloudMaskQuality>((qf >> 4) & 0x3u);
    f.cloud_confidence = static_cast<CloudConfidence>((qf >> 6) & 0x3u);
    f.shadow = (qf >> 8) & 0x1u;
    f.cirrus = (qf >> 9) & 0x1u;
    f.snow_ice = (qf >> 10) & 0x1u;
    return f;
}

std::uint16_t encode_vnp46a2_quality(const QualityFlags& f) {
    std::uint32_t qf = static_cast<std::uint32_t>(f.day_night);
    qf |= static_cast<std::uint32_t>(f.background) << 1;
    qf |= static_cast<std::uint32_t>(f.cloud_mask_quality) << 4;
    qf |= static_cast<std::uint32_t>(f.cloud_confidence) << 6;
    qf |= static_cast<std::uint32_t>(f.shadow) << 8;
    qf |= static_cast<std::uint32_t>(f.cirrus) << 9;
    qf |= static_cast<std::uint32_t>(f.snow_ice) << 10;
    return static_cast<std::uint16_t>(qf);
}

bool is_high_quality_vnp46a2(const QualityFlags& f) noexcept {
    return f.background == Background::land_no_desert && f.cloud_mask_quality == CloudMaskQuality::high &&
           (f.cloud_confidence == CloudConfidence::confident_clear ||
            f.cloud_confidence == CloudConfidence::probably_clear) &&
           !f.shadow && !f.cirrus && !f.snow_ice;
}

}  // namespace ntl
