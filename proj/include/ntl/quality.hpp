#pragma once

#include <cstdint>

namespace ntl {

enum class DayNight : std::uint8_t { night = 0, day = 1 };

enum class Background : std::uint8_t {
    land_desert = 0,
    land_no_desert = 1,
    inland_water = 2,
    sea_water = 3,
    coastal = 5,
};

enum class CloudMaskQuality : std::uint8_t { poor = 0, low = 1, medium = 2, high = 3 };

enum class CloudConfidence : std::uint8_t {
    confident_clear = 0,
    probably_clear = 1,
    probably_cloudy = 2,
    confident_cloudy = 3,
};

// VNP46A2 QF_Cloud_Mask, decoded.
//   bit 0      day/night
//   bits 1-3   land/water background (4, 6, 7 reserved)
//   bits 4-5   cloud mask quality
//   bits 6-7   cloud detection confidence
//   bit 8      shadow
//   bit 9      cirrus
//   bit 10     snow/ice
// Bits 11-15 carry nothing and are ignored on decode.
struct QualityFlags {
    DayNight day_night = DayNight::night;
    Background background = Background::land_desert;
    CloudMaskQuality cloud_mask_quality = CloudMaskQuality::poor;
    CloudConfidence cloud_confidence = CloudConfidence::confident_clear;
    bool shadow = false;
    bool cirrus = false;
    bool snow_ice = false;

    friend bool operator==(const QualityFlags&, const QualityFlags&) = default;
};

// Throws DecodeError for qf >= 2^16 or a reserved background code.
QualityFlags decode_vnp46a2_quality(std::uint32_t qf);
std::uint16_t encode_vnp46a2_quality(const QualityFlags& flags);

// Land without desert, top cloud-mask quality, at least probably clear, and
// no shadow, cirrus or snow/ice. Day/night is not consulted.
bool is_high_quality_vnp46a2(const QualityFlags& flags) noexcept;

// VSC-NTL cloud-free observation count: any non-zero count is usable.
constexpr bool is_high_quality_vscntl(std::int64_t cloud_free_count) noexcept { return cloud_free_count > 0; }

}  // namespace ntl
