#include "ntl/resample.hpp"

#include <vector>

namespace ntl {

RasterGrid class_fraction_resample(const IntRaster& src, const GridSpec& target, std::int64_t class_label) {
    target.require_valid();
    std::vector<std::uint32_t> total(target.size(), 0);
    std::vector<std::uint32_t> hits(target.size(), 0);

    for (int r = 0; r < src.spec.nrows; ++r) {
        for (int c = 0; c < src.spec.ncols; ++c) {
            const std::size_t i = src.spec.offset(r, c);
            if (src.is_missing(i)) continue;
            const Coord p = src.spec.center(r, c);
            const auto cell = target.cell_at(p.x, p.y);
            if (!cell) continue;
            const std::size_t t = target.offset(cell->row, cell->col);
            ++total[t];
            hits[t] += (src.values[i] == class_label);
        }
    }

    RasterGrid out(target);
    for (std::size_t t = 0; t < target.size(); ++t) {
        if (total[t] == 0)
            out.set_missing(t);
        else
            out.set(t, static_cast<double>(hits[t]) / static_cast<double>(total[t]));
    }
    return out;
}

}  // namespace ntl
