#include "dirshift/disk.hpp"

#include <cmath>

namespace dirshift {

std::vector<DiskPoint> make_disk_grid(const GridSpec& g) {
    if (g.radii < 1 || g.angles < 1)
        throw std::invalid_argument("make_disk_grid: radii and angles must be positive");
    if (!(g.r_min > 0.0 && g.r_min <= g.r_max && g.r_max < 1.0))
        throw std::invalid_argument("make_disk_grid: need 0 < r_min <= r_max < 1");
    std::vector<DiskPoint> pts;
    pts.reserve(static_cast<size_t>(g.radii) * g.angles);
    const double q = (g.radii > 1)
        ? std::pow((1.0 - g.r_max) / (1.0 - g.r_min), 1.0 / (g.radii - 1))
        : 1.0;
    for (int i = 0; i < g.radii; ++i) {
        const double r = 1.0 - (1.0 - g.r_min) * std::pow(q, i);
        for (int j = 0; j < g.angles; ++j) {
            const double th = 2.0 * M_PI * j / g.angles;
            pts.emplace_back(Complex(r * std::cos(th), r * std::sin(th)));
        }
    }
    return pts;
}

}  // namespace dirshift
