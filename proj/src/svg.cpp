#include "snapbm/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace snapbm {

void write_heatmap_svg(const std::string& path, const GridHistogram& hist) {
    const GridSpec& g = *hist.grid;
    double max_density = 0.0;
    for (int c = 0; c < g.num_cells(); ++c)
        max_density = std::max(max_density, hist.mass[c] / g.cell_areas()[c]);
    if (max_density <= 0.0) max_density = 1.0;

    Vec2 lo = g.cell_centers()[0], hi = g.cell_centers()[0];
    for (const Vec2& p : g.cell_centers()) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    double h = g.pitch();
    double scale = 800.0 / std::max(hi.x - lo.x + h, hi.y - lo.y + h);

    std::ofstream out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << (hi.x - lo.x + h) * scale << "\" height=\"" << (hi.y - lo.y + h) * scale
        << "\">\n";
    char buf[256];
    for (int c = 0; c < g.num_cells(); ++c) {
        double v = hist.mass[c] / g.cell_areas()[c] / max_density;
        int r = static_cast<int>(255.0 * v);
        int b = static_cast<int>(255.0 * (1.0 - v));
        int gr = static_cast<int>(80.0 * v);
        double x = (g.cell_centers()[c].x - h / 2.0 - lo.x + h / 2.0) * scale;
        double y = (hi.y - g.cell_centers()[c].y - h / 2.0 + h / 2.0) * scale;  // flip y
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "fill=\"rgb(%d,%d,%d)\"/>\n",
                      x, y, h * scale, h * scale, r, gr, b);
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace snapbm
