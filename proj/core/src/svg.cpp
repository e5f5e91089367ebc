#include "weaksde/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace weaksde {

namespace {

std::string fixed4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    // Normalize "-0.0000" so equal geometry gives equal bytes.
    if (std::string(buf) == "-0.0000") return "0.0000";
    return buf;
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;
    int size_px;
    double margin_px = 24.0;

    double map_x(double x) const {
        return margin_px + (x - x_lo) / (x_hi - x_lo) * (size_px - 2.0 * margin_px);
    }
    double map_y(double y) const {
        // SVG y axis points down.
        return size_px - margin_px - (y - y_lo) / (y_hi - y_lo) * (size_px - 2.0 * margin_px);
    }
};

Frame make_frame(double x_lo, double x_hi, double y_lo, double y_hi, int size_px) {
    const double dx = x_hi - x_lo;
    const double dy = y_hi - y_lo;
    const double pad_x = dx > 0.0 ? 0.05 * dx : 1.0;
    const double pad_y = dy > 0.0 ? 0.05 * dy : 1.0;
    return Frame{x_lo - pad_x, x_hi + pad_x, y_lo - pad_y, y_hi + pad_y, size_px};
}

void write_header(std::ostream& os, int size_px) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\""
       << size_px << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void write_polyline(std::ostream& os, const Frame& frame, std::span<const double> x,
                    std::span<const double> y, const char* stroke) {
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ' ';
        os << fixed4(frame.map_x(x[i])) << ',' << fixed4(frame.map_y(y[i]));
    }
    os << "\"/>\n";
}

}  // namespace

void emit_scatter(const PlanarPath& path, std::ostream& os, const ScatterOptions& options) {
    if (path.size() == 0) throw std::invalid_argument("emit_scatter: empty path");
    double lo = path.x1[0], hi = path.x1[0];
    for (double v : path.x1) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : path.x2) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (options.exit_radius > 0.0) {
        lo = std::min(lo, -options.exit_radius);
        hi = std::max(hi, options.exit_radius);
    }
    const Frame frame = make_frame(lo, hi, lo, hi, options.size_px);

    write_header(os, options.size_px);
    if (options.exit_radius > 0.0) {
        const double cx = frame.map_x(0.0);
        const double cy = frame.map_y(0.0);
        const double r = options.exit_radius / (frame.x_hi - frame.x_lo) *
                         (options.size_px - 2.0 * frame.margin_px);
        os << "<circle cx=\"" << fixed4(cx) << "\" cy=\"" << fixed4(cy) << "\" r=\"" << fixed4(r)
           << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    }
    write_polyline(os, frame, path.x1, path.x2, "#1f6feb");
    os << "</svg>\n";
}

void emit_scatter_file(const PlanarPath& path, const std::filesystem::path& out,
                       const ScatterOptions& options) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("emit_scatter_file: cannot open " + out.string());
    emit_scatter(path, os, options);
}

void emit_line(std::span<const double> x, std::span<const double> y, std::ostream& os,
               int size_px) {
    if (x.empty() || x.size() != y.size())
        throw std::invalid_argument("emit_line: need matching nonempty series");
    const auto [x_lo, x_hi] = std::minmax_element(x.begin(), x.end());
    const auto [y_lo, y_hi] = std::minmax_element(y.begin(), y.end());
    const Frame frame = make_frame(*x_lo, *x_hi, *y_lo, *y_hi, size_px);
    write_header(os, size_px);
    write_polyline(os, frame, x, y, "#d1242f");
    os << "</svg>\n";
}

void emit_line_file(std::span<const double> x, std::span<const double> y,
                    const std::filesystem::path& out, int size_px) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("emit_line_file: cannot open " + out.string());
    emit_line(x, y, os, size_px);
}

}  // namespace weaksde
