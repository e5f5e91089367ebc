#include "weaksde/path.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace weaksde {

Path::Path(TimeGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size())
        throw std::invalid_argument("Path: values length must match grid length");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Path& path) {
    os << "t,v1\n";
    for (std::size_t i = 0; i < path.size(); ++i)
        os << format_double(path.grid()[i]) << ',' << format_double(path[i]) << '\n';
}

void write_csv(std::ostream& os, const PlanarPath& path) {
    os << "t,v1,v2\n";
    for (std::size_t i = 0; i < path.size(); ++i)
        os << format_double(path.grid[i]) << ',' << format_double(path.x1[i]) << ','
           << format_double(path.x2[i]) << '\n';
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

PlanarPath read_planar_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("read_planar_csv: empty input");
    const auto header = split_csv_line(line);
    std::size_t col_t = header.size(), col_x1 = header.size(), col_x2 = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t") col_t = i;
        if (header[i] == "v1" || header[i] == "x1") col_x1 = i;
        if (header[i] == "v2" || header[i] == "x2") col_x2 = i;
    }
    if (col_t >= header.size() || col_x1 >= header.size() || col_x2 >= header.size())
        throw std::invalid_argument("read_planar_csv: need columns t and v1,v2 (or x1,x2)");

    std::vector<double> t, x1, x2;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() <= std::max({col_t, col_x1, col_x2}))
            throw std::invalid_argument("read_planar_csv: short row");
        t.push_back(std::stod(cells[col_t]));
        x1.push_back(std::stod(cells[col_x1]));
        x2.push_back(std::stod(cells[col_x2]));
    }
    if (t.size() < 2) throw std::invalid_argument("read_planar_csv: need at least 2 rows");
    return PlanarPath{TimeGrid::from_times(std::move(t)), std::move(x1), std::move(x2)};
}

}  // namespace weaksde
