/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace geoderelict {

void GridSpec::validate() const
{
    if (nx < 1 || ny < 1 || nz < 1)
        throw std::invalid_argument("grid: cell counts must be >= 1");
    if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0))
        throw std::invalid_argument("grid: cell sizes must be > 0");
    if (!(top_depth >= 0.0))
        throw std::invalid_argument("grid: top depth must be >= 0");
}

double harmonic_mean(double a, double b)
{
    if (a <= 0.0 || b <= 0.0)
        return 0.0;
    return 2.0 * a * b / (a + b);
}

Grid::Grid(const GridSpec& spec, std::span<const double> permeability, GridBuildOptions options)
    : spec_(spec)
{
    spec_.validate();
    const std::size_t n = spec_.cell_count();
    if (permeability.size() != n)
        throw std::invalid_argument("grid: permeability has " + std::to_string(permeability.size())
                                    + " entries, expected " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) {
        const double k = permeability[c];
        const bool ok = options.allow_zero_permeability ? k >= 0.0 : k > 0.0;
        if (!ok)
            throw std::invalid_argument("grid: non-positive permeability in cell " + std::to_string(c));
    }

    depth_.resize(n);
    bulk_volume_.assign(n, spec_.dx * spec_.dy * spec_.dz);
    for (int k = 0; k < spec_.nz; ++k)
        for (int j = 0; j < spec_.ny; ++j)
            for (int i = 0; i < spec_.nx; ++i)
                depth_[index(i, j, k)] = spec_.top_depth + (k + 0.5) * spec_.dz;

    const double ax = spec_.dy * spec_.dz;
    const double ay = spec_.dx * spec_.dz;
    const double az = spec_.dx * spec_.dy;
    auto add_face = [&](std::size_t a, std::size_t b, Axis axis, double area, double d) {
        const double kh = harmonic_mean(permeability[a], permeability[b]);
        faces_.push_back(Face{a, b, axis, area, d, area * kh / d});
    };
    for (int k = 0; k < spec_.nz; ++k)
        for (int j = 0; j < spec_.ny; ++j)
            for (int i = 0; i < spec_.nx; ++i) {
                const std::size_t c = index(i, j, k);
                if (i + 1 < spec_.nx)
                    add_face(c, index(i + 1, j, k), Axis::x, ax, spec_.dx);
                if (j + 1 < spec_.ny)
                    add_face(c, index(i, j + 1, k), Axis::y, ay, spec_.dy);
                if (k + 1 < spec_.nz)
                    add_face(c, index(i, j, k + 1), Axis::z, az, spec_.dz);
            }

    std::vector<std::size_t> degree(n, 0);
    for (const Face& f : faces_) {
        ++degree[f.a];
        ++degree[f.b];
    }
    adjacency_offsets_.assign(n + 1, 0);
    for (std::size_t c = 0; c < n; ++c)
        adjacency_offsets_[c + 1] = adjacency_offsets_[c] + degree[c];
    adjacency_.resize(adjacency_offsets_[n]);
    std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
    for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
        const Face& f = faces_[fi];
        adjacency_[fill[f.a]++] = Neighbor{f.b, fi};
        adjacency_[fill[f.b]++] = Neighbor{f.a, fi};
    }
    for (std::size_t c = 0; c < n; ++c)
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[c]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[c + 1]),
                  [](const Neighbor& l, const Neighbor& r) { return l.cell < r.cell; });
}

std::size_t Grid::index(int i, int j, int k) const
{
    if (i < 0 || j < 0 || k < 0 || i >= spec_.nx || j >= spec_.ny || k >= spec_.nz)
        throw std::out_of_range("grid: cell (" + std::to_string(i) + "," + std::to_string(j) + ","
                                + std::to_string(k) + ") outside grid");
    return static_cast<std::size_t>(i)
           + static_cast<std::size_t>(spec_.nx)
                 * (static_cast<std::size_t>(j) + static_cast<std::size_t>(spec_.ny) * static_cast<std::size_t>(k));
}

std::array<int, 3> Grid::ijk(std::size_t cell) const
{
    if (cell >= size())
        throw std::out_of_range("grid: cell index " + std::to_string(cell) + " out of range");
    const auto nx = static_cast<std::size_t>(spec_.nx);
    const auto ny = static_cast<std::size_t>(spec_.ny);
    return {static_cast<int>(cell % nx), static_cast<int>((cell / nx) % ny), static_cast<int>(cell / (nx * ny))};
}

std::span<const Neighbor> Grid::neighbors(std::size_t cell) const
{
    if (cell >= size())
        throw std::out_of_range("grid: cell index " + std::to_string(cell) + " out of range");
    return std::span<const Neighbor>(adjacency_).subspan(adjacency_offsets_[cell],
                                                         adjacency_offsets_[cell + 1] - adjacency_offsets_[cell]);
}

std::vector<double> pore_volume(const Grid& grid, std::span<const double> porosity)
{
    if (porosity.size() != grid.size())
        throw std::invalid_argument("pore_volume: porosity size does not match grid");
    std::vector<double> pv(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        const double phi = porosity[c];
        if (!(phi > 0.0 && phi < 1.0))
            throw std::invalid_argument("pore_volume: porosity outside (0,1) in cell " + std::to_string(c));
        pv[c] = phi * grid.bulk_volume(c);
    }
    return pv;
}

} // namespace geoderelict
