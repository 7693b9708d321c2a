/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace geoderelict {

/// Uniform Cartesian block: cell counts, cell sizes (m) and the depth of the
/// top face (m). Cells are indexed i + nx*(j + ny*k), k = 0 at the top.
struct GridSpec {
    int nx = 1;
    int ny = 1;
    int nz = 1;
    double dx = 1.0;
    double dy = 1.0;
    double dz = 1.0;
    double top_depth = 0.0;

    void validate() const;
    std::size_t cell_count() const
    {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
    }

    bool operator==(const GridSpec&) const = default;
};

enum class Axis { x, y, z };

/// Interior face between cells a < b. `trans` is the geometric
/// transmissibility A*k_harm/d in m^3.
struct Face {
    std::size_t a = 0;
    std::size_t b = 0;
    Axis axis = Axis::x;
    double area = 0.0;
    double distance = 0.0;
    double trans = 0.0;
};

struct Neighbor {
    std::size_t cell = 0;
    std::size_t face = 0;
};

struct GridBuildOptions {
    // Lets tests build faces across impermeable cells.
    bool allow_zero_permeability = false;
};

class Grid {
public:
    Grid(const GridSpec& spec, std::span<const double> permeability, GridBuildOptions options = {});

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return depth_.size(); }

    std::size_t index(int i, int j, int k) const;
    std::array<int, 3> ijk(std::size_t cell) const;

    double depth(std::size_t cell) const { return depth_[cell]; }
    double bulk_volume(std::size_t cell) const { return bulk_volume_[cell]; }
    std::span<const double> depths() const { return depth_; }
    std::span<const double> bulk_volumes() const { return bulk_volume_; }

    const std::vector<Face>& faces() const { return faces_; }

    /// 7-point stencil neighbours in ascending cell order; throws
    /// std::out_of_range for a bad index.
    std::span<const Neighbor> neighbors(std::size_t cell) const;

private:
    GridSpec spec_;
    std::vector<double> depth_;
    std::vector<double> bulk_volume_;
    std::vector<Face> faces_;
    std::vector<std::size_t> adjacency_offsets_;
    std::vector<Neighbor> adjacency_;
};

double harmonic_mean(double a, double b);

/// phi * bulk volume per cell; every porosity must lie in (0, 1).
std::vector<double> pore_volume(const Grid& grid, std::span<const double> porosity);

} // namespace geoderelict
