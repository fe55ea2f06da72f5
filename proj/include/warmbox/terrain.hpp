#pragma once

// Gridded terrain: heights and rolling resistance sampled on a regular
// lattice, with bilinear height interpolation and central-difference slopes.
// Generators are fully deterministic for a given seed.

#include <cstdint>
#include <vector>

#include "warmbox/errors.hpp"
#include "warmbox/numeric.hpp"

namespace warmbox {

struct TerrainPatch {
  double x_min_m = 0.0, x_max_m = 0.0;
  double y_min_m = 0.0, y_max_m = 0.0;
  double rolling_resistance = 0.0;

  void validate() const;
};

struct TerrainProfile {
  double grid_spacing_m = 1.0;  // > 0
  std::size_t nx = 0, ny = 0;   // >= 2 each
  Vec2 origin_m;                // world position of node (0, 0)
  std::vector<double> height_m;            // nx * ny, row-major in x
  std::vector<double> rolling_resistance;  // same shape
  double gravity_mps2 = 9.81;   // > 0

  void validate() const;
  double height_at(Vec2 p) const;              // bilinear
  double rolling_resistance_at(Vec2 p) const;  // nearest node
  // d(height)/d(distance) along a unit direction, half-cell central difference.
  double slope_along(Vec2 p, Vec2 unit_dir) const;
  bool contains(Vec2 p, double margin_m) const;
};

struct PlaneTerrainParams {
  double grid_spacing_m = 1.0;
  double length_m = 100.0;
  double width_m = 20.0;
  double slope_rad = 0.0;  // constant grade along +x, |slope| < pi/3
  double rolling_resistance = 0.0;
  std::vector<TerrainPatch> patches;
  double gravity_mps2 = 9.81;
};

TerrainProfile make_plane_terrain(const PlaneTerrainParams& params);

struct RidgeTerrainParams {
  double grid_spacing_m = 1.0;
  double length_m = 100.0;
  double width_m = 20.0;
  double amplitude_m = 0.0;   // crest height; profile 0.5*A*(1 - cos(2*pi*x/wavelength))
  double wavelength_m = 1.0;  // > 0
  double roughness_amplitude_m = 0.0;   // seeded value noise, uniform in [-amp, amp]
  double roughness_wavelength_m = 1.0;  // noise lattice spacing, > 0
  double rolling_resistance = 0.0;
  std::vector<TerrainPatch> patches;
  double gravity_mps2 = 9.81;
};

// Sinusoidal ridges across x with zero slope at x = 0, plus optional seeded
// bilinear value noise. Same seed, same params -> identical grids.
TerrainProfile make_ridge_terrain(const RidgeTerrainParams& params, std::uint64_t seed);

}  // namespace warmbox
