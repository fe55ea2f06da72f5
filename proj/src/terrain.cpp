#include "warmbox/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace warmbox {

namespace {

std::size_t grid_count(double extent_m, double spacing_m) {
  return static_cast<std::size_t>(std::floor(extent_m / spacing_m)) + 1;
}

void fill_rolling_resistance(TerrainProfile& t, double uniform,
                             const std::vector<TerrainPatch>& patches) {
  require_non_negative(uniform, "rolling_resistance");
  t.rolling_resistance.assign(t.nx * t.ny, uniform);
  for (const auto& patch : patches) {
    patch.validate();
    for (std::size_t iy = 0; iy < t.ny; ++iy) {
      for (std::size_t ix = 0; ix < t.nx; ++ix) {
        const double x = t.origin_m.x + static_cast<double>(ix) * t.grid_spacing_m;
        const double y = t.origin_m.y + static_cast<double>(iy) * t.grid_spacing_m;
        if (x >= patch.x_min_m && x <= patch.x_max_m && y >= patch.y_min_m && y <= patch.y_max_m)
          t.rolling_resistance[iy * t.nx + ix] = patch.rolling_resistance;
      }
    }
  }
}

// Deterministic value in [-1, 1] from the seed and lattice coordinates;
// splitmix64 keeps the stream independent of call order.
double lattice_noise(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
  std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(ix + 0x10000)) ^
                    (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(iy + 0x10000));
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

void TerrainPatch::validate() const {
  require_finite(x_min_m, "x_min_m");
  require_finite(x_max_m, "x_max_m");
  require_finite(y_min_m, "y_min_m");
  require_finite(y_max_m, "y_max_m");
  if (!(x_min_m <= x_max_m && y_min_m <= y_max_m))
    throw ValidationError("terrain patch bounds must be ordered");
  require_non_negative(rolling_resistance, "rolling_resistance");
}

void TerrainProfile::validate() const {
  require_positive(grid_spacing_m, "grid_spacing_m");
  if (nx < 2 || ny < 2) throw ValidationError("terrain grid needs nx >= 2 and ny >= 2");
  if (height_m.size() != nx * ny) throw ValidationError("height grid size mismatch");
  if (rolling_resistance.size() != nx * ny)
    throw ValidationError("rolling resistance grid size mismatch");
  require_positive(gravity_mps2, "gravity_mps2");
  for (double h : height_m) require_finite(h, "height_m");
}

double TerrainProfile::height_at(Vec2 p) const {
  const double fx = (p.x - origin_m.x) / grid_spacing_m;
  const double fy = (p.y - origin_m.y) / grid_spacing_m;
  if (fx < 0.0 || fy < 0.0 || fx > static_cast<double>(nx - 1) ||
      fy > static_cast<double>(ny - 1))
    throw ValidationError("terrain sample outside grid bounds");
  const std::size_t ix = std::min(static_cast<std::size_t>(fx), nx - 2);
  const std::size_t iy = std::min(static_cast<std::size_t>(fy), ny - 2);
  const double tx = fx - static_cast<double>(ix);
  const double ty = fy - static_cast<double>(iy);
  const double h00 = height_m[iy * nx + ix];
  const double h10 = height_m[iy * nx + ix + 1];
  const double h01 = height_m[(iy + 1) * nx + ix];
  const double h11 = height_m[(iy + 1) * nx + ix + 1];
  return (1.0 - tx) * (1.0 - ty) * h00 + tx * (1.0 - ty) * h10 + (1.0 - tx) * ty * h01 +
         tx * ty * h11;
}

double TerrainProfile::rolling_resistance_at(Vec2 p) const {
  const double fx = (p.x - origin_m.x) / grid_spacing_m;
  const double fy = (p.y - origin_m.y) / grid_spacing_m;
  if (fx < 0.0 || fy < 0.0 || fx > static_cast<double>(nx - 1) ||
      fy > static_cast<double>(ny - 1))
    throw ValidationError("terrain sample outside grid bounds");
  const std::size_t ix = std::min(static_cast<std::size_t>(std::lround(fx)), nx - 1);
  const std::size_t iy = std::min(static_cast<std::size_t>(std::lround(fy)), ny - 1);
  return rolling_resistance[iy * nx + ix];
}

double TerrainProfile::slope_along(Vec2 p, Vec2 unit_dir) const {
  const double h = 0.5 * grid_spacing_m;
  const Vec2 fwd = p + h * unit_dir;
  const Vec2 back = p - h * unit_dir;
  return (height_at(fwd) - height_at(back)) / (2.0 * h);
}

bool TerrainProfile::contains(Vec2 p, double margin_m) const {
  const double x_max = origin_m.x + static_cast<double>(nx - 1) * grid_spacing_m;
  const double y_max = origin_m.y + static_cast<double>(ny - 1) * grid_spacing_m;
  return p.x >= origin_m.x + margin_m && p.x <= x_max - margin_m &&
         p.y >= origin_m.y + margin_m && p.y <= y_max - margin_m;
}

TerrainProfile make_plane_terrain(const PlaneTerrainParams& params) {
  require_positive(params.grid_spacing_m, "grid_spacing_m");
  require_positive(params.length_m, "length_m");
  require_positive(params.width_m, "width_m");
  require_finite(params.slope_rad, "slope_rad");
  if (!(std::abs(params.slope_rad) < pi / 3.0))
    throw ValidationError("slope_rad must satisfy |slope| < pi/3");
  TerrainProfile t;
  t.grid_spacing_m = params.grid_spacing_m;
  t.nx = grid_count(params.length_m, params.grid_spacing_m);
  t.ny = grid_count(params.width_m, params.grid_spacing_m);
  t.origin_m = {0.0, -0.5 * params.width_m};
  t.gravity_mps2 = params.gravity_mps2;
  t.height_m.resize(t.nx * t.ny);
  const double grade = std::tan(params.slope_rad);
  for (std::size_t iy = 0; iy < t.ny; ++iy)
    for (std::size_t ix = 0; ix < t.nx; ++ix)
      t.height_m[iy * t.nx + ix] = grade * static_cast<double>(ix) * t.grid_spacing_m;
  fill_rolling_resistance(t, params.rolling_resistance, params.patches);
  t.validate();
  return t;
}

TerrainProfile make_ridge_terrain(const RidgeTerrainParams& params, std::uint64_t seed) {
  require_positive(params.grid_spacing_m, "grid_spacing_m");
  require_positive(params.length_m, "length_m");
  require_positive(params.width_m, "width_m");
  require_non_negative(params.amplitude_m, "amplitude_m");
  require_positive(params.wavelength_m, "wavelength_m");
  require_non_negative(params.roughness_amplitude_m, "roughness_amplitude_m");
  require_positive(params.roughness_wavelength_m, "roughness_wavelength_m");
  TerrainProfile t;
  t.grid_spacing_m = params.grid_spacing_m;
  t.nx = grid_count(params.length_m, params.grid_spacing_m);
  t.ny = grid_count(params.width_m, params.grid_spacing_m);
  t.origin_m = {0.0, -0.5 * params.width_m};
  t.gravity_mps2 = params.gravity_mps2;
  t.height_m.resize(t.nx * t.ny);
  const double k = two_pi / params.wavelength_m;
  for (std::size_t iy = 0; iy < t.ny; ++iy) {
    for (std::size_t ix = 0; ix < t.nx; ++ix) {
      const double x = static_cast<double>(ix) * t.grid_spacing_m;
      const double y = t.origin_m.y + static_cast<double>(iy) * t.grid_spacing_m;
      // Zero slope at x = 0 so routes can start and end on level ground.
      double h = 0.5 * params.amplitude_m * (1.0 - std::cos(k * x));
      if (params.roughness_amplitude_m > 0.0) {
        const double fx = x / params.roughness_wavelength_m;
        const double fy = y / params.roughness_wavelength_m;
        const auto lx = static_cast<std::int64_t>(std::floor(fx));
        const auto ly = static_cast<std::int64_t>(std::floor(fy));
        const double tx = fx - static_cast<double>(lx);
        const double ty = fy - static_cast<double>(ly);
        const double n00 = lattice_noise(seed, lx, ly);
        const double n10 = lattice_noise(seed, lx + 1, ly);
        const double n01 = lattice_noise(seed, lx, ly + 1);
        const double n11 = lattice_noise(seed, lx + 1, ly + 1);
        const double n = (1.0 - tx) * (1.0 - ty) * n00 + tx * (1.0 - ty) * n10 +
                         (1.0 - tx) * ty * n01 + tx * ty * n11;
        h += params.roughness_amplitude_m * n;
      }
      t.height_m[iy * t.nx + ix] = h;
    }
  }
  fill_rolling_resistance(t, params.rolling_resistance, params.patches);
  t.validate();
  return t;
}

}  // namespace warmbox
