#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cjdb/geom2d.hpp"
#include "cjdb/model.hpp"

namespace cjdb {

// 2D ground geometry of one city object, in model units.
struct Footprint {
  MultiPolygon2 polygons;
  double area = 0;
  std::string source_lod;
  bool fallback = false;  // true when the XY bounding rectangle stood in
};

struct FootprintOptions {
  double horiz_tol = 0.98;  // |n_z| of the unit normal, ~11.5 deg off horizontal
  double elev_tol = 0.1;    // model units around the lowest mean elevation
};

// Numeric-then-lexicographic LoD ordering: "0" < "1.2" < "1.3" < "1.10" < "2.2".
int compare_lod(const std::string& a, const std::string& b);

// Geometry with the smallest lod, ties broken by first occurrence;
// GeometryInstances (no lod) are not eligible. nullptr when none qualifies.
const Geometry* select_lowest_lod(const std::vector<Geometry>& geoms);

// Unit normal of a 3D ring by Newell's method; zero vector for degenerate rings.
std::array<double, 3> newell_normal(const json& ring);

// g must hold real coordinates. Keeps surfaces with |n_z| >= horiz_tol whose
// mean elevation is within elev_tol of the lowest such surface, projects them
// to XY and unions them. Falls back to the XY bounding rectangle (fallback
// flag set) when no horizontal surface exists; degenerate extents become a
// 0.01 x 0.01 square so there is always insertable geometry.
Footprint extract_footprint(const Geometry& g, const FootprintOptions& opt = {});

// select_lowest_lod then extract_footprint; records source_lod.
// nullopt when the object has no geometry at all (NULL downstream).
std::optional<Footprint> footprint_for_object(const CityObject& obj,
                                              const FootprintOptions& opt = {});

}  // namespace cjdb
