#pragma once

#include <string>
#include <vector>

namespace cjdb {

struct Point2 {
  double x = 0, y = 0;
  bool operator==(const Point2&) const = default;
};

// Open representation: first point is not repeated at the end.
using Ring = std::vector<Point2>;

struct Polygon2 {
  Ring outer;
  std::vector<Ring> holes;
};

using MultiPolygon2 = std::vector<Polygon2>;

double ring_signed_area(const Ring& r);
double polygon_area(const Polygon2& p);           // outer minus holes
double multipolygon_area(const MultiPolygon2& mp);

// Even-odd (crossing number) tests; boundary behaviour unspecified.
bool point_in_ring(const Point2& pt, const Ring& r);
bool point_in_polygon(const Point2& pt, const Polygon2& p);
bool point_in_multipolygon(const Point2& pt, const MultiPolygon2& mp);

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);
bool rect_intersects_multipolygon(double xmin, double ymin, double xmax, double ymax,
                                  const MultiPolygon2& mp);

// Union of possibly-overlapping polygons (holes respected).
MultiPolygon2 union_polygons(const std::vector<Polygon2>& parts);

// Drops consecutive duplicate points and a repeated closing point; returns an
// empty ring when fewer than 3 distinct points remain.
Ring normalize_ring(const Ring& r);

// PostgreSQL built-in polygon literal. Rings are chained into one even-odd
// ring via zero-width bridge edges (holes wound opposite to outers so that
// area(path(...)) subtracts them).
std::string to_native_polygon_text(const MultiPolygon2& mp);

// PostGIS well-known text.
std::string to_wkt_multipolygon(const MultiPolygon2& mp);

std::string format_coord(double v);  // shortest round-trip decimal form

}  // namespace cjdb
