#include "cjdb/geom2d.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace bg = boost::geometry;

namespace cjdb {

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint>;  // clockwise outer, closed
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;

BgPolygon to_bg(const Polygon2& p) {
  BgPolygon out;
  for (const Point2& pt : p.outer) bg::append(out.outer(), BgPoint(pt.x, pt.y));
  out.inners().resize(p.holes.size());
  for (std::size_t h = 0; h < p.holes.size(); ++h)
    for (const Point2& pt : p.holes[h]) bg::append(out.inners()[h], BgPoint(pt.x, pt.y));
  bg::correct(out);
  return out;
}

Polygon2 from_bg(const BgPolygon& p) {
  Polygon2 out;
  for (const BgPoint& pt : p.outer()) out.outer.push_back({bg::get<0>(pt), bg::get<1>(pt)});
  out.outer = normalize_ring(out.outer);
  for (const auto& inner : p.inners()) {
    Ring hole;
    for (const BgPoint& pt : inner) hole.push_back({bg::get<0>(pt), bg::get<1>(pt)});
    hole = normalize_ring(hole);
    if (!hole.empty()) out.holes.push_back(std::move(hole));
  }
  return out;
}

}  // namespace

Ring normalize_ring(const Ring& r) {
  Ring out;
  for (const Point2& p : r) {
    if (!out.empty() && out.back() == p) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (out.size() < 3) return {};
  return out;
}

double ring_signed_area(const Ring& r) {
  double s = 0;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = r[i];
    const Point2& b = r[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double polygon_area(const Polygon2& p) {
  double a = std::abs(ring_signed_area(p.outer));
  for (const Ring& h : p.holes) a -= std::abs(ring_signed_area(h));
  return a;
}

double multipolygon_area(const MultiPolygon2& mp) {
  double a = 0;
  for (const Polygon2& p : mp) a += polygon_area(p);
  return a;
}

bool point_in_ring(const Point2& pt, const Ring& r) {
  bool in = false;
  const std::size_t n = r.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = r[i];
    const Point2& b = r[j];
    if ((a.y > pt.y) != (b.y > pt.y) &&
        pt.x < (b.x - a.x) * (pt.y - a.y) / (b.y - a.y) + a.x)
      in = !in;
  }
  return in;
}

bool point_in_polygon(const Point2& pt, const Polygon2& p) {
  if (!point_in_ring(pt, p.outer)) return false;
  for (const Ring& h : p.holes)
    if (point_in_ring(pt, h)) return false;
  return true;
}

bool point_in_multipolygon(const Point2& pt, const MultiPolygon2& mp) {
  for (const Polygon2& p : mp)
    if (point_in_polygon(pt, p)) return true;
  return false;
}

namespace {
int orient(const Point2& a, const Point2& b, const Point2& c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}
bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}
}  // namespace

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool rect_intersects_multipolygon(double xmin, double ymin, double xmax, double ymax,
                                  const MultiPolygon2& mp) {
  const Ring rect{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
  auto rect_contains = [&](const Point2& p) {
    return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
  };
  for (const Polygon2& poly : mp) {
    for (const Point2& p : poly.outer)
      if (rect_contains(p)) return true;
    for (const Point2& c : rect)
      if (point_in_polygon(c, poly)) return true;
    auto rings_cross = [&](const Ring& ring) {
      const std::size_t n = ring.size();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (segments_intersect(ring[i], ring[(i + 1) % n], rect[j], rect[(j + 1) % 4]))
            return true;
      return false;
    };
    if (rings_cross(poly.outer)) return true;
    for (const Ring& h : poly.holes)
      if (rings_cross(h)) return true;
  }
  return false;
}

MultiPolygon2 union_polygons(const std::vector<Polygon2>& parts) {
  BgMultiPolygon acc;
  for (const Polygon2& part : parts) {
    if (normalize_ring(part.outer).empty()) continue;
    BgMultiPolygon next;
    bg::union_(acc, to_bg(part), next);
    acc = std::move(next);
  }
  MultiPolygon2 out;
  for (const BgPolygon& p : acc) {
    Polygon2 q = from_bg(p);
    if (!q.outer.empty()) out.push_back(std::move(q));
  }
  return out;
}

std::string format_coord(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

namespace {

// Ensures a ring is wound counter-clockwise (sign > 0) or clockwise.
Ring wound(const Ring& r, bool ccw) {
  Ring out = r;
  const bool is_ccw = ring_signed_area(r) > 0;
  if (is_ccw != ccw) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::string to_native_polygon_text(const MultiPolygon2& mp) {
  // Chain all rings into one ring: anchor at the first outer's first point,
  // visit each further ring via a bridge edge and return to the anchor.
  // Even-odd queries and shoelace area stay exact (bridge edges cancel).
  std::vector<Point2> seq;
  bool first_ring = true;
  Point2 anchor{};
  auto add_ring = [&](const Ring& ring) {
    if (ring.empty()) return;
    if (first_ring) {
      anchor = ring.front();
      first_ring = false;
      for (const Point2& p : ring) seq.push_back(p);
      seq.push_back(anchor);  // close
    } else {
      for (const Point2& p : ring) seq.push_back(p);
      seq.push_back(ring.front());  // close this ring
      seq.push_back(anchor);        // bridge back
    }
  };
  for (const Polygon2& p : mp) {
    add_ring(wound(p.outer, true));
    for (const Ring& h : p.holes) add_ring(wound(h, false));
  }
  if (seq.empty()) return "";
  if (seq.size() > 1 && seq.back() == seq.front()) seq.pop_back();  // implicit closure
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) os << ",";
    os << "(" << format_coord(seq[i].x) << "," << format_coord(seq[i].y) << ")";
  }
  os << ")";
  return os.str();
}

std::string to_wkt_multipolygon(const MultiPolygon2& mp) {
  if (mp.empty()) return "MULTIPOLYGON EMPTY";
  std::ostringstream os;
  os << "MULTIPOLYGON(";
  for (std::size_t i = 0; i < mp.size(); ++i) {
    if (i) os << ",";
    os << "(";
    auto emit_ring = [&](const Ring& r) {
      os << "(";
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (k) os << ",";
        os << format_coord(r[k].x) << " " << format_coord(r[k].y);
      }
      // WKT rings repeat the first point
      os << "," << format_coord(r.front().x) << " " << format_coord(r.front().y) << ")";
    };
    emit_ring(mp[i].outer);
    for (const Ring& h : mp[i].holes) {
      os << ",";
      emit_ring(h);
    }
    os << ")";
  }
  os << ")";
  return os.str();
}

}  // namespace cjdb
