#include "cjdb/footprint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "cjdb/errors.hpp"

namespace cjdb {

int compare_lod(const std::string& a, const std::string& b) {
  // Compare dot-separated components numerically when both are numeric,
  // lexicographically otherwise; a shorter prefix sorts first ("1" < "1.2").
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    const auto ea = a.find('.', ia);
    const auto eb = b.find('.', ib);
    const std::string ca = a.substr(ia, (ea == std::string::npos ? a.size() : ea) - ia);
    const std::string cb = b.substr(ib, (eb == std::string::npos ? b.size() : eb) - ib);
    const bool na = !ca.empty() && std::all_of(ca.begin(), ca.end(),
                                               [](unsigned char c) { return std::isdigit(c); });
    const bool nb = !cb.empty() && std::all_of(cb.begin(), cb.end(),
                                               [](unsigned char c) { return std::isdigit(c); });
    if (na && nb) {
      const long va = std::stol(ca), vb = std::stol(cb);
      if (va != vb) return va < vb ? -1 : 1;
    } else if (ca != cb) {
      return ca < cb ? -1 : 1;
    }
    ia = ea == std::string::npos ? a.size() : ea + 1;
    ib = eb == std::string::npos ? b.size() : eb + 1;
    if (ia >= a.size() && ib < b.size()) return -1;
    if (ib >= b.size() && ia < a.size()) return 1;
    if (ia >= a.size() && ib >= b.size()) return 0;
  }
  return 0;
}

const Geometry* select_lowest_lod(const std::vector<Geometry>& geoms) {
  const Geometry* best = nullptr;
  for (const Geometry& g : geoms) {
    if (g.type == GeometryType::GeometryInstance) continue;
    if (!best || compare_lod(g.lod, best->lod) < 0) best = &g;
  }
  return best;
}

std::array<double, 3> newell_normal(const json& ring) {
  double nx = 0, ny = 0, nz = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const json& p = ring.at(i);
    const json& q = ring.at((i + 1) % n);
    const double px = p.at(0).get<double>(), py = p.at(1).get<double>(), pz = p.at(2).get<double>();
    const double qx = q.at(0).get<double>(), qy = q.at(1).get<double>(), qz = q.at(2).get<double>();
    nx += (py - qy) * (pz + qz);
    ny += (pz - qz) * (px + qx);
    nz += (px - qx) * (py + qy);
  }
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (len == 0) return {0, 0, 0};
  return {nx / len, ny / len, nz / len};
}

namespace {

// Collects the surface list of a dereferenced geometry. Solids contribute all
// shells, multi/composite variants all members.
void collect_surfaces(const json& boundaries, int depth, std::vector<const json*>& out) {
  // depth counts array levels above a surface ([ring][pt][coord] = 0)
  if (depth == 0) {
    out.push_back(&boundaries);
    return;
  }
  for (const json& e : boundaries) collect_surfaces(e, depth - 1, out);
}

Ring project_ring(const json& ring) {
  Ring r;
  for (const json& p : ring) r.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return normalize_ring(r);
}

void extend_bbox(const json& node, int depth, double* xmin, double* ymin, double* xmax,
                 double* ymax) {
  if (depth == 0) {
    const double x = node.at(0).get<double>(), y = node.at(1).get<double>();
    *xmin = std::min(*xmin, x);
    *ymin = std::min(*ymin, y);
    *xmax = std::max(*xmax, x);
    *ymax = std::max(*ymax, y);
    return;
  }
  for (const json& e : node) extend_bbox(e, depth - 1, xmin, ymin, xmax, ymax);
}

Footprint bbox_fallback(const json& boundaries, int depth, const std::string& lod) {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  extend_bbox(boundaries, depth, &xmin, &ymin, &xmax, &ymax);
  Footprint fp;
  fp.fallback = true;
  fp.source_lod = lod;
  if (!(xmin <= xmax)) return fp;  // no vertices at all
  // degenerate extents become a 1 cm square so a 2D index entry always exists
  if (xmax - xmin < 1e-9) {
    const double cx = 0.5 * (xmin + xmax);
    xmin = cx - 0.005;
    xmax = cx + 0.005;
  }
  if (ymax - ymin < 1e-9) {
    const double cy = 0.5 * (ymin + ymax);
    ymin = cy - 0.005;
    ymax = cy + 0.005;
  }
  fp.polygons = {{{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}}, {}}};
  fp.area = multipolygon_area(fp.polygons);
  return fp;
}

}  // namespace

Footprint extract_footprint(const Geometry& g, const FootprintOptions& opt) {
  // For dereferenced geometry, coordinate triples sit boundary_depth(type)
  // array levels below the boundaries root; surfaces sit two levels above them.
  const int depth = boundary_depth(g.type);
  if (depth < 3)  // points/linestrings/instances carry no surfaces
    return bbox_fallback(g.boundaries, depth, g.lod);

  std::vector<const json*> surfaces;
  collect_surfaces(g.boundaries, depth - 2, surfaces);

  struct Candidate {
    const json* rings;
    double mean_z;
  };
  std::vector<Candidate> candidates;
  for (const json* s : surfaces) {
    if (!s->is_array() || s->empty()) continue;
    const json& outer = s->at(0);
    if (!outer.is_array() || outer.size() < 3) continue;
    const auto n = newell_normal(outer);
    if (n[0] == 0 && n[1] == 0 && n[2] == 0) continue;  // degenerate, zero area
    if (std::abs(n[2]) < opt.horiz_tol) continue;
    if (project_ring(outer).empty()) continue;  // collapses in XY
    double z = 0;
    for (const json& p : outer) z += p.at(2).get<double>();
    candidates.push_back({s, z / static_cast<double>(outer.size())});
  }

  if (candidates.empty()) return bbox_fallback(g.boundaries, depth, g.lod);

  double lowest = std::numeric_limits<double>::infinity();
  for (const Candidate& c : candidates) lowest = std::min(lowest, c.mean_z);

  std::vector<Polygon2> kept;
  for (const Candidate& c : candidates) {
    if (c.mean_z > lowest + opt.elev_tol) continue;
    Polygon2 p;
    p.outer = project_ring(c.rings->at(0));
    if (p.outer.empty()) continue;
    for (std::size_t r = 1; r < c.rings->size(); ++r) {
      Ring hole = project_ring(c.rings->at(r));
      if (!hole.empty()) p.holes.push_back(std::move(hole));
    }
    kept.push_back(std::move(p));
  }
  if (kept.empty()) return bbox_fallback(g.boundaries, depth, g.lod);

  Footprint fp;
  fp.polygons = union_polygons(kept);
  fp.area = multipolygon_area(fp.polygons);
  fp.source_lod = g.lod;
  fp.fallback = false;
  return fp;
}

std::optional<Footprint> footprint_for_object(const CityObject& obj,
                                              const FootprintOptions& opt) {
  if (obj.geometry.empty()) return std::nullopt;
  const Geometry* g = select_lowest_lod(obj.geometry);
  if (!g) {
    // only GeometryInstances: fall back to the bbox of their reference points
    Footprint fp = bbox_fallback(obj.geometry.front().boundaries, 2, "");
    for (std::size_t i = 1; i < obj.geometry.size(); ++i) {
      Footprint more = bbox_fallback(obj.geometry[i].boundaries, 2, "");
      for (auto& p : more.polygons) fp.polygons.push_back(std::move(p));
    }
    if (fp.polygons.size() > 1) {
      std::vector<Polygon2> parts(fp.polygons.begin(), fp.polygons.end());
      fp.polygons = union_polygons(parts);
    }
    fp.area = multipolygon_area(fp.polygons);
    return fp;
  }
  return extract_footprint(*g, opt);
}

}  // namespace cjdb
