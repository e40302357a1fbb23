#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace cjdb {

using json = nlohmann::json;
using Vertex = std::array<std::int64_t, 3>;

// Per-file quantization: real coordinate = vertex * scale + translate.
struct Transform {
  std::array<double, 3> scale{1.0, 1.0, 1.0};
  std::array<double, 3> translate{0.0, 0.0, 0.0};

  // Number of decimal digits implied by scale[axis]: the smallest p with
  // scale*10^p integral, capped at 15 (double-precision exactness limit).
  int precision(int axis) const;

  static Transform from_json(const json& j);
  json to_json() const;

  bool operator==(const Transform&) const = default;
};

enum class GeometryType {
  MultiPoint,
  MultiLineString,
  MultiSurface,
  CompositeSurface,
  Solid,
  MultiSolid,
  CompositeSolid,
  GeometryInstance,
};

GeometryType geometry_type_from_string(const std::string& s);
const char* to_string(GeometryType t);

// Array nesting levels of "boundaries" above a vertex reference.
// MultiPoint=1, MultiLineString=2, MultiSurface=3, Solid=4, MultiSolid=5.
int boundary_depth(GeometryType t);

struct Geometry {
  GeometryType type = GeometryType::MultiSurface;
  std::string lod;                        // empty for GeometryInstance
  json boundaries;                        // nested index arrays, or coordinate triples once dereferenced
  json semantics;                         // {"surfaces":[...],"values":[...]} or null; never modified
  std::optional<int> template_index;      // GeometryInstance only
  json extra = json(nullptr);             // unknown keys (e.g. transformationMatrix), passed through

  static Geometry from_json(const json& j);
  json to_json() const;
};

struct CityObject {
  std::string type;
  json attributes = json(nullptr);        // flat-or-nested object, never an array
  std::vector<Geometry> geometry;
  std::vector<std::string> children;
  std::vector<std::string> parents;
};

// One CityJSONFeature: a root object, its descendants, and its own vertices.
struct CityFeature {
  std::string id;
  std::vector<std::pair<std::string, CityObject>> objects;  // insertion order kept
  std::vector<Vertex> vertices;
  json appearance = json(nullptr);        // opaque pass-through

  const CityObject* find(const std::string& object_id) const;

  static CityFeature from_json(const json& j);
  json to_json() const;
};

struct DatasetMetadata {
  std::string version;                    // "1.1", "2.0", ...
  std::optional<int> srid;
  Transform transform;
  json geometry_templates = json(nullptr);
  json extensions = json(nullptr);
  std::optional<std::array<double, 6>> bbox;  // xmin,ymin,zmin,xmax,ymax,zmax
};

// Throws DataError when a structural invariant is violated: id must be a key
// in objects, every boundary index < vertices.size(), parents/children links
// mutually consistent, attributes not an array, semantics shaped like
// boundaries with one fewer level.
void validate_feature(const CityFeature& f);

// Replaces vertex indices by real-world coordinate triples
// (vertices[i]*scale + translate, each axis rounded to its precision).
// GeometryInstance dereferences only its single reference point and keeps the
// template index. Semantics are untouched.
Geometry dereference_geometry(const Geometry& g, const std::vector<Vertex>& vertices,
                              const Transform& t, const std::string& feature_id = "");

// Deduplicating vertex pool; assigns ascending indices in first-seen order.
class VertexPool {
public:
  int intern(const Vertex& v);
  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

private:
  struct Hash {
    std::size_t operator()(const Vertex& v) const;
  };
  std::unordered_map<Vertex, int, Hash> index_;
  std::vector<Vertex> vertices_;
};

// Inverse of dereference_geometry: each coordinate triple c becomes
// round((c - translate)/scale), rounding half away from zero, deduplicated
// through the pool. Throws DataError on non-finite coordinates.
Geometry requantize_geometry(const Geometry& g, const Transform& t, VertexPool& pool,
                             const std::string& feature_id = "");

// Rounds half away from zero; digits capped to [0,15].
double round_decimals(double v, int digits);
std::int64_t round_half_away(double v);

}  // namespace cjdb
