#include "cjdb/model.hpp"

#include <cmath>
#include <set>

#include "cjdb/errors.hpp"

namespace cjdb {

std::int64_t round_half_away(double v) {
  return static_cast<std::int64_t>(std::llround(v));  // llround ties away from zero
}

double round_decimals(double v, int digits) {
  if (digits < 0) digits = 0;
  if (digits > 15) digits = 15;
  const double p10 = std::pow(10.0, digits);
  const double scaled = v * p10;
  // Past 2^53 the double grid is coarser than the requested decimals; the
  // value is already as precise as it can get.
  if (std::abs(scaled) >= 9.007199254740992e15) return v;
  return std::llround(scaled) / p10;
}

int Transform::precision(int axis) const {
  const double s = scale.at(static_cast<std::size_t>(axis));
  for (int p = 0; p <= 15; ++p) {
    const double v = s * std::pow(10.0, p);
    if (std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v))) return p;
  }
  return 15;
}

Transform Transform::from_json(const json& j) {
  Transform t;
  if (!j.is_object() || !j.contains("scale") || !j.contains("translate"))
    throw DataError("transform must carry scale and translate");
  for (int a = 0; a < 3; ++a) {
    t.scale[a] = j.at("scale").at(a).get<double>();
    t.translate[a] = j.at("translate").at(a).get<double>();
    if (!(t.scale[a] > 0.0)) throw DataError("transform scale components must be > 0");
  }
  return t;
}

json Transform::to_json() const {
  return json{{"scale", scale}, {"translate", translate}};
}

GeometryType geometry_type_from_string(const std::string& s) {
  if (s == "MultiPoint") return GeometryType::MultiPoint;
  if (s == "MultiLineString") return GeometryType::MultiLineString;
  if (s == "MultiSurface") return GeometryType::MultiSurface;
  if (s == "CompositeSurface") return GeometryType::CompositeSurface;
  if (s == "Solid") return GeometryType::Solid;
  if (s == "MultiSolid") return GeometryType::MultiSolid;
  if (s == "CompositeSolid") return GeometryType::CompositeSolid;
  if (s == "GeometryInstance") return GeometryType::GeometryInstance;
  throw DataError("unknown geometry type: " + s);
}

const char* to_string(GeometryType t) {
  switch (t) {
    case GeometryType::MultiPoint: return "MultiPoint";
    case GeometryType::MultiLineString: return "MultiLineString";
    case GeometryType::MultiSurface: return "MultiSurface";
    case GeometryType::CompositeSurface: return "CompositeSurface";
    case GeometryType::Solid: return "Solid";
    case GeometryType::MultiSolid: return "MultiSolid";
    case GeometryType::CompositeSolid: return "CompositeSolid";
    case GeometryType::GeometryInstance: return "GeometryInstance";
  }
  return "?";
}

int boundary_depth(GeometryType t) {
  switch (t) {
    case GeometryType::MultiPoint: return 1;
    case GeometryType::MultiLineString: return 2;
    case GeometryType::GeometryInstance: return 2;
    case GeometryType::MultiSurface:
    case GeometryType::CompositeSurface: return 3;
    case GeometryType::Solid: return 4;
    case GeometryType::MultiSolid:
    case GeometryType::CompositeSolid: return 5;
  }
  return 3;
}

Geometry Geometry::from_json(const json& j) {
  Geometry g;
  g.type = geometry_type_from_string(j.at("type").get<std::string>());
  if (j.contains("lod")) {
    // lod may be numeric in older files; normalize to its textual form
    const json& l = j.at("lod");
    g.lod = l.is_string() ? l.get<std::string>() : l.dump();
  }
  g.boundaries = j.at("boundaries");
  if (j.contains("semantics")) g.semantics = j.at("semantics");
  if (j.contains("template")) g.template_index = j.at("template").get<int>();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "type" || it.key() == "lod" || it.key() == "boundaries" ||
        it.key() == "semantics" || it.key() == "template")
      continue;
    if (g.extra.is_null()) g.extra = json::object();
    g.extra[it.key()] = it.value();
  }
  return g;
}

json Geometry::to_json() const {
  json j = json::object();
  j["type"] = to_string(type);
  if (!lod.empty()) j["lod"] = lod;
  j["boundaries"] = boundaries;
  if (!semantics.is_null()) j["semantics"] = semantics;
  if (template_index) j["template"] = *template_index;
  if (extra.is_object())
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

const CityObject* CityFeature::find(const std::string& object_id) const {
  for (const auto& [oid, obj] : objects)
    if (oid == object_id) return &obj;
  return nullptr;
}

CityFeature CityFeature::from_json(const json& j) {
  CityFeature f;
  f.id = j.at("id").get<std::string>();
  if (f.id.find('\0') != std::string::npos) throw DataError("feature id contains NUL");
  const json& objs = j.at("CityObjects");
  if (!objs.is_object()) throw DataError("CityObjects must be an object");
  for (auto it = objs.begin(); it != objs.end(); ++it) {
    CityObject o;
    const json& jo = it.value();
    o.type = jo.at("type").get<std::string>();
    if (jo.contains("attributes")) o.attributes = jo.at("attributes");
    if (jo.contains("geometry"))
      for (const json& jg : jo.at("geometry")) o.geometry.push_back(Geometry::from_json(jg));
    if (jo.contains("children"))
      for (const json& c : jo.at("children")) o.children.push_back(c.get<std::string>());
    if (jo.contains("parents"))
      for (const json& p : jo.at("parents")) o.parents.push_back(p.get<std::string>());
    f.objects.emplace_back(it.key(), std::move(o));
  }
  if (j.contains("vertices"))
    for (const json& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 3) throw DataError("vertex must be a 3-array");
      f.vertices.push_back({v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>(),
                            v.at(2).get<std::int64_t>()});
    }
  if (j.contains("appearance")) f.appearance = j.at("appearance");
  return f;
}

json CityFeature::to_json() const {
  json j = json::object();
  j["type"] = "CityJSONFeature";
  j["id"] = id;
  json objs = json::object();
  for (const auto& [oid, o] : objects) {
    json jo = json::object();
    jo["type"] = o.type;
    if (!o.attributes.is_null()) jo["attributes"] = o.attributes;
    if (!o.geometry.empty()) {
      json arr = json::array();
      for (const Geometry& g : o.geometry) arr.push_back(g.to_json());
      jo["geometry"] = arr;
    }
    if (!o.children.empty()) jo["children"] = o.children;
    if (!o.parents.empty()) jo["parents"] = o.parents;
    objs[oid] = std::move(jo);
  }
  j["CityObjects"] = std::move(objs);
  json verts = json::array();
  for (const Vertex& v : vertices) verts.push_back(json::array({v[0], v[1], v[2]}));
  j["vertices"] = std::move(verts);
  if (!appearance.is_null()) j["appearance"] = appearance;
  return j;
}

namespace {

void check_indices(const json& b, std::size_t n_vertices, int depth, const std::string& fid) {
  if (depth == 0) {
    if (!b.is_number_integer())
      throw DataError("feature " + fid + ": boundaries leaf is not an integer index");
    const auto i = b.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= n_vertices)
      throw DataError("feature " + fid + ": vertex index " + std::to_string(i) +
                      " out of range (have " + std::to_string(n_vertices) + " vertices)");
    return;
  }
  if (!b.is_array()) throw DataError("feature " + fid + ": boundaries nesting too shallow");
  for (const json& e : b) check_indices(e, n_vertices, depth - 1, fid);
}

// semantics.values mirrors boundaries with one fewer nesting level; every
// leaf is null or an index into semantics.surfaces
void check_semantics_values(const json& values, int depth, std::size_t n_surfaces,
                            const std::string& fid) {
  if (depth == 0) {
    if (values.is_null()) return;
    if (!values.is_number_integer())
      throw DataError("feature " + fid + ": semantics value is neither null nor an index");
    const auto i = values.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= n_surfaces)
      throw DataError("feature " + fid + ": semantics value " + std::to_string(i) +
                      " not a valid surface index");
    return;
  }
  if (!values.is_array())
    throw DataError("feature " + fid + ": semantics values nesting does not mirror boundaries");
  for (const json& e : values) check_semantics_values(e, depth - 1, n_surfaces, fid);
}

}  // namespace

void validate_feature(const CityFeature& f) {
  if (!f.find(f.id)) throw DataError("feature " + f.id + ": id is not a key in CityObjects");
  std::set<std::string> ids;
  for (const auto& [oid, obj] : f.objects) ids.insert(oid);

  for (const auto& [oid, obj] : f.objects) {
    if (obj.attributes.is_array())
      throw DataError("feature " + f.id + ": attributes of " + oid + " is an array");
    for (const std::string& c : obj.children) {
      if (!ids.count(c))
        throw DataError("feature " + f.id + ": child " + c + " of " + oid + " missing");
      const CityObject* child = f.find(c);
      bool back = false;
      for (const std::string& p : child->parents) back |= (p == oid);
      if (!back)
        throw DataError("feature " + f.id + ": child " + c + " does not list parent " + oid);
    }
    for (const std::string& p : obj.parents) {
      if (!ids.count(p))
        throw DataError("feature " + f.id + ": parent " + p + " of " + oid + " missing");
      const CityObject* parent = f.find(p);
      bool fwd = false;
      for (const std::string& c : parent->children) fwd |= (c == oid);
      if (!fwd)
        throw DataError("feature " + f.id + ": parent " + p + " does not list child " + oid);
    }
    for (const Geometry& g : obj.geometry) {
      const int depth =
          g.type == GeometryType::GeometryInstance ? 2 : boundary_depth(g.type);
      check_indices(g.boundaries, f.vertices.size(), depth, f.id);
      if (g.semantics.is_object() && g.semantics.contains("values") &&
          g.semantics.contains("surfaces")) {
        // values has one fewer level: its leaves sit at ring-list depth
        check_semantics_values(g.semantics.at("values"), depth - 2,
                               g.semantics.at("surfaces").size(), f.id);
      }
    }
  }
}

namespace {

json dereference_node(const json& b, const std::vector<Vertex>& vertices, const Transform& t,
                      int depth, const std::string& fid, const std::array<int, 3>& prec) {
  if (depth == 0) {
    if (!b.is_number_integer())
      throw DataError("feature " + fid + ": boundaries leaf is not an integer index");
    const auto i = b.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= vertices.size())
      throw DataError("feature " + fid + ": vertex index " + std::to_string(i) +
                      " out of range");
    const Vertex& v = vertices[static_cast<std::size_t>(i)];
    json c = json::array();
    for (int a = 0; a < 3; ++a)
      c.push_back(round_decimals(static_cast<double>(v[a]) * t.scale[a] + t.translate[a],
                                 prec[a]));
    return c;
  }
  if (!b.is_array()) throw DataError("feature " + fid + ": boundaries nesting too shallow");
  json out = json::array();
  for (const json& e : b) out.push_back(dereference_node(e, vertices, t, depth - 1, fid, prec));
  return out;
}

json requantize_node(const json& b, const Transform& t, VertexPool& pool, int depth,
                     const std::string& fid) {
  if (depth == 0) {
    if (!b.is_array() || b.size() != 3)
      throw DataError("feature " + fid + ": expected a coordinate triple");
    Vertex v{};
    for (int a = 0; a < 3; ++a) {
      const double c = b.at(a).get<double>();
      if (!std::isfinite(c))
        throw DataError("feature " + fid + ": non-finite coordinate");
      v[a] = round_half_away((c - t.translate[a]) / t.scale[a]);
    }
    return pool.intern(v);
  }
  if (!b.is_array()) throw DataError("feature " + fid + ": boundaries nesting too shallow");
  json out = json::array();
  for (const json& e : b) out.push_back(requantize_node(e, t, pool, depth - 1, fid));
  return out;
}

}  // namespace

Geometry dereference_geometry(const Geometry& g, const std::vector<Vertex>& vertices,
                              const Transform& t, const std::string& feature_id) {
  Geometry out = g;
  const int depth = g.type == GeometryType::GeometryInstance ? 2 : boundary_depth(g.type);
  std::array<int, 3> prec{t.precision(0), t.precision(1), t.precision(2)};
  out.boundaries = dereference_node(g.boundaries, vertices, t, depth, feature_id, prec);
  return out;
}

std::size_t VertexPool::Hash::operator()(const Vertex& v) const {
  std::size_t h = 1469598103934665603ull;
  for (std::int64_t c : v) {
    h ^= static_cast<std::size_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

int VertexPool::intern(const Vertex& v) {
  auto [it, inserted] = index_.try_emplace(v, static_cast<int>(vertices_.size()));
  if (inserted) vertices_.push_back(v);
  return it->second;
}

Geometry requantize_geometry(const Geometry& g, const Transform& t, VertexPool& pool,
                             const std::string& feature_id) {
  Geometry out = g;
  const int depth = g.type == GeometryType::GeometryInstance ? 2 : boundary_depth(g.type);
  out.boundaries = requantize_node(g.boundaries, t, pool, depth, feature_id);
  return out;
}

}  // namespace cjdb
