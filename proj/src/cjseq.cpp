#include "cjdb/cjseq.hpp"

#include <regex>

#include "cjdb/errors.hpp"
#include "cjdb/log.hpp"

namespace cjdb {

namespace {

std::optional<int> srid_from_reference_system(const std::string& rs) {
  // Accepted forms: OGC URL ".../EPSG/0/7415", URN "urn:ogc:def:crs:EPSG::7415",
  // plain "EPSG:7415".
  static const std::regex re("EPSG[:/](?:[0-9.]*[:/])?([0-9]+)$");
  std::smatch m;
  if (std::regex_search(rs, m, re)) return std::stoi(m[1]);
  return std::nullopt;
}

bool version_at_least_11(const std::string& v) {
  // "1.1", "1.1.3", "2.0" ...
  const auto dot = v.find('.');
  if (dot == std::string::npos) return false;
  try {
    const int major = std::stoi(v.substr(0, dot));
    auto rest = v.substr(dot + 1);
    const auto dot2 = rest.find('.');
    const int minor = std::stoi(dot2 == std::string::npos ? rest : rest.substr(0, dot2));
    return major > 1 || (major == 1 && minor >= 1);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

SequenceHeader SequenceHeader::parse(const std::string& line) {
  SequenceHeader h;
  try {
    h.raw = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("header line is not valid JSON: ") + e.what());
  }
  if (!h.raw.is_object() || h.raw.value("type", "") != "CityJSON")
    throw DataError("first line must be a CityJSON header object");
  h.meta.version = h.raw.value("version", "");
  if (!version_at_least_11(h.meta.version))
    throw DataError("unsupported CityJSON version '" + h.meta.version + "' (need >= 1.1)");
  if (!h.raw.contains("transform"))
    throw DataError("header lacks the mandatory transform");
  h.meta.transform = Transform::from_json(h.raw.at("transform"));
  if (h.raw.contains("metadata")) {
    const json& md = h.raw.at("metadata");
    if (md.contains("referenceSystem") && md.at("referenceSystem").is_string())
      h.meta.srid = srid_from_reference_system(md.at("referenceSystem").get<std::string>());
    if (md.contains("geographicalExtent") && md.at("geographicalExtent").is_array() &&
        md.at("geographicalExtent").size() == 6) {
      std::array<double, 6> bb{};
      for (int i = 0; i < 6; ++i) bb[i] = md.at("geographicalExtent").at(i).get<double>();
      for (int a = 0; a < 3; ++a)
        if (bb[a] > bb[a + 3]) throw DataError("header bbox has min > max");
      h.meta.bbox = bb;
    }
  }
  if (h.raw.contains("geometry-templates")) h.meta.geometry_templates = h.raw.at("geometry-templates");
  if (h.raw.contains("extensions")) h.meta.extensions = h.raw.at("extensions");
  return h;
}

SequenceHeader SequenceHeader::from_metadata(const DatasetMetadata& m) {
  SequenceHeader h;
  h.meta = m;
  json j = json::object();
  j["type"] = "CityJSON";
  j["version"] = m.version;
  j["transform"] = m.transform.to_json();
  json md = json::object();
  if (m.srid)
    md["referenceSystem"] = "https://www.opengis.net/def/crs/EPSG/0/" + std::to_string(*m.srid);
  if (m.bbox) md["geographicalExtent"] = *m.bbox;
  if (!md.empty()) j["metadata"] = md;
  if (!m.geometry_templates.is_null()) j["geometry-templates"] = m.geometry_templates;
  if (!m.extensions.is_null()) j["extensions"] = m.extensions;
  h.raw = std::move(j);
  return h;
}

SequenceReader::SequenceReader(std::istream& in, LinePolicy policy) : in_(in), policy_(policy) {
  std::string line;
  if (!std::getline(in_, line)) throw DataError("empty stream: missing CityJSON header line");
  line_no_ = 1;
  header_ = SequenceHeader::parse(line);
}

std::optional<CityFeature> SequenceReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      const std::string type = j.value("type", "");
      if (type != "CityJSONFeature") {
        if (!type.empty() || !j.contains("id") || !j.contains("CityObjects") ||
            !j.contains("vertices"))
          throw DataError("line is not a CityJSONFeature");
        // tooling in the wild sometimes drops the type key; tolerate it
        log::warn("cjseq", "line " + std::to_string(line_no_) +
                               " lacks \"type\":\"CityJSONFeature\", accepting anyway");
      }
      CityFeature f = CityFeature::from_json(j);
      validate_feature(f);
      ++features_read_;
      return f;
    } catch (const std::exception& e) {
      if (policy_ == LinePolicy::FailFast)
        throw DataError("line " + std::to_string(line_no_) + ": " + e.what());
      errors_.push_back({line_no_, e.what()});
      log::warn("cjseq", "skipping line " + std::to_string(line_no_) + ": " + e.what());
    }
  }
  return std::nullopt;
}

SequenceWriter::SequenceWriter(std::ostream& out, const SequenceHeader& header) : out_(out) {
  out_ << header.raw.dump() << "\n";
  if (!out_) throw TransportError("failed to write header line");
}

void SequenceWriter::write(const CityFeature& f) {
  out_ << f.to_json().dump() << "\n";
  if (!out_)
    throw TransportError("sink write failed after " + std::to_string(count_) + " features");
  ++count_;
}

}  // namespace cjdb
