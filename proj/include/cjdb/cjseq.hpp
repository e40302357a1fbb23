#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cjdb/model.hpp"

namespace cjdb {

// First line of a CityJSONL stream: the CityJSON header object.
struct SequenceHeader {
  json raw;               // header document as read
  DatasetMetadata meta;   // parsed view

  static SequenceHeader parse(const std::string& line);
  static SequenceHeader from_metadata(const DatasetMetadata& m);
};

enum class LinePolicy {
  SkipAndLog,   // malformed feature lines are recorded and skipped (default)
  FailFast,     // first malformed line throws
};

struct LineError {
  std::size_t line_no = 0;  // 1-based, header is line 1
  std::string message;
};

// Pulls one feature line at a time; memory use is independent of file length.
class SequenceReader {
public:
  explicit SequenceReader(std::istream& in, LinePolicy policy = LinePolicy::SkipAndLog);

  const SequenceHeader& header() const { return header_; }
  // Next well-formed feature, or nullopt at end of stream.
  std::optional<CityFeature> next();

  const std::vector<LineError>& errors() const { return errors_; }
  std::size_t features_read() const { return features_read_; }
  std::size_t line_number() const { return line_no_; }

private:
  std::istream& in_;
  LinePolicy policy_;
  SequenceHeader header_;
  std::vector<LineError> errors_;
  std::size_t features_read_ = 0;
  std::size_t line_no_ = 0;
};

// Emits one compact JSON document per line, header first.
class SequenceWriter {
public:
  SequenceWriter(std::ostream& out, const SequenceHeader& header);
  void write(const CityFeature& f);
  std::size_t count() const { return count_; }

private:
  std::ostream& out_;
  std::size_t count_ = 0;
};

}  // namespace cjdb
