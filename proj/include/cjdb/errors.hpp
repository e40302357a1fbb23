#pragma once

#include <stdexcept>
#include <string>

namespace cjdb {

// Exit-code taxonomy shared by the CLI and the library:
//   1 usage, 2 data, 3 transport.

class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (bad JSON, invalid indices,
// violated feature invariants, constraint violations attributable to data).
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Connection/protocol failures talking to the database or I/O sinks.
class TransportError : public std::runtime_error {
public:
  explicit TransportError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cjdb
