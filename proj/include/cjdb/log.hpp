#pragma once

#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace cjdb::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3 };

Level threshold();
void set_threshold(Level lvl);

// One line per event on stderr: "LEVEL module: message".
// Data output goes to stdout, diagnostics never do.
void emit(Level lvl, const std::string& module, const std::string& message);

inline void debug(const std::string& module, const std::string& msg) { emit(Level::Debug, module, msg); }
inline void info(const std::string& module, const std::string& msg) { emit(Level::Info, module, msg); }
inline void warn(const std::string& module, const std::string& msg) { emit(Level::Warn, module, msg); }
inline void error(const std::string& module, const std::string& msg) { emit(Level::Error, module, msg); }

}  // namespace cjdb::log
