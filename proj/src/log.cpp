#include "cjdb/log.hpp"

namespace cjdb::log {

namespace {
std::mutex g_mutex;
Level g_threshold = Level::Info;

const char* level_name(Level lvl) {
  switch (lvl) {
    case Level::Debug: return "DEBUG";
    case Level::Info: return "INFO";
    case Level::Warn: return "WARN";
    case Level::Error: return "ERROR";
  }
  return "?";
}
}  // namespace

Level threshold() { return g_threshold; }
void set_threshold(Level lvl) { g_threshold = lvl; }

void emit(Level lvl, const std::string& module, const std::string& message) {
  if (lvl < g_threshold) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::cerr << level_name(lvl) << " " << module << ": " << message << "\n";
}

}  // namespace cjdb::log
