#pragma once

#include <atomic>
#include <iostream>
#include <sstream>

namespace gchan::log {

enum class Level { Quiet = 0, Info = 1, Debug = 2 };

inline std::atomic<int>& level_storage() {
  static std::atomic<int> level{static_cast<int>(Level::Quiet)};
  return level;
}

inline void set_level(Level l) { level_storage().store(static_cast<int>(l)); }
inline bool enabled(Level l) { return level_storage().load() >= static_cast<int>(l); }

// Diagnostics go to std::clog so reports on stdout stay clean.
template <typename... Args>
void write(Level l, const Args&... args) {
  if (!enabled(l)) return;
  std::ostringstream os;
  (os << ... << args);
  os << '\n';
  std::clog << os.str();
}

template <typename... Args>
void info(const Args&... args) { write(Level::Info, "[gchan] ", args...); }

template <typename... Args>
void debug(const Args&... args) { write(Level::Debug, "[gchan:debug] ", args...); }

}  // namespace gchan::log
