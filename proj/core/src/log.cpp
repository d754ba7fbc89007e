#include "wigner/log.hpp"

#include <cstdio>
#include <iostream>
#include <mutex>

namespace wigner {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink& sink() {
  static LogSink s;
  return s;
}

}  // namespace

void set_log_sink(LogSink s) {
  const std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void log_message(LogLevel level, const std::string& message) {
  const std::lock_guard lock(sink_mutex());
  if (sink()) {
    sink()(level, message);
  } else if (level == LogLevel::warn) {
    std::cerr << "warning: " << message << '\n';
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace wigner
