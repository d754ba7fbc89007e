#pragma once

#include <functional>
#include <string>

namespace wigner {

enum class LogLevel { debug, info, warn };

using LogSink = std::function<void(LogLevel, const std::string&)>;

/// Replaces the process-wide sink; an empty function restores the default
/// (warnings to stderr, everything else dropped).
void set_log_sink(LogSink sink);
void log_message(LogLevel level, const std::string& message);

/// Six significant digits, for log and error messages.
std::string format_number(double v);

inline void log_debug(const std::string& m) { log_message(LogLevel::debug, m); }
inline void log_info(const std::string& m) { log_message(LogLevel::info, m); }
inline void log_warn(const std::string& m) { log_message(LogLevel::warn, m); }

}  // namespace wigner
