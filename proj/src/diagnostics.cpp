#include "retroscat/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace retroscat {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& sink() {
  static WarningHandler h;
  return h;
}

}  // namespace

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  if (sink()) {
    sink()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  WarningHandler previous = std::move(sink());
  sink() = std::move(handler);
  return previous;
}

}  // namespace retroscat
