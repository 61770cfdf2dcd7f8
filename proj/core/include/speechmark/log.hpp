#pragma once

#include <iosfwd>
#include <mutex>

#include <nlohmann/json.hpp>

namespace speechmark {

/// Thread-safe JSON-lines event sink. A default-constructed log discards.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(std::ostream& out) : out_(&out) {}

  void emit(nlohmann::json event);

 private:
  std::ostream* out_ = nullptr;
  std::mutex mutex_;
};

}  // namespace speechmark
