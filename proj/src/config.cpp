#include "torbase/config.hpp"

#include <cstdlib>
#include <string>

#include "torbase/errors.hpp"

namespace torbase {

namespace {

template <typename T>
void read_env(const char* name, T& target) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    std::size_t pos = 0;
    long long v = std::stoll(raw, &pos);
    if (pos != std::string(raw).size() || v <= 0) throw std::invalid_argument(name);
    target = static_cast<T>(v);
  } catch (const std::exception&) {
    throw ValidationError(std::string("bad value for ") + name + ": '" + raw + "'");
  }
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  read_env("TORBASE_GRAVER_CAP", b.graver_cap);
  read_env("TORBASE_FAN_CAP", b.fan_cap);
  read_env("TORBASE_TUPLE_TIMEOUT_MS", b.tuple_timeout_ms);
  return b;
}

void Budget::check_deadline() const {
  if (deadline && std::chrono::steady_clock::now() > *deadline) throw ResourceLimitError("per-tuple time budget exceeded");
}

Budget Budget::with_tuple_deadline() const {
  Budget b = *this;
  b.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(tuple_timeout_ms);
  return b;
}

}  // namespace torbase
