// Copyright 2026 The R3D2 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef R3D2_UTIL_H_
#define R3D2_UTIL_H_

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>

namespace r3d2 {

// Invalid configuration (player count out of range, deck too small, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a module contract (acting on a terminal state, mismatched
// stream lengths, team size != player count, ...).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An action outside the legal set was submitted to the engine.
class IllegalMoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sampling requested before the burn-in threshold was reached.
class NotReadyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checkpoint import failure; the message names the offending array.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite value surfaced during network math.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sequence exceeded the padding target; never silently truncate.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define R3D2_CHECK(cond, msg)                                       \
  do {                                                              \
    if (!(cond)) {                                                  \
      throw std::logic_error(std::string("check failed at ") +     \
                             __FILE__ + ":" + std::to_string(__LINE__) + \
                             ": " + (msg));                         \
    }                                                               \
  } while (0)

// FNV-1a, used to fingerprint vocab files inside checkpoints.
inline uint64_t Fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Worker-thread cap: R3D2_THREADS env var, else hardware concurrency.
inline int WorkerThreads() {
  if (const char* env = std::getenv("R3D2_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace r3d2

#endif  // R3D2_UTIL_H_
