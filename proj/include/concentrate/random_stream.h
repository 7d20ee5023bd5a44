// Copyright 2026 The Concentrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace concentrate {

/// Counter-based uniform stream. Value i of stream (seed, index) is a fixed
/// hash of (seed, index, i), so any trial can be replayed or run on any thread
/// without coordinating with the others.
class RandomStream {
   public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    std::uint64_t draws() const noexcept {
        return counter_;
    }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

class StreamFactory {
   public:
    explicit StreamFactory(std::uint64_t seed) : seed_(seed) {
    }
    RandomStream stream(std::uint64_t index) const {
        return RandomStream(seed_, index);
    }
    std::uint64_t seed() const noexcept {
        return seed_;
    }

   private:
    std::uint64_t seed_;
};

}  // namespace concentrate
