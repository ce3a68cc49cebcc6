// Copyright 2026 The ksforge Authors
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

#ifndef KSFORGE_RNG_H
#define KSFORGE_RNG_H

#include <cstdint>

namespace ksforge {

/// Counter-based pseudo-random stream.
///
/// Output k of stream (seed, stream_id) is splitmix64_finalize applied to a
/// 64-bit key mixed from the three inputs. Nothing depends on platform RNG
/// facilities, so a given (seed, stream_id) produces the same doubles on every
/// compiler and architecture. Streams with different ids are independent for
/// all practical purposes, which is what lets Monte Carlo sample i always use
/// stream i no matter how the index range is split across workers.
class CounterRng {
   public:
    CounterRng(uint64_t seed, uint64_t stream_id) : key_(mix(seed ^ mix(stream_id + 0x6a09e667f3bcc909ULL))) {
    }

    uint64_t next_u64() {
        return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Slight modulo bias is irrelevant for n << 2^64.
    uint64_t below(uint64_t n) {
        return next_u64() % n;
    }

    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace ksforge

#endif
