// Copyright 2026 The Offload Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OFFLOAD_RNG_H_
#define OFFLOAD_RNG_H_

#include <cstdint>
#include <random>

namespace offload {

// Every random quantity of a drop comes from its own substream so that
// changing one knob (say, adoption rate) leaves the other draws untouched.
enum class Stream : uint64_t {
  kOperatorSites = 1,
  kUserEquipment = 2,
  kAccessPoints = 3,
  kAdoption = 4,
  kBackhaulCaps = 5,
  kShadowing = 6,
};

// SplitMix64 finalizer over the pair; a cheap, well-mixed seed combiner.
uint64_t MixSeed(uint64_t a, uint64_t b);

std::mt19937_64 MakeStream(uint64_t seed, Stream stream);
std::mt19937_64 MakeStream(uint64_t seed, Stream stream, uint64_t index);

}  // namespace offload

#endif  // OFFLOAD_RNG_H_
