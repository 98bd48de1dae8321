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

#include "offload/rng.h"

namespace offload {

uint64_t MixSeed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 MakeStream(uint64_t seed, Stream stream) {
  return std::mt19937_64(MixSeed(seed, static_cast<uint64_t>(stream)));
}

std::mt19937_64 MakeStream(uint64_t seed, Stream stream, uint64_t index) {
  return std::mt19937_64(
      MixSeed(MixSeed(seed, static_cast<uint64_t>(stream)), index));
}

}  // namespace offload
