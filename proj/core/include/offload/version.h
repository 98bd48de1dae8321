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

#ifndef OFFLOAD_VERSION_H_
#define OFFLOAD_VERSION_H_

namespace offload {

// "<major>.<minor>.<patch>-g<describe>" when built from a git checkout.
const char* VersionString();

}  // namespace offload

#endif  // OFFLOAD_VERSION_H_
