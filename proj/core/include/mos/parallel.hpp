// SPDX-License-Identifier: Apache-2.0
//
// mos - model order selection for antenna array snapshots
// Copyright (C) 2026 The mos authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace mos {

// Worker thread control. All parallel loops in this library assign each
// output element to exactly one thread and keep reductions in a fixed
// order, so results are bitwise identical for every thread count.

/// Caps worker threads for all parallel regions. 0 restores the hardware
/// default.
void set_max_threads(int jobs);

/// Current worker thread cap (resolved, >= 1).
int max_threads();

}  // namespace mos
