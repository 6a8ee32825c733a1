// Copyright 2026 The shormagic Authors
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

#include <iostream>

namespace shormagic::cli {

/// Entry point behind the `shormagic` binary. Returns 0 on success, 2 for
/// invalid arguments (with usage on `err`), 1 for runtime failures (with a
/// diagnostic naming the failing module).
int cli_main(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr);

}  // namespace shormagic::cli
