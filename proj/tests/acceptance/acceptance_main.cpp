/*
   Copyright 2026 The frobsplit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// One line per acceptance criterion; exit status 1 if any fails.

#include <cstring>
#include <iostream>

#include "frobsplit/acceptance.hpp"

int main(int argc, char** argv) {
    frobsplit::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
    int failed = 0;
    for (const auto& c : frobsplit::acceptance_criteria()) {
        const auto r = frobsplit::run_criterion(c, opts);
        std::cout << frobsplit::format_line(r) << std::endl;
        if (!r.passed) ++failed;
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
