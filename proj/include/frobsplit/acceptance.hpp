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

#ifndef FROBSPLIT_ACCEPTANCE_HPP
#define FROBSPLIT_ACCEPTANCE_HPP

#include <json.hpp>
#include <optional>
#include <span>
#include <string>

#include "frobsplit/sampling.hpp"

namespace frobsplit {

struct AcceptanceOptions {
    /// Fewer random samples; same cases otherwise.
    bool quick = false;
    std::uint64_t seed = kDefaultSeed;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string summary;
    double seconds = 0;
    std::optional<double> time_limit;
    nlohmann::json details;
};

struct CriterionEntry {
    int id;
    const char* name;
    std::optional<double> time_limit;
    /// Fills passed, summary and details.
    void (*run)(const AcceptanceOptions&, CriterionResult&);
};

std::span<const CriterionEntry> acceptance_criteria();

/// Runs one criterion, timing it; exceptions become a failed result and a
/// run over the time limit fails.
CriterionResult run_criterion(const CriterionEntry& c, const AcceptanceOptions& opts);

/// "PASS  3 hasse-fedder: ..." with the runtime appended.
std::string format_line(const CriterionResult& r);

nlohmann::json to_json(const CriterionResult& r, bool timing);

}  // namespace frobsplit

#endif
