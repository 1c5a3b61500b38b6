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

#ifndef FROBSPLIT_REPORT_HPP
#define FROBSPLIT_REPORT_HPP

#include <json.hpp>

#include "frobsplit/derham.hpp"
#include "frobsplit/qrsp.hpp"
#include "frobsplit/splitting.hpp"

namespace frobsplit {

inline constexpr int kReportSchemaVersion = 1;

// JSON views of the library reports. Object keys are sorted by the json
// library, so equal inputs give byte-identical output.

nlohmann::json to_json(const EllipticPointCount& c);
nlohmann::json to_json(const QuadricReport& r);
nlohmann::json to_json(const SearchResult& r);
nlohmann::json to_json(const WitnessCheck& c);
nlohmann::json to_json(const SplittingCandidate& tau);
nlohmann::json to_json(const HeightReport& r);
nlohmann::json to_json(const TotalSplittingReport& r);
nlohmann::json to_json(const CompositeReport& r);
nlohmann::json to_json(const BaseChangeReport& r);
nlohmann::json to_json(const FilteredIsoReport& r);
nlohmann::json to_json(const SignIdentityReport& r, bool rows = false);

/// "V^1[x^3*y]" style label of a basis entry.
std::string basis_label(const BasisKey& k, const RingPtr& ring);

}  // namespace frobsplit

#endif
