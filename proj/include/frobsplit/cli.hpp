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

#ifndef FROBSPLIT_CLI_HPP
#define FROBSPLIT_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>

namespace frobsplit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
/// Bound exhausted or a verification failed.
inline constexpr int kExitVerification = 2;

/// Runs one subcommand; `args` excludes the program name. The JSON report
/// goes to `out`, diagnostics to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace frobsplit

#endif
