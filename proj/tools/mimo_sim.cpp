/*
 * Copyright 2026 The mimo-detect Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// mimo-sim: symbol-error-rate sweeps for MIMO detectors.
//
// Exit status: 0 on success, 1 for usage or configuration errors, 2 for
// runtime failures. Every failure prints exactly one line to stderr.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "mimo/config.hpp"
#include "mimo/sim.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);

  mimo::CliInvocation inv;
  try {
    inv = mimo::parse_invocation(args);
  } catch (const std::exception& e) {
    std::cerr << "mimo-sim: " << e.what() << '\n';
    return 1;
  }
  if (inv.help_requested) {
    std::cout << inv.help_text;
    return 0;
  }

  try {
    const mimo::SerCurve curve = mimo::estimate_ser(inv.config);
    mimo::write_results(curve, inv.output);
  } catch (const mimo::ConfigError& e) {
    std::cerr << "mimo-sim: " << e.what() << '\n';
    return 1;
  } catch (const mimo::GuardExceededError& e) {
    std::cerr << "mimo-sim: " << e.what() << " (drop 'ml' or raise --ml-guard)\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mimo-sim: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
