#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drivesim/scenario.hpp"

// Flat key-value config format:
//
//   # comment to end of line
//   controller = dtc
//   motor.R_s = 7.2
//   load_profile = 0:0, 1.5:10        # time:torque entries, seconds and N*m
//
// One key per line, `key = value`, dotted prefixes group related keys, UTF-8,
// blank lines ignored. Unknown keys and duplicate keys are errors — silence
// on a typo is how a wrong parameter survives into results. Keys left out
// take documented defaults; the loader reports which ones did.

namespace drivesim {

using KeyValueList = std::vector<std::pair<std::string, std::string>>;

KeyValueList parse_key_values(const std::string& text);

// Builds a ScenarioConfig from parsed keys. `defaulted` (optional) receives
// the names of keys that fell back to defaults. Throws ConfigError on
// unknown keys, duplicates, unparsable values, or failed validation.
ScenarioConfig scenario_from_key_values(const KeyValueList& kv,
                                        std::vector<std::string>* defaulted);

// Reads and parses a config file. Throws IoError if the file cannot be read.
ScenarioConfig load_scenario_config(const std::string& path,
                                    std::vector<std::string>* defaulted);

// Serializes every effective value in the same grammar the parser accepts,
// so a run can be reproduced from its own echo. Doubles are printed with
// enough digits to round-trip exactly.
std::string scenario_to_config_text(const ScenarioConfig& config);

}  // namespace drivesim
