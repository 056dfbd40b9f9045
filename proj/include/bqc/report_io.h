// Copyright 2026 The bqcsim Authors
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

#ifndef BQC_REPORT_IO_H
#define BQC_REPORT_IO_H

#include <string>
#include <vector>

#include "bqc/harness.h"
#include "json.hpp"

namespace bqc {

nlohmann::json transcript_to_json(const RoundTranscript &t);
RoundTranscript transcript_from_json(const nlohmann::json &j);

/// One JSON object per line.
void write_transcripts(const std::string &path, const std::vector<RoundTranscript> &transcripts);
std::vector<RoundTranscript> read_transcripts(const std::string &path);

nlohmann::json report_to_json(const RunReport &report);
RunReport report_from_json(const nlohmann::json &j);

/// Plot table: section,protocol,basis,theory,simulated,stderr,rounds.
std::string report_to_csv(const RunReport &report);
std::string sweep_to_csv(SweepParameter parameter, const std::vector<SweepPoint> &points);

/// Throws std::runtime_error when the file cannot be written.
void write_text_file(const std::string &path, const std::string &content);

}  // namespace bqc

#endif
