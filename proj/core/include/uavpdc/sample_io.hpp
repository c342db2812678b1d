// SPDX-License-Identifier: Apache-2.0
//
// uavpdc - pilot decontamination for massive MIMO networks with UAVs
// Copyright (C) 2026 The uavpdc Authors
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
// ------------------------------------------------------------------------

#pragma once

#include "uavpdc/simulation.hpp"

#include <istream>
#include <ostream>
#include <vector>

namespace uavpdc
{
    /// trial,user,kind,direction,scheme,sinr_db
    void write_samples_csv(std::ostream &out, const std::vector<SampleRecord> &samples);
    std::vector<SampleRecord> read_samples_csv(std::istream &in);

    /// trial,bs,kind,los_interferers,detected,false_alarms,misses,truncated,second_detected,matched,identified
    void write_diagnostics_csv(std::ostream &out, const std::vector<BsDiagnostics> &diagnostics);
    std::vector<BsDiagnostics> read_diagnostics_csv(std::istream &in);

} // namespace uavpdc
