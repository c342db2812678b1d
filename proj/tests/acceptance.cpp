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

#include "uavpdc/validation.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

// Usage: uavpdc_acceptance [id ...]   (no ids: all criteria)
int main(int argc, char **argv)
{
    std::vector<int> ids;
    for (int a = 1; a < argc; ++a)
        ids.push_back(std::atoi(argv[a]));
    if (ids.empty())
        for (int i = 1; i <= uavpdc::num_criteria; ++i)
            ids.push_back(i);

    uavpdc::ValidationOptions options;
    if (const char *w = std::getenv("UAVPDC_WORKERS"))
        options.workers = (unsigned)std::max(1, std::atoi(w));

    bool all = true;
    for (int id : ids)
    {
        try
        {
            const uavpdc::CriterionResult r = uavpdc::run_criterion(id, options);
            std::cout << uavpdc::format_result(r) << std::flush;
            all = all && r.passed();
        }
        catch (const std::exception &e)
        {
            std::cout << "FAIL [" << id << "] error: " << e.what() << std::endl;
            all = false;
        }
    }
    return all ? 0 : 1;
}
