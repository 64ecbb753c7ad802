// SPDX-License-Identifier: Apache-2.0
//
// twopanel: cross-panel channel inference for two-panel base stations
// Copyright (C) 2026 The twopanel authors
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

#include "twopanel/harness/matching.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace twopanel::harness
{
    double MatchResult::pairing_fraction() const
    {
        const double paired = 2.0 * static_cast<double>(pairs.size());
        const double total = paired + static_cast<double>(unpaired.size());
        return total > 0.0 ? paired / total : 0.0;
    }

    namespace
    {
        struct Candidate
        {
            double distance;
            std::int64_t id1, id2;
            std::size_t i1, i2;
        };

        bool by_id(const MpcRow &a, const MpcRow &b) { return a.path_id < b.path_id; }
    }

    MatchResult match_shared_scatterers(const MpcDataset &ds, double epsilon)
    {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("match_shared_scatterers: epsilon must be > 0");

        MatchResult out;
        for (auto ue : ds.ue_ids())
        {
            auto p1 = ds.select(ue, 1);
            auto p2 = ds.select(ue, 2);
            std::sort(p1.begin(), p1.end(), by_id);
            std::sort(p2.begin(), p2.end(), by_id);

            std::vector<Candidate> cand;
            for (std::size_t i = 0; i < p1.size(); ++i)
                for (std::size_t j = 0; j < p2.size(); ++j)
                {
                    if (p1[i].is_los() != p2[j].is_los())
                        continue;
                    const double d = p1[i].is_los() ? 0.0 : distance(*p1[i].point, *p2[j].point);
                    if (d <= epsilon)
                        cand.push_back({d, p1[i].path_id, p2[j].path_id, i, j});
                }
            std::sort(cand.begin(), cand.end(), [](const Candidate &a, const Candidate &b) {
                return std::tie(a.distance, a.id1, a.id2) < std::tie(b.distance, b.id1, b.id2);
            });

            std::vector<int> used1(p1.size(), -1), used2(p2.size(), 0);
            std::vector<PathPair> ue_pairs(p1.size());
            for (const auto &c : cand)
            {
                if (used1[c.i1] >= 0 || used2[c.i2])
                    continue;
                used1[c.i1] = static_cast<int>(c.i2);
                used2[c.i2] = 1;
                ue_pairs[c.i1] = {ue, p1[c.i1], p2[c.i2], c.distance};
            }
            for (std::size_t i = 0; i < p1.size(); ++i)
            {
                if (used1[i] >= 0)
                    out.pairs.push_back(ue_pairs[i]);
                else
                    out.unpaired.push_back({ue, 1, p1[i].path_id});
            }
            for (std::size_t j = 0; j < p2.size(); ++j)
                if (!used2[j])
                    out.unpaired.push_back({ue, 2, p2[j].path_id});
        }
        return out;
    }
}
