// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <json.hpp>

#include "flowlab/editor.hpp"
#include "flowlab/gmm.hpp"
#include "flowlab/sampler.hpp"

namespace flowlab {

using Json = nlohmann::ordered_json;

Json to_json(const TimeGrid& grid);
TimeGrid time_grid_from_json(const Json& j);

Json to_json(const EditConfig& config);
EditConfig edit_config_from_json(const Json& j);

Json to_json(const EditResult& result);
EditResult edit_result_from_json(const Json& j);

Json to_json(const GenerationRun& run);
GenerationRun generation_run_from_json(const Json& j);

Json to_json(const GaussianMixtureModel& gm);
GaussianMixtureModel gmm_from_json(const Json& j);

Json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace flowlab
