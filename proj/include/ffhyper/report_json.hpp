#pragma once

#include <json.hpp>

#include "ffhyper/verifier.hpp"

namespace ffhyper {

nlohmann::json to_json(const Witness& w);
/// Durations are omitted when `with_duration` is false (used for the digest).
nlohmann::json to_json(const Report& r, bool with_duration = true);

}  // namespace ffhyper
