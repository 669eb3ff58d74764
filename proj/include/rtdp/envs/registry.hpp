#pragma once

#include <memory>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rtdp/env.hpp"

namespace rtdp {

// Environments selectable by CLI name: cartpole | mountaincar | racegrid.
// Throws std::invalid_argument for unknown names or unknown override keys.
std::unique_ptr<Environment> make_env(const std::string& name);
std::unique_ptr<Environment> make_env(const std::string& name,
                                      const nlohmann::json& overrides);

}  // namespace rtdp
