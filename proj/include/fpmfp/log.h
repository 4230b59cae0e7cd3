// SPDX-License-Identifier: MIT
#pragma once

namespace fpmfp {

// Routes spdlog to stderr at the level named by FPMFP_LOG (error, info, debug).
void init_logging();

}  // namespace fpmfp
