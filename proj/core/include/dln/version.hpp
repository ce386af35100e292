#pragma once

#include <string_view>

namespace dln {

std::string_view version();

/// Project version plus the git revision the build was configured from.
std::string_view artifact_version();

}  // namespace dln
