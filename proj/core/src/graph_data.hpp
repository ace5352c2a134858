#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace geomax::detail {

// (name, file contents) for every shipped edge-list file.
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_graph_files();

}  // namespace geomax::detail
