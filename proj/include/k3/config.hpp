#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "k3/hodge.hpp"
#include "k3/realization.hpp"

namespace k3 {

/// On-disk configuration (JSON).  Recognized keys:
///   gram_h11 : 20x20 matrix of rationals as strings "p/q"
///   seed     : unsigned integer
///   phi_h2   : optional 22x22 matrix of rationals (degree-2 isometry probe)
/// Missing keys fall back to defaults.
struct FileConfig {
  std::optional<GramH11> gram;
  std::optional<std::uint64_t> seed;
  std::optional<H2Matrix> phi;
};

/// Throws ConfigError on unreadable or malformed input.
FileConfig load_config(const std::string& path);
FileConfig parse_config(const std::string& json_text);

/// A fixed non-degenerate alternate Gram used by the robustness checks:
/// a symmetric 2x2 block [[2,1],[1,1]] in the top corner, -1 elsewhere on
/// the diagonal.
GramH11 alternate_gram();

}  // namespace k3
