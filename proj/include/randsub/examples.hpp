#pragma once

#include "randsub/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace randsub {

struct BundledExample {
    std::string name;
    std::string description;
    std::string spec;  // spec-format text
    std::optional<double> exact_entropy;
};

/// Registry of the standard substitutions, in a fixed order.
const std::vector<BundledExample>& bundled_examples();

/// Throws InvalidArgument for unknown names.
const BundledExample& find_example(std::string_view name);
RandomSubstitution load_example(std::string_view name);

} // namespace randsub
