#pragma once

// Plain-text model fixtures: one `key=value` per line, '#' comments.
//
//   variant   mallows | noisy_sort | btl | thurstone | weak_st_example
//   n_items   item count
//   eta       Mallows dispersion
//   gamma     noisy-sort advantage in (0, 1/2)
//   prior     normal | uniform (parametric variants)
//   prior_a   mean or lower bound
//   prior_b   standard deviation or upper bound
//   seed      master seed

#include <cstdint>
#include <string>

#include "bpp/sst_models.hpp"

namespace bpp {

struct ModelConfig {
  ComparisonModel model;
  std::string variant;
  std::uint64_t seed = 0;
};

/// Throws ValidationError on unknown keys, missing required keys, or bad values.
ModelConfig parse_model_config(const std::string& text);
ModelConfig load_model_config(const std::string& path);

}  // namespace bpp
