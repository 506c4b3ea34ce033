#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/parallel.hpp"
#include "addcomb/reduction.hpp"

namespace addcomb {

enum class VerifyLevel { kQuick, kFull };

std::optional<VerifyLevel> parse_verify_level(const std::string& name);

// Executes every module invariant on seeded instances; one check per
// invariant (aggregated over its instances).
std::vector<BoundCheck> run_invariant_suite(VerifyLevel level, std::uint64_t seed, Exec exec = {});

}  // namespace addcomb
