#pragma once

#include "json.hpp"

#include "addcomb/fourier.hpp"
#include "addcomb/gf2.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/inverse3.hpp"
#include "addcomb/reduction.hpp"

namespace addcomb {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r);
Json to_json(const BoundCheck& c);
Json to_json(const SetStats& s);
Json to_json(const DiffSet& d);
Json to_json(const GowersResult& g);
Json to_json(const std::vector<SpectrumEntry>& top);
Json to_json(const LevelChain& chain);
Json to_json(const DecompositionReport& r);
Json to_json(const PfrReport& r);
// One object per pipeline stage, keyed "step1".."step8".
Json to_json(const InverseReport& r);

Json checks_json(const std::vector<BoundCheck>& checks);

}  // namespace addcomb
