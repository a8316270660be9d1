#ifndef SPECTILE_JSON_IO_HPP
#define SPECTILE_JSON_IO_HPP

#include <json.hpp>

#include "spectile/group.hpp"

// JSON wire format: {"group":[n1,...,nk], "set":[[c1,...,ck],...]}; bare
// integers are accepted (and emitted) for single-factor groups.

namespace spectile {

using nlohmann::json;

Group group_from_json(const json& j);
WeightedSet set_from_json(const json& j);

json group_to_json(const Group& g);
json elements_to_json(const Group& g, const std::vector<i64>& elems);
json set_to_json(const WeightedSet& s);

}  // namespace spectile

#endif
