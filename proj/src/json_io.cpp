#include "spectile/json_io.hpp"

#include <stdexcept>

namespace spectile {

Group group_from_json(const json& j) {
  if (!j.contains("group") || !j["group"].is_array())
    throw std::invalid_argument("json: missing \"group\" array");
  std::vector<i64> orders;
  for (const auto& v : j["group"]) orders.push_back(v.get<i64>());
  return make_group(orders);
}

WeightedSet set_from_json(const json& j) {
  Group g = group_from_json(j);
  if (!j.contains("set") || !j["set"].is_array())
    throw std::invalid_argument("json: missing \"set\" array");
  std::vector<i64> idx;
  for (const auto& e : j["set"]) {
    if (e.is_number_integer()) {
      if (!g.cyclic())
        throw std::invalid_argument("json: bare integers only for single-factor groups");
      i64 x = e.get<i64>() % g.order();
      if (x < 0) x += g.order();
      idx.push_back(x);
    } else if (e.is_array()) {
      std::vector<i64> coords;
      for (const auto& c : e) coords.push_back(c.get<i64>());
      idx.push_back(g.index_of(coords));
    } else {
      throw std::invalid_argument("json: set elements must be integers or coordinate arrays");
    }
  }
  return WeightedSet::from_indices(g, idx);
}

json group_to_json(const Group& g) { return json(g.orders()); }

json elements_to_json(const Group& g, const std::vector<i64>& elems) {
  json arr = json::array();
  for (i64 e : elems) {
    if (g.cyclic()) {
      arr.push_back(e);
    } else {
      arr.push_back(json(g.coords_of(e)));
    }
  }
  return arr;
}

json set_to_json(const WeightedSet& s) {
  json j;
  j["group"] = group_to_json(s.group());
  j["set"] = elements_to_json(s.group(), s.support());
  return j;
}

}  // namespace spectile
