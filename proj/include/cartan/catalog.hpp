#pragma once

#include <string>
#include <vector>

#include "cartan/dynsys.hpp"

// Small named systems used throughout tests, demos and the CLI.
namespace cartan::catalog {

inline SystemSpec cyclic_group_spec(std::size_t n) {
  SystemSpec s;
  for (std::size_t a = 0; a < n; ++a) s.group_labels.push_back(std::to_string(a));
  s.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s.table[a][b] = (a + b) % n;
  return s;
}

/// Z/n acting on itself by translation.
inline SystemRef cyclic_translation(std::size_t n) {
  SystemSpec s = cyclic_group_spec(n);
  s.point_labels = s.group_labels;
  s.action = s.table;
  return make_system(s);
}

/// Group given by `group` acting trivially on `points` points.
inline SystemRef trivial_action(const SystemSpec& group, std::size_t points) {
  SystemSpec s = group;
  s.point_labels.clear();
  for (std::size_t x = 0; x < points; ++x) s.point_labels.push_back(std::to_string(x));
  std::vector<std::size_t> id(points);
  for (std::size_t x = 0; x < points; ++x) id[x] = x;
  s.action.assign(s.group_labels.size(), id);
  return make_system(s);
}

/// `copies` disjoint copies of the left-regular action of `group`;
/// point k*|G| + h is the copy-k image of h.
inline SystemRef regular_orbits(const SystemSpec& group, std::size_t copies) {
  const std::size_t n = group.group_labels.size();
  SystemSpec s = group;
  s.point_labels.clear();
  for (std::size_t k = 0; k < copies; ++k)
    for (std::size_t h = 0; h < n; ++h) s.point_labels.push_back(std::to_string(k * n + h));
  s.action.assign(n, std::vector<std::size_t>(copies * n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t k = 0; k < copies; ++k)
      for (std::size_t h = 0; h < n; ++h) s.action[g][k * n + h] = k * n + group.table[g][h];
  return make_system(s);
}

/// Z/2 swapping 0<->1 and 2<->3.
inline SystemRef double_swap() { return regular_orbits(cyclic_group_spec(2), 2); }

/// Z/2 x Z/2 with elements (a,b) at index 2a+b.
inline SystemSpec klein_four_spec() {
  SystemSpec s;
  s.group_labels = {"(0,0)", "(0,1)", "(1,0)", "(1,1)"};
  s.table.assign(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) s.table[a][b] = a ^ b;
  return s;
}

inline SystemSpec trivial_group_spec() { return cyclic_group_spec(1); }

}  // namespace cartan::catalog
