#pragma once

// Template definitions for region.hpp.

#include <algorithm>
#include <optional>

namespace kstab {

template <class Label>
std::vector<std::pair<Region, Label>> merge_regions(std::vector<std::pair<Region, Label>> pieces) {
  auto try_fuse = [](const Region& a, const Region& b) -> std::optional<Region> {
    if (a.u_lo() == b.u_lo() && a.u_hi() == b.u_hi() && a.v_hi() == b.v_lo())
      return Region(a.u_lo(), a.u_hi(), a.v_lo(), b.v_hi());
    if (a.v_lo() == b.v_lo() && a.v_hi() == b.v_hi() && a.u_hi() == b.u_lo())
      return Region(a.u_lo(), b.u_hi(), a.v_lo(), a.v_hi());
    return std::nullopt;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pieces.size() && !changed; ++i) {
      for (std::size_t j = 0; j < pieces.size() && !changed; ++j) {
        if (i == j || !(pieces[i].second == pieces[j].second)) continue;
        if (auto fused = try_fuse(pieces[i].first, pieces[j].first)) {
          pieces[i].first = *fused;
          pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }

  std::stable_sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) {
    const Region& a = x.first;
    const Region& b = y.first;
    if (a.u_lo() != b.u_lo()) return a.u_lo() < b.u_lo();
    return a.interior_point().v < b.interior_point().v;
  });
  return pieces;
}

}  // namespace kstab
