#include "wysx/principal.hpp"

#include <algorithm>
#include <iterator>

namespace wysx {

PrinSet::PrinSet(std::initializer_list<std::string> names) {
  for (const auto& n : names) insert(Principal(n));
}

PrinSet::PrinSet(std::vector<Principal> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

PrinSet PrinSet::singleton(Principal p) {
  PrinSet s;
  s.members_.push_back(std::move(p));
  return s;
}

bool PrinSet::contains(const Principal& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

bool PrinSet::subset_of(const PrinSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

bool PrinSet::intersects(const PrinSet& other) const { return !intersect(other).empty(); }

PrinSet PrinSet::intersect(const PrinSet& other) const {
  PrinSet out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out.members_));
  return out;
}

PrinSet PrinSet::unite(const PrinSet& other) const {
  PrinSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

void PrinSet::insert(Principal p) {
  auto it = std::lower_bound(members_.begin(), members_.end(), p);
  if (it == members_.end() || *it != p) members_.insert(it, std::move(p));
}

std::string PrinSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ",";
    out += members_[i].name;
  }
  return out + "}";
}

}  // namespace wysx
