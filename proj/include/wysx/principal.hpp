#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace wysx {

/// A named party. Names are case-sensitive and ordered lexicographically.
struct Principal {
  std::string name;

  Principal() = default;
  explicit Principal(std::string n) : name(std::move(n)) {}

  auto operator<=>(const Principal&) const = default;
};

/// Duplicate-free set of principals, always iterated in canonical order.
class PrinSet {
public:
  PrinSet() = default;
  PrinSet(std::initializer_list<std::string> names);
  explicit PrinSet(std::vector<Principal> members);

  static PrinSet singleton(Principal p);

  bool contains(const Principal& p) const;
  bool subset_of(const PrinSet& other) const;
  bool intersects(const PrinSet& other) const;
  PrinSet intersect(const PrinSet& other) const;
  PrinSet unite(const PrinSet& other) const;

  void insert(Principal p);

  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  const Principal& front() const { return members_.front(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  const std::vector<Principal>& members() const noexcept { return members_; }

  /// "{a,b}"
  std::string to_string() const;

  auto operator<=>(const PrinSet&) const = default;

private:
  std::vector<Principal> members_;
};

}  // namespace wysx
