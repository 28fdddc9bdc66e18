#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ugrowth {

enum class GroupKind : std::uint8_t { trivial, free, cyclic };

/// Selects the coefficient group used for edge labels.
struct CoefficientGroup {
  GroupKind kind = GroupKind::trivial;
  int parameter = 0;  // rank for free groups, order for cyclic groups

  static CoefficientGroup trivial() { return {}; }
  static CoefficientGroup free(int rank);
  static CoefficientGroup cyclic(int order);

  /// Parses "trivial", "free:m" or "cyclic:k".
  static CoefficientGroup parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const CoefficientGroup&, const CoefficientGroup&) = default;
};

/// An element of a trivial, free or cyclic group.
///
/// Free-group letters are signed 1-based generator indices: +i is x_i and
/// -i is its inverse. Words are always stored freely reduced. Cyclic
/// residues always lie in [0, order).
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement identity(const CoefficientGroup& group);
  static GroupElement generator(const CoefficientGroup& group, int index, bool inverse = false);
  static GroupElement word(const CoefficientGroup& group, std::span<const int> letters);
  static GroupElement residue(const CoefficientGroup& group, std::int64_t value);

  const CoefficientGroup& group() const { return group_; }
  std::span<const int> letters() const { return letters_; }
  int residue_value() const { return residue_; }
  bool is_identity() const { return letters_.empty() && residue_ == 0; }

  /// Flat integer encoding used for ordering and hashing keys.
  std::vector<int> serialize() const;
  std::string to_string() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  CoefficientGroup group_;
  std::vector<int> letters_;
  int residue_ = 0;
};

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupElement& a);
GroupElement power(const GroupElement& a, int exponent);

/// Equality of group elements; throws on mismatched groups.
bool equal(const GroupElement& a, const GroupElement& b);

/// Conjugacy test: cyclic-rotation comparison in free groups, equality otherwise.
bool conjugate_equal(const GroupElement& a, const GroupElement& b);

/// Shortlex comparison of serializations; orders labels deterministically.
std::strong_ordering compare(const GroupElement& a, const GroupElement& b);

namespace free_group {

/// Freely reduces a letter sequence.
std::vector<int> reduce(std::span<const int> letters);

/// Splits a reduced word as prefix * core * prefix^-1 with a cyclically reduced core.
struct CyclicDecomposition {
  std::vector<int> prefix;
  std::vector<int> core;
};
CyclicDecomposition cyclic_decomposition(std::span<const int> reduced);

/// Lexicographically least rotation of the cyclically reduced core; a
/// complete conjugacy invariant.
std::vector<int> conjugacy_class_key(std::span<const int> reduced);

/// Some g with g * a * g^-1 == b, if a and b are conjugate.
std::optional<GroupElement> conjugator(const GroupElement& a, const GroupElement& b);

/// Primitive root z with a == z^k, k >= 1; the centralizer of a != 1 is <z>.
GroupElement primitive_root(const GroupElement& a);

/// Whether some single g conjugates every xs[i] to ys[i].
bool simultaneously_conjugate(std::span<const GroupElement> xs, std::span<const GroupElement> ys);

}  // namespace free_group

}  // namespace ugrowth
