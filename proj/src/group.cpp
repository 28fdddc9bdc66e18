#include "ugrowth/group.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "ugrowth/error.hpp"

namespace ugrowth {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::invalid_argument: return "invalid-argument";
    case ErrorCategory::resource: return "guard";
    case ErrorCategory::invariant: return "internal-invariant";
  }
  return "unknown";
}

CoefficientGroup CoefficientGroup::free(int rank) {
  if (rank < 0) fail(ErrorCategory::invalid_argument, "free group rank must be >= 0");
  return {GroupKind::free, rank};
}

CoefficientGroup CoefficientGroup::cyclic(int order) {
  if (order < 1) fail(ErrorCategory::invalid_argument, "cyclic group order must be >= 1");
  return {GroupKind::cyclic, order};
}

CoefficientGroup CoefficientGroup::parse(std::string_view text) {
  if (text == "trivial") return trivial();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCategory::parse, "unknown group descriptor '" + std::string(text) + "'");
  }
  const auto kind = text.substr(0, colon);
  const auto digits = text.substr(colon + 1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    fail(ErrorCategory::parse, "bad group parameter in '" + std::string(text) + "'");
  }
  if (kind == "free") return free(value);
  if (kind == "cyclic") return cyclic(value);
  fail(ErrorCategory::parse, "unknown group kind '" + std::string(kind) + "'");
}

std::string CoefficientGroup::to_string() const {
  switch (kind) {
    case GroupKind::trivial: return "trivial";
    case GroupKind::free: return "free:" + std::to_string(parameter);
    case GroupKind::cyclic: return "cyclic:" + std::to_string(parameter);
  }
  return "?";
}

namespace {

void require_same_group(const GroupElement& a, const GroupElement& b) {
  if (a.group() != b.group()) {
    fail(ErrorCategory::invalid_argument,
         "mismatched coefficient groups: " + a.group().to_string() + " vs " + b.group().to_string());
  }
}

int normalize_residue(std::int64_t value, int order) {
  auto r = value % order;
  if (r < 0) r += order;
  return static_cast<int>(r);
}

}  // namespace

GroupElement GroupElement::identity(const CoefficientGroup& group) {
  GroupElement e;
  e.group_ = group;
  return e;
}

GroupElement GroupElement::generator(const CoefficientGroup& group, int index, bool inverse) {
  if (group.kind == GroupKind::cyclic) return residue(group, inverse ? -1 : 1);
  if (group.kind == GroupKind::trivial) return identity(group);
  const int letter = inverse ? -index : index;
  return word(group, std::span<const int>(&letter, 1));
}

GroupElement GroupElement::word(const CoefficientGroup& group, std::span<const int> letters) {
  GroupElement e = identity(group);
  switch (group.kind) {
    case GroupKind::trivial:
      break;
    case GroupKind::cyclic: {
      std::int64_t sum = 0;
      for (int x : letters) sum += x > 0 ? 1 : -1;
      e.residue_ = normalize_residue(sum, group.parameter);
      break;
    }
    case GroupKind::free:
      for (int x : letters) {
        if (x == 0 || std::abs(x) > group.parameter) {
          fail(ErrorCategory::invalid_argument,
               "generator " + std::to_string(x) + " outside free group of rank " +
                   std::to_string(group.parameter));
        }
      }
      e.letters_ = free_group::reduce(letters);
      break;
  }
  return e;
}

GroupElement GroupElement::residue(const CoefficientGroup& group, std::int64_t value) {
  if (group.kind != GroupKind::cyclic) {
    fail(ErrorCategory::invalid_argument, "residue() requires a cyclic group");
  }
  GroupElement e = identity(group);
  e.residue_ = normalize_residue(value, group.parameter);
  return e;
}

std::vector<int> GroupElement::serialize() const {
  switch (group_.kind) {
    case GroupKind::trivial: return {};
    case GroupKind::cyclic: return {residue_};
    case GroupKind::free: {
      std::vector<int> out;
      out.reserve(letters_.size() + 1);
      out.push_back(static_cast<int>(letters_.size()));
      out.insert(out.end(), letters_.begin(), letters_.end());
      return out;
    }
  }
  return {};
}

std::string GroupElement::to_string() const {
  switch (group_.kind) {
    case GroupKind::trivial: return "1";
    case GroupKind::cyclic: return std::to_string(residue_);
    case GroupKind::free: {
      if (letters_.empty()) return "1";
      std::ostringstream os;
      for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << ' ';
        os << 'x' << std::abs(letters_[i]);
        if (letters_[i] < 0) os << '\'';
      }
      return os.str();
    }
  }
  return "?";
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  const auto& group = a.group();
  switch (group.kind) {
    case GroupKind::trivial:
      return a;
    case GroupKind::cyclic:
      return GroupElement::residue(group, std::int64_t{a.residue_value()} + b.residue_value());
    case GroupKind::free: {
      std::vector<int> joined(a.letters().begin(), a.letters().end());
      joined.insert(joined.end(), b.letters().begin(), b.letters().end());
      return GroupElement::word(group, joined);
    }
  }
  return a;
}

GroupElement invert(const GroupElement& a) {
  const auto& group = a.group();
  switch (group.kind) {
    case GroupKind::trivial:
      return a;
    case GroupKind::cyclic:
      return GroupElement::residue(group, -std::int64_t{a.residue_value()});
    case GroupKind::free: {
      std::vector<int> out(a.letters().rbegin(), a.letters().rend());
      for (int& x : out) x = -x;
      return GroupElement::word(group, out);
    }
  }
  return a;
}

GroupElement power(const GroupElement& a, int exponent) {
  GroupElement base = exponent < 0 ? invert(a) : a;
  GroupElement out = GroupElement::identity(a.group());
  for (int i = 0; i < std::abs(exponent); ++i) out = multiply(out, base);
  return out;
}

bool equal(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  return a == b;
}

bool conjugate_equal(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  if (a.group().kind != GroupKind::free) return a == b;
  return free_group::conjugacy_class_key(a.letters()) == free_group::conjugacy_class_key(b.letters());
}

std::strong_ordering compare(const GroupElement& a, const GroupElement& b) {
  const auto sa = a.serialize();
  const auto sb = b.serialize();
  if (auto c = sa.size() <=> sb.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
}

namespace free_group {

std::vector<int> reduce(std::span<const int> letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int x : letters) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

CyclicDecomposition cyclic_decomposition(std::span<const int> reduced) {
  std::size_t lo = 0;
  std::size_t hi = reduced.size();
  while (hi - lo >= 2 && reduced[lo] == -reduced[hi - 1]) {
    ++lo;
    --hi;
  }
  return {std::vector<int>(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(lo)),
          std::vector<int>(reduced.begin() + static_cast<std::ptrdiff_t>(lo),
                           reduced.begin() + static_cast<std::ptrdiff_t>(hi))};
}

std::vector<int> conjugacy_class_key(std::span<const int> reduced) {
  auto core = cyclic_decomposition(reduced).core;
  std::vector<int> best = core;
  std::vector<int> rotated(core.size());
  for (std::size_t s = 1; s < core.size(); ++s) {
    std::rotate_copy(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(s), core.end(),
                     rotated.begin());
    if (rotated < best) best = rotated;
  }
  return best;
}

namespace {

std::vector<int> inverse_letters(std::span<const int> w) {
  std::vector<int> out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

}  // namespace

std::optional<GroupElement> conjugator(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  const auto& group = a.group();
  if (group.kind != GroupKind::free) {
    if (a == b) return GroupElement::identity(group);
    return std::nullopt;
  }
  const auto da = cyclic_decomposition(a.letters());
  const auto db = cyclic_decomposition(b.letters());
  if (da.core.size() != db.core.size()) return std::nullopt;
  const std::size_t len = da.core.size();
  for (std::size_t s = 0; s < std::max<std::size_t>(len, 1); ++s) {
    bool match = true;
    for (std::size_t i = 0; i < len && match; ++i) match = db.core[i] == da.core[(i + s) % len];
    if (!match) continue;
    // core_b = c1^-1 * core_a * c1 with c1 the first s letters of core_a.
    std::vector<int> g = db.prefix;
    const auto c1_inv = inverse_letters(std::span<const int>(da.core).first(s));
    g.insert(g.end(), c1_inv.begin(), c1_inv.end());
    const auto p_inv = inverse_letters(da.prefix);
    g.insert(g.end(), p_inv.begin(), p_inv.end());
    return GroupElement::word(group, g);
  }
  return std::nullopt;
}

GroupElement primitive_root(const GroupElement& a) {
  if (a.group().kind != GroupKind::free || a.is_identity()) return a;
  const auto d = cyclic_decomposition(a.letters());
  const std::size_t len = d.core.size();
  std::size_t period = len;
  for (std::size_t p = 1; p < len; ++p) {
    if (len % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < len && periodic; ++i) periodic = d.core[i] == d.core[i - p];
    if (periodic) {
      period = p;
      break;
    }
  }
  std::vector<int> root = d.prefix;
  root.insert(root.end(), d.core.begin(), d.core.begin() + static_cast<std::ptrdiff_t>(period));
  const auto p_inv = inverse_letters(d.prefix);
  root.insert(root.end(), p_inv.begin(), p_inv.end());
  return GroupElement::word(a.group(), root);
}

namespace {

GroupElement conjugate_by(const GroupElement& g, const GroupElement& x) {
  return multiply(multiply(g, x), invert(g));
}

bool commute(const GroupElement& a, const GroupElement& b) {
  return multiply(a, b) == multiply(b, a);
}

bool conjugates_all(const GroupElement& g, std::span<const GroupElement> xs,
                    std::span<const GroupElement> ys) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (conjugate_by(g, xs[i]) != ys[i]) return false;
  }
  return true;
}

}  // namespace

bool simultaneously_conjugate(std::span<const GroupElement> xs, std::span<const GroupElement> ys) {
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require_same_group(xs[i], ys[i]);
    if (!conjugate_equal(xs[i], ys[i])) return false;
  }
  const auto pivot = std::find_if(xs.begin(), xs.end(), [](const auto& x) { return !x.is_identity(); });
  if (pivot == xs.end()) return true;
  const auto p = static_cast<std::size_t>(pivot - xs.begin());
  const auto g0 = conjugator(xs[p], ys[p]);
  if (!g0) return false;
  if (xs[p].group().kind != GroupKind::free) return conjugates_all(*g0, xs, ys);

  // Every valid conjugator lies in g0 * <z>.
  const auto z = primitive_root(xs[p]);
  const auto zd = cyclic_decomposition(z.letters());
  const auto& group = z.group();
  const auto frame = GroupElement::word(group, zd.prefix);
  const auto core = GroupElement::word(group, zd.core);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (commute(z, xs[j])) continue;
    // Solve c^k x' c^-k == t' in the frame where z is cyclically reduced.
    const auto x_frame = conjugate_by(invert(frame), xs[j]);
    const auto target = conjugate_by(invert(multiply(*g0, frame)), ys[j]);
    const int bound = static_cast<int>(x_frame.letters().size() + target.letters().size()) + 2;
    for (int k = -bound; k <= bound; ++k) {
      if (conjugate_by(power(core, k), x_frame) != target) continue;
      const auto g = multiply(*g0, power(z, k));
      return conjugates_all(g, xs, ys);
    }
    return false;
  }
  return conjugates_all(*g0, xs, ys);
}

}  // namespace free_group

}  // namespace ugrowth
