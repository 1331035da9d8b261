#include "spiked/group.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "spiked/errors.hpp"

namespace spiked {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round back up to 2*pi
  if (r >= kTwoPi || r == 0.0) r = 0.0;
  return r;
}

int reduce(long long r, int order) {
  long long m = r % order;
  if (m < 0) m += order;
  return static_cast<int>(m);
}

const Residue& as_residue(const GroupElement& a) {
  if (const auto* r = std::get_if<Residue>(&a)) return *r;
  throw ValidationError("expected a Z/L residue, got a U(1) angle");
}

const Angle& as_angle(const GroupElement& a) {
  if (const auto* r = std::get_if<Angle>(&a)) return *r;
  throw ValidationError("expected a U(1) angle, got a Z/L residue");
}

}  // namespace

GroupKind GroupKind::cyclic(int order) {
  if (order < 2) throw ValidationError("cyclic group order must be >= 2, got " + std::to_string(order));
  return GroupKind(Family::cyclic, order);
}

GroupKind GroupKind::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::toupper(c));
  if (t == "U(1)" || t == "U1" || t == "CIRCLE") return circle();
  std::string digits;
  if (t.rfind("Z/", 0) == 0)
    digits = t.substr(2);
  else if (t.rfind("Z", 0) == 0)
    digits = t.substr(1);
  if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos)
    return cyclic(std::stoi(digits));
  throw ValidationError("unknown group '" + text + "' (expected Z/L or U(1))");
}

std::string GroupKind::name() const {
  return is_cyclic() ? "Z/" + std::to_string(order_) : "U(1)";
}

GroupElement identity(const GroupKind& group) {
  if (group.is_cyclic()) return Residue{0};
  return Angle{0.0};
}

GroupElement make_element(const GroupKind& group, double value) {
  if (group.is_cyclic()) {
    if (value != std::floor(value)) throw ValidationError("Z/L element must be an integer residue");
    return Residue{reduce(static_cast<long long>(value), group.order())};
  }
  return Angle{wrap_angle(value)};
}

GroupElement multiply(const GroupKind& group, const GroupElement& a, const GroupElement& b) {
  if (group.is_cyclic())
    return Residue{reduce(static_cast<long long>(as_residue(a).value) + as_residue(b).value, group.order())};
  return Angle{wrap_angle(as_angle(a).radians + as_angle(b).radians)};
}

GroupElement inverse(const GroupKind& group, const GroupElement& a) {
  if (group.is_cyclic()) return Residue{reduce(-static_cast<long long>(as_residue(a).value), group.order())};
  return Angle{wrap_angle(-as_angle(a).radians)};
}

double element_value(const GroupElement& a) {
  if (const auto* r = std::get_if<Residue>(&a)) return r->value;
  return std::get<Angle>(a).radians;
}

Complex chi(const GroupKind& group, const GroupElement& x) {
  if (group.is_cyclic()) {
    const int r = as_residue(x).value;
    const int order = group.order();
    // exact values on the real/imaginary axes keep Z/2 and Z/4 characters
    // free of rounding noise
    if (r == 0) return {1.0, 0.0};
    if (2 * r == order) return {-1.0, 0.0};
    if (4 * r == order) return {0.0, 1.0};
    if (4 * r == 3 * order) return {0.0, -1.0};
    return std::polar(1.0, kTwoPi * r / order);
  }
  return std::polar(1.0, as_angle(x).radians);
}

GroupElement haar_sample(const GroupKind& group, Rng& rng) {
  if (group.is_cyclic()) return Residue{static_cast<int>(rng.below(static_cast<std::uint64_t>(group.order())))};
  return Angle{wrap_angle(kTwoPi * rng.uniform())};
}

std::vector<GroupElement> haar_samples(const GroupKind& group, std::size_t n, Rng& rng) {
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(haar_sample(group, rng));
  return out;
}

GroupMatrix::GroupMatrix(GroupKind group, std::size_t n)
    : group_(group), n_(n), data_(n * n, identity(group)) {}

bool GroupMatrix::is_group_hermitian() const {
  const GroupElement e = identity(group_);
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != e) return false;
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(j, i) != inverse(group_, (*this)(i, j))) return false;
  }
  return true;
}

GroupMatrix pairwise_matrix(const GroupKind& group, const std::vector<GroupElement>& x) {
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("pairwise_matrix needs at least two elements");
  GroupMatrix m(group, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = multiply(group, x[i], inverse(group, x[j]));
      m(j, i) = inverse(group, m(i, j));
    }
  }
  return m;
}

}  // namespace spiked
