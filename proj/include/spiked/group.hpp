#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "spiked/rng.hpp"

namespace spiked {

using Complex = std::complex<double>;

/// Z/L (cyclic, L >= 2) or the circle group U(1).
class GroupKind {
 public:
  enum class Family { cyclic, circle };

  static GroupKind cyclic(int order);
  static GroupKind circle() { return GroupKind(Family::circle, 0); }
  /// Parses "Z/5", "Z5" or "U(1)" / "U1".
  static GroupKind parse(const std::string& text);

  Family family() const noexcept { return family_; }
  bool is_cyclic() const noexcept { return family_ == Family::cyclic; }
  int order() const noexcept { return order_; }  // 0 for the circle
  /// Z/2 is the only group whose character is real-valued.
  bool real_characters() const noexcept { return is_cyclic() && order_ == 2; }
  std::string name() const;

  bool operator==(const GroupKind&) const = default;

 private:
  GroupKind(Family family, int order) : family_(family), order_(order) {}
  Family family_;
  int order_;
};

struct Residue {
  int value = 0;
  bool operator==(const Residue&) const = default;
};

struct Angle {
  double radians = 0.0;
  bool operator==(const Angle&) const = default;
};

/// Canonical representative: residue reduced mod L, or angle in [0, 2*pi).
using GroupElement = std::variant<Residue, Angle>;

GroupElement identity(const GroupKind& group);
GroupElement make_element(const GroupKind& group, double value);
GroupElement multiply(const GroupKind& group, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupKind& group, const GroupElement& a);
/// Residue or radians as a plain number, for serialization.
double element_value(const GroupElement& a);

/// exp(2*pi*i*x/L) on Z/L, exp(i*x) on U(1).
Complex chi(const GroupKind& group, const GroupElement& x);

GroupElement haar_sample(const GroupKind& group, Rng& rng);
std::vector<GroupElement> haar_samples(const GroupKind& group, std::size_t n, Rng& rng);

/// Dense n x n matrix of group elements, row-major.
class GroupMatrix {
 public:
  GroupMatrix(GroupKind group, std::size_t n);

  const GroupKind& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return n_; }
  const GroupElement& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  GroupElement& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  /// M_ji == M_ij^-1 and M_ii == identity.
  bool is_group_hermitian() const;

 private:
  GroupKind group_;
  std::size_t n_;
  std::vector<GroupElement> data_;
};

/// M_ij = x_i x_j^-1.
GroupMatrix pairwise_matrix(const GroupKind& group, const std::vector<GroupElement>& x);

}  // namespace spiked
