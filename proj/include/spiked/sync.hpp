#pragma once

#include <string>
#include <vector>

#include "spiked/ensembles.hpp"
#include "spiked/group.hpp"

namespace spiked {

/// Entrywise loss between a true and an estimated group element.
struct LossSpec {
  enum class Kind { mismatch, one_minus_cos, custom_table };

  Kind kind = Kind::mismatch;
  /// custom_table only: L x L row-major, table[a * L + b] = loss(a, b).
  std::vector<double> table;

  static LossSpec mismatch() { return {Kind::mismatch, {}}; }
  static LossSpec one_minus_cos() { return {Kind::one_minus_cos, {}}; }
  static LossSpec custom(std::vector<double> table) { return {Kind::custom_table, std::move(table)}; }
  static LossSpec parse(const std::string& text);
  /// Natural loss for the group: mismatch on Z/L, 1 - cos on U(1).
  static LossSpec default_for(const GroupKind& group);

  std::string name() const;
  bool operator==(const LossSpec&) const = default;
};

struct RoundSpec {
  enum class Kind { nearest_character, phase };

  Kind kind = Kind::nearest_character;

  static RoundSpec parse(const std::string& text);
  std::string name() const;
  bool operator==(const RoundSpec&) const = default;
};

/// Throws ValidationError for combinations the loss/round kinds do not
/// support (mismatch on U(1), 1 - cos on Z/L, phase rounding on Z/L, a
/// custom table of the wrong size).
void check_compatible(const GroupKind& group, const LossSpec& loss);
void check_compatible(const GroupKind& group, const RoundSpec& round);

/// Planted direction v_i = chi(x_i) / sqrt(n).
CVector signal_vector(const GroupKind& group, const std::vector<GroupElement>& x);

/// Nearest character on Z/L (smaller residue on exact ties), angle of z on
/// U(1). z == 0 rounds to the identity.
GroupElement round_to_group(const GroupKind& group, Complex z, const RoundSpec& spec);

/// M_hat_ij = Round(n * v_hat_i * conj(v_hat_j)) for i < j, M_hat_ji = M_hat_ij^-1,
/// identity on the diagonal.
GroupMatrix estimate_M(const CVector& v_hat, const GroupKind& group, const RoundSpec& spec);

double evaluate_loss(const GroupKind& group, const LossSpec& loss, const GroupElement& truth,
                     const GroupElement& estimate);

/// (1/n^2) * sum over all ordered pairs, diagonal included. Row sums are
/// accumulated in index order, so the result does not depend on scheduling.
double average_loss(const GroupMatrix& m, const GroupMatrix& m_hat, const LossSpec& loss);

}  // namespace spiked
