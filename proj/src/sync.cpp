#include "spiked/sync.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "spiked/errors.hpp"

namespace spiked {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string normalize(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

int nearest_residue(const GroupKind& group, Complex z) {
  const int order = group.order();
  // candidates are the two roots of unity bracketing arg z
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  const double pos = a * order / kTwoPi;
  const long long k0 = static_cast<long long>(std::floor(pos));
  const int c0 = static_cast<int>(((k0 % order) + order) % order);
  const int c1 = (c0 + 1) % order;
  const double d0 = std::abs(chi(group, Residue{c0}) - z);
  const double d1 = std::abs(chi(group, Residue{c1}) - z);
  if (d0 < d1) return c0;
  if (d1 < d0) return c1;
  return std::min(c0, c1);
}

}  // namespace

LossSpec LossSpec::parse(const std::string& text) {
  const std::string t = normalize(text);
  if (t == "mismatch") return mismatch();
  if (t == "one-minus-cos" || t == "1-cos") return one_minus_cos();
  if (t == "custom-table" || t == "custom") return {Kind::custom_table, {}};
  throw ValidationError("unknown loss '" + text + "'");
}

LossSpec LossSpec::default_for(const GroupKind& group) {
  return group.is_cyclic() ? mismatch() : one_minus_cos();
}

std::string LossSpec::name() const {
  switch (kind) {
    case Kind::mismatch: return "mismatch";
    case Kind::one_minus_cos: return "one-minus-cos";
    case Kind::custom_table: return "custom-table";
  }
  return "?";
}

RoundSpec RoundSpec::parse(const std::string& text) {
  const std::string t = normalize(text);
  if (t == "nearest-character" || t == "nearest") return {Kind::nearest_character};
  if (t == "phase") return {Kind::phase};
  throw ValidationError("unknown rounding '" + text + "'");
}

std::string RoundSpec::name() const { return kind == Kind::phase ? "phase" : "nearest-character"; }

void check_compatible(const GroupKind& group, const LossSpec& loss) {
  switch (loss.kind) {
    case LossSpec::Kind::mismatch:
      if (!group.is_cyclic()) throw ValidationError("mismatch loss is only defined on Z/L");
      break;
    case LossSpec::Kind::one_minus_cos:
      if (group.is_cyclic()) throw ValidationError("one-minus-cos loss is only defined on U(1)");
      break;
    case LossSpec::Kind::custom_table: {
      if (!group.is_cyclic()) throw ValidationError("custom loss tables are only defined on Z/L");
      const auto l = static_cast<std::size_t>(group.order());
      if (loss.table.size() != l * l)
        throw ValidationError("custom loss table must have L*L = " + std::to_string(l * l) + " entries");
      break;
    }
  }
}

void check_compatible(const GroupKind& group, const RoundSpec& round) {
  if (round.kind == RoundSpec::Kind::phase && group.is_cyclic())
    throw ValidationError("phase rounding is only defined on U(1)");
}

CVector signal_vector(const GroupKind& group, const std::vector<GroupElement>& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n == 0) throw ValidationError("signal vector needs n >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * chi(group, x[static_cast<std::size_t>(i)]);
  return v;
}

GroupElement round_to_group(const GroupKind& group, Complex z, const RoundSpec& spec) {
  check_compatible(group, spec);
  if (z == Complex(0.0, 0.0)) return identity(group);
  if (group.is_cyclic()) return Residue{nearest_residue(group, z)};
  return make_element(group, std::arg(z));
}

GroupMatrix estimate_M(const CVector& v_hat, const GroupKind& group, const RoundSpec& spec) {
  check_compatible(group, spec);
  const auto n = static_cast<std::size_t>(v_hat.size());
  if (n < 2) throw ValidationError("estimate_M needs n >= 2");
  const double scale = static_cast<double>(n);
  GroupMatrix m(group, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex vi = v_hat(static_cast<Eigen::Index>(i));
    // upper triangle only; the lower one is mirrored so M_hat stays group-Hermitian
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = round_to_group(group, scale * vi * std::conj(v_hat(static_cast<Eigen::Index>(j))), spec);
      m(j, i) = inverse(group, m(i, j));
    }
  }
  return m;
}

double evaluate_loss(const GroupKind& group, const LossSpec& loss, const GroupElement& truth,
                     const GroupElement& estimate) {
  switch (loss.kind) {
    case LossSpec::Kind::mismatch:
      return truth == estimate ? 0.0 : 1.0;
    case LossSpec::Kind::one_minus_cos:
      return 1.0 - std::cos(std::get<Angle>(truth).radians - std::get<Angle>(estimate).radians);
    case LossSpec::Kind::custom_table: {
      const auto l = static_cast<std::size_t>(group.order());
      return loss.table[static_cast<std::size_t>(std::get<Residue>(truth).value) * l +
                        static_cast<std::size_t>(std::get<Residue>(estimate).value)];
    }
  }
  return 0.0;
}

double average_loss(const GroupMatrix& m, const GroupMatrix& m_hat, const LossSpec& loss) {
  if (m.size() != m_hat.size() || !(m.group() == m_hat.group()))
    throw ValidationError("average_loss needs matrices of the same group and shape");
  check_compatible(m.group(), loss);
  const std::size_t n = m.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += evaluate_loss(m.group(), loss, m(i, j), m_hat(i, j));
    total += row;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace spiked
