#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pmds/graph.hpp"

namespace pmds {

/// Exponent of a power mean, including the limits p = -inf and p = +inf.
class PValue {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  /// Throws std::invalid_argument on NaN. Infinite doubles map to the
  /// corresponding limit.
  static PValue finite(double p);
  static PValue neg_inf() { return PValue(Kind::NegInf, 0.0); }
  static PValue pos_inf() { return PValue(Kind::PosInf, 0.0); }
  /// Accepts a decimal number or one of "inf", "+inf", "-inf", "infinity".
  static PValue parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// Value for finite p; +-infinity for the limits.
  double value() const noexcept;

  /// Limits collapse for |p| >= threshold.
  PValue saturated(double threshold) const;

  std::string to_string() const;

  friend bool operator==(const PValue&, const PValue&) = default;

 private:
  PValue(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_ = Kind::Finite;
  double value_ = 1.0;
};

/// |p| at or beyond which p_density and the peel scorers use the min/max
/// limit instead of evaluating powers.
inline constexpr double kDefaultInfinityThreshold = 50.0;

/// M_p(x). Throws std::domain_error for empty x or for a non-positive entry
/// when p <= 0.
double generalized_mean(std::span<const double> x, PValue p);

/// f_p(S) = sum over S of d_v(S)^p / |S|, for finite p > 0.
double fp_value(const Graph& g, const NodeSet& s, double p);

/// M_p(S), the power mean of the induced degrees of S. Throws
/// std::domain_error when p <= 0 and S holds a node of induced degree 0.
double p_density(const Graph& g, const NodeSet& s, PValue p,
                 double infinity_threshold = kDefaultInfinityThreshold);

/// Per-node score whose mean over S is maximized together with M_p(S):
/// d^p for p > 0, log d for p = 0 and -d^p for p < 0. Zero degrees map to
/// -inf when p <= 0.
double degree_score(double degree, double p);

/// Drop in sum_{v in S} degree_score(d_v(S)) caused by removing j from S:
///   score(d_j) + sum_{i in N(j) cap S} [score(d_i) - score(d_i - 1)].
/// For p > 0 this is the peeling marginal d_j^p + sum (d_i^p - (d_i-1)^p).
/// `degrees` holds d_v(S) indexed by node. Throws std::invalid_argument if
/// j is not in S.
double delta_j(const Graph& g, const NodeSet& s,
               std::span<const std::uint32_t> degrees, NodeId j, double p);

/// Summary metrics of one node set.
struct DensityReport {
  std::size_t set_size = 0;
  std::size_t edge_count = 0;
  /// |E_S| / C(|S|, 2); zero for singletons.
  double edge_density = 0.0;
  double avg_degree = 0.0;
  double avg_squared_degree = 0.0;
  /// sum d_v(S)^p / |S| for finite p, when defined.
  std::optional<double> avg_pth_power_degree;
  std::uint32_t max_degree = 0;
  std::uint32_t min_degree = 0;
  /// M_p(S), when defined.
  std::optional<double> m_p;
};

/// Throws std::invalid_argument for an empty set.
DensityReport density_report(const Graph& g, const NodeSet& s, PValue p);

}  // namespace pmds
