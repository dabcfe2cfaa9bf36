#include "pmds/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pmds {

PValue PValue::finite(double p) {
  if (std::isnan(p)) throw std::invalid_argument("p must not be NaN");
  if (std::isinf(p)) return p > 0 ? pos_inf() : neg_inf();
  return PValue(Kind::Finite, p);
}

PValue PValue::parse(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ') t.push_back(static_cast<char>(std::tolower(c)));
  }
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") {
    return pos_inf();
  }
  if (t == "-inf" || t == "-infinity") return neg_inf();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid p value '" + text + "'");
  }
  if (used != t.size()) {
    throw std::invalid_argument("invalid p value '" + text + "'");
  }
  return finite(value);
}

double PValue::value() const noexcept {
  switch (kind_) {
    case Kind::NegInf:
      return -std::numeric_limits<double>::infinity();
    case Kind::PosInf:
      return std::numeric_limits<double>::infinity();
    case Kind::Finite:
      break;
  }
  return value_;
}

PValue PValue::saturated(double threshold) const {
  if (kind_ != Kind::Finite) return *this;
  if (value_ >= threshold) return pos_inf();
  if (value_ <= -threshold) return neg_inf();
  return *this;
}

std::string PValue::to_string() const {
  switch (kind_) {
    case Kind::NegInf:
      return "-inf";
    case Kind::PosInf:
      return "inf";
    case Kind::Finite:
      break;
  }
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

double generalized_mean(std::span<const double> x, PValue p) {
  if (x.empty()) throw std::domain_error("generalized mean of an empty sequence");
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const bool nonpositive_p =
      p.kind() == PValue::Kind::NegInf || (p.is_finite() && p.value() <= 0.0);
  if (nonpositive_p && lo <= 0.0) {
    throw std::domain_error("undefined mean: non-positive entry with p <= 0");
  }
  if (lo < 0.0) throw std::domain_error("undefined mean: negative entry");

  if (p.kind() == PValue::Kind::NegInf) return lo;
  if (p.kind() == PValue::Kind::PosInf) return hi;

  const double n = static_cast<double>(x.size());
  const double q = p.value();
  if (q == 0.0) {
    double logs = 0.0;
    for (double v : x) logs += std::log(v);
    return std::exp(logs / n);
  }
  // Factor out the extreme entry so the powers stay in [0, 1].
  const double scale = q > 0.0 ? hi : lo;
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += std::pow(v / scale, q);
  return scale * std::pow(acc / n, 1.0 / q);
}

namespace {

void require_nonempty(const NodeSet& s) {
  if (s.empty()) throw std::invalid_argument("node set is empty");
}

std::vector<double> degree_sequence(const Graph& g, const NodeSet& s) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& [v, d] : induced_degrees(g, s)) {
    out.push_back(static_cast<double>(d));
  }
  return out;
}

}  // namespace

double fp_value(const Graph& g, const NodeSet& s, double p) {
  if (!(p > 0.0) || std::isinf(p)) {
    throw std::invalid_argument("f_p requires finite p > 0");
  }
  require_nonempty(s);
  double acc = 0.0;
  for (const auto& [v, d] : induced_degrees(g, s)) {
    acc += std::pow(static_cast<double>(d), p);
  }
  return acc / static_cast<double>(s.size());
}

double p_density(const Graph& g, const NodeSet& s, PValue p,
                 double infinity_threshold) {
  require_nonempty(s);
  const PValue eff = p.saturated(infinity_threshold);
  const std::vector<double> degrees = degree_sequence(g, s);
  const bool nonpositive_p = eff.kind() == PValue::Kind::NegInf ||
                             (eff.is_finite() && eff.value() <= 0.0);
  if (nonpositive_p &&
      *std::min_element(degrees.begin(), degrees.end()) == 0.0) {
    throw std::domain_error("p-density undefined for zero degrees (p = " +
                            p.to_string() + ")");
  }
  return generalized_mean(degrees, eff);
}

double degree_score(double degree, double p) {
  if (p > 0.0) return std::pow(degree, p);
  if (p == 0.0) return std::log(degree);
  return -std::pow(degree, p);
}

double delta_j(const Graph& g, const NodeSet& s,
               std::span<const std::uint32_t> degrees, NodeId j, double p) {
  check_node_set(g, s);
  if (!s.contains(j)) {
    throw std::invalid_argument("node " + std::to_string(j) +
                                " is not in the set");
  }
  if (degrees.size() != g.num_nodes()) {
    throw std::invalid_argument("degree vector size does not match graph");
  }
  double delta = degree_score(degrees[j], p);
  for (NodeId i : g.neighbors(j)) {
    if (!s.contains(i)) continue;
    const double di = degrees[i];
    delta += degree_score(di, p) - degree_score(di - 1.0, p);
  }
  return delta;
}

DensityReport density_report(const Graph& g, const NodeSet& s, PValue p) {
  require_nonempty(s);
  DensityReport r;
  r.set_size = s.size();
  const auto degrees = induced_degrees(g, s);

  std::size_t twice_edges = 0;
  double squares = 0.0;
  r.min_degree = degrees.front().second;
  for (const auto& [v, d] : degrees) {
    twice_edges += d;
    squares += static_cast<double>(d) * d;
    r.max_degree = std::max(r.max_degree, d);
    r.min_degree = std::min(r.min_degree, d);
  }
  const double size = static_cast<double>(r.set_size);
  r.edge_count = twice_edges / 2;
  r.avg_degree = static_cast<double>(twice_edges) / size;
  r.avg_squared_degree = squares / size;
  r.edge_density = r.set_size < 2 ? 0.0
                                  : static_cast<double>(r.edge_count) /
                                        (size * (size - 1.0) / 2.0);

  if (p.is_finite() && (p.value() > 0.0 || r.min_degree > 0)) {
    double acc = 0.0;
    for (const auto& [v, d] : degrees) {
      acc += std::pow(static_cast<double>(d), p.value());
    }
    r.avg_pth_power_degree = acc / size;
  }
  try {
    r.m_p = p_density(g, s, p);
  } catch (const std::domain_error&) {
    r.m_p.reset();
  }
  return r;
}

}  // namespace pmds
