#include "helly/normed_space.hpp"

#include <cmath>
#include <stdexcept>

namespace helly {

namespace {

void check_vector(const Vec& x, const NormSpec& space, const char* what) {
  if (x.size() != space.dim) {
    throw std::invalid_argument(std::string(what) + ": vector has dimension " +
                                std::to_string(x.size()) + ", space has dimension " +
                                std::to_string(space.dim));
  }
  if (!x.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
  }
}

}  // namespace

double norm(const Vec& x, const NormSpec& space) {
  check_vector(x, space, "norm");
  if (space.p.is_infinite()) return x.cwiseAbs().maxCoeff();
  double p = space.p.value();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  // Scale by the max coordinate so large finite p cannot overflow.
  double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

Vec norm_subgradient(const Vec& x, const NormSpec& space) {
  check_vector(x, space, "norm_subgradient");
  Vec psi = Vec::Zero(x.size());
  if (space.p.is_infinite()) {
    // Supporting functional of the max coordinate; first index on ties.
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) > best) {
        best = std::abs(x[i]);
        arg = i;
      }
    }
    if (best > 0.0) psi[arg] = x[arg] > 0 ? 1.0 : -1.0;
    return psi;
  }
  double p = space.p.value();
  if (p == 1.0) {
    for (int i = 0; i < x.size(); ++i) psi[i] = (x[i] > 0) - (x[i] < 0);
    return psi;
  }
  double nrm = norm(x, space);
  if (nrm == 0.0) return psi;
  for (int i = 0; i < x.size(); ++i) {
    double t = std::abs(x[i]) / nrm;
    psi[i] = (x[i] >= 0 ? 1.0 : -1.0) * std::pow(t, p - 1.0);
  }
  return psi;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::tabulated: return "tabulated";
    case Provenance::empirical_lower_bound: return "empirical-lower-bound";
    case Provenance::user_supplied: return "user-supplied";
  }
  return "?";
}

namespace {

void check_rademacher_inputs(const std::vector<Vec>& vectors, double p,
                             const NormSpec& space) {
  if (vectors.empty()) throw std::invalid_argument("rademacher_average: empty vector list");
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("rademacher_average: moment exponent must be finite and >= 1");
  }
  for (const Vec& v : vectors) check_vector(v, space, "rademacher_average");
}

}  // namespace

RademacherAverage rademacher_average(const std::vector<Vec>& vectors, double p,
                                     const NormSpec& space) {
  check_rademacher_inputs(vectors, p, space);
  const int m = static_cast<int>(vectors.size());
  if (m > 24) {
    throw std::invalid_argument("rademacher_average: exhaustive mode capped at 24 vectors");
  }
  const std::uint64_t total = 1ull << m;
  // Gray-code walk: one sign flip per step keeps the running sum O(dim).
  Vec sum = Vec::Zero(space.dim);
  for (const Vec& v : vectors) sum += v;  // pattern 00..0 = all +
  double acc = std::pow(norm(sum, space), p);
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    std::uint64_t next = i ^ (i >> 1);
    std::uint64_t changed = gray ^ next;
    int bit = 0;
    while (!((changed >> bit) & 1ull)) ++bit;
    // bit set -> sign -1; flipping adds or removes 2*v.
    sum += ((next >> bit) & 1ull) ? Vec(-2.0 * vectors[bit]) : Vec(2.0 * vectors[bit]);
    gray = next;
    acc += std::pow(norm(sum, space), p);
  }
  RademacherAverage out;
  out.patterns = total;
  out.value = std::pow(acc / static_cast<double>(total), 1.0 / p);
  out.std_error = 0.0;
  return out;
}

RademacherAverage rademacher_average(const std::vector<Vec>& vectors, double p,
                                     const NormSpec& space, const MonteCarloMode& mc) {
  check_rademacher_inputs(vectors, p, space);
  if (mc.trials < 1) throw std::invalid_argument("rademacher_average: trials must be >= 1");
  const int m = static_cast<int>(vectors.size());
  double acc = 0.0, acc2 = 0.0;
  for (std::int64_t t = 0; t < mc.trials; ++t) {
    CounterRng rng(mc.seed, {static_cast<std::uint64_t>(t)});
    Vec sum = Vec::Zero(space.dim);
    std::uint64_t bits = 0;
    for (int i = 0; i < m; ++i) {
      if (i % 64 == 0) bits = rng.next_u64();
      sum += ((bits >> (i % 64)) & 1ull) ? Vec(-vectors[i]) : vectors[i];
    }
    double s = std::pow(norm(sum, space), p);
    acc += s;
    acc2 += s * s;
  }
  const double n = static_cast<double>(mc.trials);
  const double moment = acc / n;
  const double var = std::max(0.0, acc2 / n - moment * moment);
  const double se_moment = std::sqrt(var / n);
  RademacherAverage out;
  out.patterns = static_cast<std::uint64_t>(mc.trials);
  out.value = std::pow(moment, 1.0 / p);
  // Delta method: d/dm m^(1/p) = (1/p) m^(1/p - 1).
  out.std_error = moment > 0.0 ? se_moment * out.value / (p * moment) : se_moment;
  return out;
}

TypeEstimate type_lower_bound(const std::vector<Vec>& vectors, double p,
                              const NormSpec& space) {
  check_rademacher_inputs(vectors, p, space);
  double denom = 0.0;
  for (const Vec& v : vectors) {
    double nv = norm(v, space);
    if (nv == 0.0) throw std::invalid_argument("type_lower_bound: zero vector in set");
    denom += std::pow(nv, p);
  }
  denom = std::pow(denom, 1.0 / p);
  RademacherAverage avg = rademacher_average(vectors, p, space);
  TypeEstimate est;
  est.p = p;
  est.constant = avg.value / denom;
  est.provenance = Provenance::empirical_lower_bound;
  return est;
}

TypeEstimate type_constant_tabulated(const NormSpec& space, double p,
                                     const TypeTableOptions& opts) {
  if (!(p > 1.0 && p <= 2.0)) {
    throw std::invalid_argument("type_constant_tabulated: moment exponent must lie in (1, 2]");
  }
  TypeEstimate est;
  est.p = p;
  est.provenance = Provenance::tabulated;
  if (space.p.is_infinite()) {
    est.constant = std::max(1.0, opts.linf_c * std::sqrt(std::log(static_cast<double>(space.dim))));
    return est;
  }
  double q = space.p.value();
  if (q >= p && q <= 2.0) {
    est.constant = 1.0;
    return est;
  }
  if (q > 2.0) {
    est.constant = std::sqrt(q - 1.0);
    return est;
  }
  throw std::invalid_argument(
      "type_constant_tabulated: no entry for exponent q=" + std::to_string(q) +
      " with moment p=" + std::to_string(p) + " (unknown; supply your own estimate)");
}

Vec sample_unit_ball(const NormSpec& space, CounterRng& rng) {
  Vec x(space.dim);
  if (space.p.is_infinite()) {
    for (int i = 0; i < space.dim; ++i) x[i] = rng.uniform(-1.0, 1.0);
    return x;
  }
  // Generalized-normal direction plus an extra exponential gives an exact
  // uniform sample from the l_p ball.
  double p = space.p.value();
  double acc = 0.0;
  for (int i = 0; i < space.dim; ++i) {
    double g = std::pow(rng.gamma(1.0 / p), 1.0 / p);
    if (rng.unit() < 0.5) g = -g;
    x[i] = g;
    acc += std::pow(std::abs(g), p);
  }
  double w = rng.exponential();
  double scale = std::pow(acc + w, 1.0 / p);
  return scale > 0.0 ? Vec(x / scale) : Vec::Zero(space.dim);
}

}  // namespace helly
