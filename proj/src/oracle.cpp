#include "relaxlab/oracle.hpp"

#include "relaxlab/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relaxlab::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Hull {
  std::vector<double> x, v;
  double slope(std::size_t i) const { return (v[i + 1] - v[i]) / (x[i + 1] - x[i]); }
};

/// Lower convex hull of the finite samples (monotone chain).
Hull lower_hull(const Grid& f) {
  Hull h;
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    if (!f.finite(i)) continue;
    while (h.x.size() >= 2) {
      std::size_t n = h.x.size();
      double cross = (h.x[n - 1] - h.x[n - 2]) * (f.v[i] - h.v[n - 2]) - (h.v[n - 1] - h.v[n - 2]) * (f.x[i] - h.x[n - 2]);
      if (cross > 0) break;
      h.x.pop_back();
      h.v.pop_back();
    }
    h.x.push_back(f.x[i]);
    h.v.push_back(f.v[i]);
  }
  return h;
}

/// Slopes of the end segments of an Affine grid.
std::pair<double, double> end_slopes(const Grid& f) {
  std::size_t n = f.x.size();
  return {(f.v[1] - f.v[0]) / (f.x[1] - f.x[0]), (f.v[n - 1] - f.v[n - 2]) / (f.x[n - 1] - f.x[n - 2])};
}

void sort_unique(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

Grid Grid::sample(const std::vector<double>& xs, const std::function<double(double)>& f, Extension ext) {
  Grid g;
  g.x = xs;
  g.ext = ext;
  for (double t : xs) {
    double y = f(t);
    g.inf.push_back(std::isinf(y) && y > 0);
    g.v.push_back(g.inf.back() ? 0.0 : y);
  }
  g.check();
  return g;
}

Grid Grid::uniform(double lo, double hi, std::size_t n, const std::function<double(double)>& f, Extension ext) {
  if (n < 2) throw std::invalid_argument("uniform grid needs at least 2 samples");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return sample(xs, f, ext);
}

void Grid::check() const {
  if (x.size() != v.size() || x.size() != inf.size()) throw std::invalid_argument("grid: mismatched lengths");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] < x[i + 1])) throw std::invalid_argument("grid: abscissae must be strictly increasing");
  std::size_t finite_count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (inf[i]) continue;
    if (!std::isfinite(v[i])) throw std::invalid_argument("grid: values must be finite or flagged +inf");
    ++finite_count;
  }
  if (finite_count == 0) throw std::invalid_argument("grid: every sample is +inf");
  if (ext == Extension::Affine && (x.size() < 2 || finite_count != x.size()))
    throw std::invalid_argument("grid: affine extension needs at least 2 samples, all finite");
}

double Grid::at(double t, bool* is_inf) const {
  auto out = [&](double y, bool i) {
    if (is_inf) *is_inf = i;
    return i ? kInf : y;
  };
  std::size_t n = x.size();
  if (t < x.front() || t > x.back()) {
    if (ext == Extension::Infinite) return out(0, true);
    auto [sl, sr] = end_slopes(*this);
    return t < x.front() ? out(v.front() + sl * (t - x.front()), false) : out(v.back() + sr * (t - x.back()), false);
  }
  std::size_t i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin());
  if (i > 0 && x[i - 1] == t) return out(v[i - 1], inf[i - 1]);
  if (i >= n) return out(v[n - 1], inf[n - 1]);
  if (inf[i - 1] || inf[i]) return out(0, true);
  double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
  return out(v[i - 1] + w * (v[i] - v[i - 1]), false);
}

double Grid::modulus() const {
  double m = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (finite(i) && finite(i + 1)) m = std::max(m, std::abs(v[i + 1] - v[i]));
  return m;
}

Grid llt_conjugate(const Grid& f, const std::vector<double>& dual) {
  f.check();
  for (std::size_t i = 0; i + 1 < dual.size(); ++i)
    if (!(dual[i] < dual[i + 1])) throw std::invalid_argument("conjugate: dual abscissae must be strictly increasing");
  Hull h = lower_hull(f);
  double lo = -kInf, hi = kInf;
  if (f.ext == Extension::Affine) std::tie(lo, hi) = end_slopes(f);
  Grid out;
  out.x = dual;
  out.ext = f.ext == Extension::Infinite && dual.size() >= 2 ? Extension::Affine : Extension::Infinite;
  // Sweep the hull: the maximizing vertex moves right as s grows.
  std::size_t j = 0;
  for (double s : dual) {
    // End slopes are recomputed from data; allow rounding at the domain ends.
    if (s < lo - 1e-9 * (1 + std::abs(lo)) || s > hi + 1e-9 * (1 + std::abs(hi))) {
      out.v.push_back(0);
      out.inf.push_back(true);
      continue;
    }
    while (j + 1 < h.x.size() && h.slope(j) <= s) ++j;
    out.v.push_back(s * h.x[j] - h.v[j]);
    out.inf.push_back(false);
  }
  if (out.ext == Extension::Affine && std::find(out.inf.begin(), out.inf.end(), true) != out.inf.end())
    out.ext = Extension::Infinite;
  return out;
}

Grid llt_biconjugate(const Grid& f) {
  f.check();
  Hull h = lower_hull(f);
  std::vector<double> dual;
  for (std::size_t i = 0; i + 1 < h.x.size(); ++i) dual.push_back(h.slope(i));
  if (f.ext == Extension::Infinite) {
    // One slope beyond each end so that the end vertices stay exposed.
    double first = dual.empty() ? 0.0 : dual.front(), last = dual.empty() ? 0.0 : dual.back();
    dual.push_back(first - 1);
    dual.push_back(last + 1);
  } else {
    auto [sl, sr] = end_slopes(f);
    if (sl > sr) throw std::domain_error("biconjugate: the affine extension has no convex minorant");
    std::erase_if(dual, [&](double s) { return s < sl || s > sr; });
    dual.push_back(sl);
    dual.push_back(sr);
  }
  sort_unique(dual);
  Grid g = llt_conjugate(f, dual);
  Grid back = llt_conjugate(g, f.x);
  back.ext = f.ext;
  if (back.ext == Extension::Affine && std::find(back.inf.begin(), back.inf.end(), true) != back.inf.end())
    back.ext = Extension::Infinite;
  return back;
}

DualValues fenchel_dual_value(const Grid& f, const Grid& g) {
  f.check();
  g.check();
  DualValues out{kInf, -kInf};

  std::vector<double> xs = f.x;
  xs.insert(xs.end(), g.x.begin(), g.x.end());
  sort_unique(xs);
  auto primal = [&](double t, bool& inf) {
    bool fi = false, gi = false;
    double y = f.at(t, &fi) + g.at(t, &gi);
    inf = fi || gi;
    return y;
  };
  for (double t : xs) {
    bool inf = false;
    double y = primal(t, inf);
    if (!inf) out.vP = std::min(out.vP, y);
  }
  // Past the outermost breakpoint the sum is affine; a descent there is unbounded.
  for (auto [edge, dir] : {std::pair{xs.front(), -1.0}, std::pair{xs.back(), 1.0}}) {
    bool a = false, b = false;
    double y0 = primal(edge, a), y1 = primal(edge + dir, b);
    if (!a && !b && y1 < y0) out.vP = -kInf;
  }

  // -f*(s) - g*(-s) is concave and piecewise linear with breakpoints at the
  // hull slopes of f and the negated hull slopes of g.
  Hull hf = lower_hull(f), hg = lower_hull(g);
  std::vector<double> ss;
  for (std::size_t i = 0; i + 1 < hf.x.size(); ++i) ss.push_back(hf.slope(i));
  for (std::size_t i = 0; i + 1 < hg.x.size(); ++i) ss.push_back(-hg.slope(i));
  if (f.ext == Extension::Affine) {
    auto [sl, sr] = end_slopes(f);
    ss.push_back(sl);
    ss.push_back(sr);
  }
  if (g.ext == Extension::Affine) {
    auto [sl, sr] = end_slopes(g);
    ss.push_back(-sl);
    ss.push_back(-sr);
  }
  if (ss.empty()) ss.push_back(0);
  sort_unique(ss);
  ss.insert(ss.begin(), ss.front() - 1);
  ss.push_back(ss.back() + 1);
  Grid fs = llt_conjugate(f, ss);
  std::vector<double> neg(ss.rbegin(), ss.rend());
  for (double& s : neg) s = -s;
  Grid gs = llt_conjugate(g, neg);
  const std::size_t n = ss.size();
  std::vector<double> d(n, -kInf);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = n - 1 - i;
    if (!fs.inf[i] && !gs.inf[r]) d[i] = -fs.v[i] - gs.v[r];
    out.vD = std::max(out.vD, d[i]);
  }
  // The outer samples lie past every breakpoint: growth there is unbounded.
  if (n >= 2 && ((std::isfinite(d[0]) && std::isfinite(d[1]) && d[0] > d[1]) ||
                 (std::isfinite(d[n - 1]) && std::isfinite(d[n - 2]) && d[n - 1] > d[n - 2])))
    out.vD = kInf;
  return out;
}

CrossCheck cross_check(const Expr& e, const Point& base, const GridSpec& spec) {
  if (e.is_family() != spec.member.has_value())
    throw std::invalid_argument("cross_check: a member index is needed exactly for family expressions");
  if (base.space() != Space::Primal) throw std::invalid_argument("cross_check: base point must be primal");
  if (spec.samples < 2 || !(spec.lo < spec.hi)) throw std::invalid_argument("cross_check: need lo < hi and >= 2 samples");
  std::size_t coord = 0;
  if (spec.var.size() > 1 && spec.var[0] == 'x' &&
      std::all_of(spec.var.begin() + 1, spec.var.end(), [](char c) { return c >= '0' && c <= '9'; }))
    coord = std::stoul(spec.var.substr(1));
  Expr bic = biconjugate(e).expr;

  CrossCheck out;
  out.sampled.ext = Extension::Infinite;
  for (std::size_t i = 0; i < spec.samples; ++i) {
    Rat t = spec.lo + (spec.hi - spec.lo) * Rat(static_cast<long>(i), static_cast<long>(spec.samples - 1));
    std::vector<Rat> prefix = base.prefix();
    auto scalars = base.scalars();
    if (coord > 0) {
      if (prefix.size() < coord) prefix.resize(coord, Rat(0));
      prefix[coord - 1] = t;
    } else {
      scalars[spec.var] = t;
    }
    ExtReal v = eval(e, Point::primal(prefix, scalars), spec.member);
    ExtReal w = eval(bic, Point::bidual(prefix, Rat(0), scalars), spec.member);
    if (v.is_minus_inf() || w.is_minus_inf()) throw std::domain_error("cross_check: slice takes the value -inf");
    out.sampled.x.push_back(t.to_double());
    out.sampled.inf.push_back(v.is_plus_inf());
    out.sampled.v.push_back(v.is_plus_inf() ? 0.0 : v.value().to_double());
    out.structured.push_back(w.is_plus_inf() ? kInf : w.value().to_double());
  }
  out.oracle_envelope = llt_biconjugate(out.sampled);
  out.modulus = out.sampled.modulus();
  for (std::size_t i = 0; i < spec.samples; ++i) {
    bool oi = out.oracle_envelope.inf[i], si = std::isinf(out.structured[i]);
    double dev = oi != si ? kInf : oi ? 0.0 : std::abs(out.oracle_envelope.v[i] - out.structured[i]);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  out.agrees = out.max_deviation <= std::max(out.modulus, 1e-9);
  return out;
}

}  // namespace relaxlab::oracle
