#include "hamcert/quadopt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "hamcert/errors.hpp"

namespace hamcert {

namespace {

// 15-point Kronrod abscissae; odd indices (1,3,5,7) are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const ScalarFn& fn, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = fn(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::fabs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = fn(center - dx);
    const double f2 = fn(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p{lo, hi, kronrod * half, 0.0};
  // Roundoff floor keeps the estimate honest when the rules agree exactly.
  p.error = std::fabs((kronrod - gauss) * half) + 50.0 * kEps * abs_sum * std::fabs(half);
  return p;
}

}  // namespace

QuadResult integrate(const ScalarFn& fn, double lo, double hi,
                     std::span<const double> breakpoints, QuadOptions opts) {
  if (!(lo <= hi)) throw Error("integrate: lower limit exceeds upper limit");
  if (!(opts.tol > 0.0)) throw Error("integrate: tolerance must be positive");
  if (lo == hi) return {0.0, 0.0, 1};

  std::vector<double> cuts{lo};
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> heap;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(fn, cuts[i], cuts[i + 1]);
    value += p.value;
    error += p.error;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());

  while (error > opts.tol) {
    if (panels >= opts.max_panels) throw QuadratureFailure(value, error);
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Cannot split further in double precision.
      throw QuadratureFailure(value, error);
    }
    Panel left = gk15(fn, worst.lo, mid);
    Panel right = gk15(fn, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum to shed the drift of the incremental updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, panels};
}

ExtremumResult extremize(const ScalarFn& fn, double lo, double hi, ExtremumMode mode,
                         ExtremizeOptions opts) {
  if (!(lo < hi)) throw Error("extremize: empty interval");
  if (opts.n_seed < 3) throw Error("extremize: need at least 3 seeds");
  const bool want_max = mode == ExtremumMode::Max;
  auto better = [&](double a, double b) { return want_max ? a > b : a < b; };

  const int n = opts.n_seed;
  std::vector<double> ts(n), fs(n);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    ts[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    fs[i] = fn(ts[i]);
    if (better(fs[i], fs[best])) best = i;
  }
  ExtremumResult res{ts[best], fs[best], mode, n};

  // Golden-section inside [t_{best-1}, t_{best+1}].
  double a = ts[std::max(best - 1, 0)];
  double b = ts[std::min(best + 1, n - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  res.samples += 2;
  auto consider = [&](double t, double f) {
    if (better(f, res.value) || (f == res.value && t < res.location)) {
      res.location = t;
      res.value = f;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > opts.tol) {
    if (better(f1, f2) || f1 == f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
      consider(x2, f2);
    }
    ++res.samples;
  }
  return res;
}

BoxExtremum box_extremum(const VectorFn& fn, std::span<const Interval> box, ExtremumMode mode,
                         int n_per_axis) {
  if (box.empty()) throw Error("box_extremum: empty box");
  if (n_per_axis < 2) throw Error("box_extremum: need at least 2 points per axis");
  const std::size_t dim = box.size();
  std::vector<int> counts(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (!(box[k].lo <= box[k].hi)) throw Error("box_extremum: interval with lo > hi");
    counts[k] = box[k].lo == box[k].hi ? 1 : n_per_axis;
  }
  auto coord = [&](std::size_t k, int i) {
    if (counts[k] == 1) return box[k].lo;
    if (i == counts[k] - 1) return box[k].hi;
    return box[k].lo + box[k].width() * i / (counts[k] - 1);
  };

  const bool want_max = mode == ExtremumMode::Max;
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  for (std::size_t k = 0; k < dim; ++k) x[k] = coord(k, 0);

  BoxExtremum out;
  out.value = want_max ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
  while (true) {
    const double f = fn(x);
    ++out.samples;
    if (want_max ? f > out.value : f < out.value) {
      out.value = f;
      out.location = x;
    }
    std::size_t k = dim;
    while (k > 0) {
      --k;
      if (++idx[k] < counts[k]) {
        x[k] = coord(k, idx[k]);
        break;
      }
      idx[k] = 0;
      x[k] = coord(k, 0);
      if (k == 0) return out;
    }
  }
}

std::vector<double> sign_roots(const ScalarFn& fn, double lo, double hi, int n_scan) {
  std::vector<double> roots;
  if (!(lo < hi) || n_scan < 1) return roots;
  double x0 = lo, f0 = fn(lo);
  if (f0 == 0.0) roots.push_back(lo);
  for (int i = 1; i <= n_scan; ++i) {
    const double x1 = i == n_scan ? hi : lo + (hi - lo) * i / n_scan;
    const double f1 = fn(x1);
    if (f1 == 0.0) {
      roots.push_back(x1);
    } else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = fn(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace hamcert
