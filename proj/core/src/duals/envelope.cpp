#include "pdsched/duals/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "pdsched/core/errors.hpp"

namespace pdsched {

namespace {

template <class Num>
Num curve_integral(const DualCurve<Num>& c, const Num& lo, const Num& hi) {
  const auto& g = *c.form.g;
  Num area = g.antiderivative(hi - c.form.shift) -
             g.antiderivative(lo - c.form.shift);
  Num v = c.lambda * (hi - lo) - c.form.scale * area;
  return v;
}

// Value of "curve or zero": index == curves.size() means the zero function.
template <class Num>
Num eval(const std::vector<DualCurve<Num>>& curves, std::size_t i,
         const Num& t) {
  if (i == curves.size()) return Num(0);
  return curves[i](t);
}

// Root of f in (a, b) given f(a), f(b) of opposite strict signs.
template <class Num, class F>
Num find_root(const F& f, const Num& a, const Num& b, const Num& fa,
              const Num& fb, bool& approximate) {
  // Affine guess first; exact whenever f is affine on [a, b].
  Num guess = a + fa * (b - a) / (fa - fb);
  if (a < guess && guess < b && f(guess) == 0) return guess;
  double lo = to_double(a), hi = to_double(b);
  bool lo_positive = fa > 0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi));
       ++i) {
    double mid = 0.5 * (lo + hi);
    Num fm = f(from_double<Num>(mid));
    if (fm == 0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if constexpr (kIsExact<Num>) approximate = true;
  Num r = from_double<Num>(0.5 * (lo + hi));
  if (!(a < r)) r = a;
  if (!(r < b)) r = b;
  return r;
}

}  // namespace

template <class Num>
Num Envelope<Num>::value(const Num& t) const {
  Num best = 0;
  for (const auto& c : curves) {
    if (c.form.start <= t) {
      Num v = c(t);
      if (v > best) best = v;
    }
  }
  return best;
}

template <class Num>
Num Envelope<Num>::integral(const Num& lo, const Num& hi) const {
  Num total = 0;
  for (const auto& p : pieces) {
    if (!p.dominant) continue;
    Num a = num_max(p.start, lo);
    Num b = num_min(p.end, hi);
    if (a < b) {
      Num part = curve_integral(curves[*p.dominant], a, b);
      total += part;
    }
  }
  return total;
}

template <class Num>
Num Envelope<Num>::integral() const {
  return integral(Num(0), horizon());
}

template <class Num>
Num Envelope<Num>::last_positive() const {
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    if (it->dominant) return it->end;
  }
  return Num(0);
}

template <class Num>
std::vector<Num> Envelope<Num>::breakpoints() const {
  std::vector<Num> out;
  for (const auto& p : pieces) out.push_back(p.start);
  if (!pieces.empty()) out.push_back(pieces.back().end);
  return out;
}

template <class Num>
std::optional<std::size_t> Envelope<Num>::dominant_job(const Num& t) const {
  for (const auto& p : pieces) {
    if (p.start <= t && t < p.end) {
      if (!p.dominant) return std::nullopt;
      return curves[*p.dominant].job;
    }
  }
  return std::nullopt;
}

template <class Num>
Envelope<Num> build_envelope(std::vector<DualCurve<Num>> curves,
                             const Num& horizon,
                             const std::vector<Num>& extra_points) {
  Envelope<Num> env;
  env.curves = std::move(curves);
  const auto& cs = env.curves;
  const std::size_t m = cs.size();

  Num T = horizon;
  for (const auto& c : cs) T = num_max(T, c.form.start);
  for (int doubling = 0;; ++doubling) {
    bool positive = false;
    for (const auto& c : cs) {
      if (c(T) > 0) positive = true;
    }
    if (!positive) break;
    if (doubling >= 64) {
      throw Error(ErrorCode::kUnboundedEnvelope,
                  "a dual curve stays positive for all t");
    }
    T = T > 0 ? T * 2 : Num(1);
  }

  std::vector<Num> pts{Num(0), T};
  auto add = [&](const Num& t) {
    if (0 < t && t < T) pts.push_back(t);
  };
  for (const Num& t : extra_points) add(t);
  for (std::size_t i = 0; i < m; ++i) {
    add(cs[i].form.start);
    add(cs[i].form.shift);
    for (const Num& k : cs[i].form.g->knots()) {
      Num t = cs[i].form.shift + k;
      add(t);
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (cs[i].form.g != cs[j].form.g) {
        throw Error(ErrorCode::kUnsupportedShape,
                    "envelope curves must share one cost function");
      }
      auto s = cs[i].form.g->stationary_point(cs[i].form.scale,
                                              cs[i].form.shift,
                                              cs[j].form.scale,
                                              cs[j].form.shift);
      if (s) add(*s);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Every pairwise difference (and every curve against 0) is monotone on
  // each candidate interval, so it changes sign at most once there.
  std::vector<Num> roots;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Num& a = pts[k];
    const Num& b = pts[k + 1];
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < m; ++i) {
      if (cs[i].form.start <= a) active.push_back(i);
    }
    active.push_back(m);
    std::vector<Num> va, vb;
    for (std::size_t i : active) {
      va.push_back(eval(cs, i, a));
      vb.push_back(eval(cs, i, b));
    }
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        Num da = va[x] - va[y];
        Num db = vb[x] - vb[y];
        if ((da > 0 && db < 0) || (da < 0 && db > 0)) {
          std::size_t ix = active[x], iy = active[y];
          auto f = [&](const Num& t) {
            Num d = eval(cs, ix, t) - eval(cs, iy, t);
            return d;
          };
          roots.push_back(find_root(f, a, b, da, db, env.approximate));
        }
      }
    }
  }
  for (const Num& r : roots) pts.push_back(r);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Num& a = pts[k];
    const Num& b = pts[k + 1];
    Num mid = (a + b) / 2;
    std::optional<std::size_t> best;
    Num best_v = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(cs[i].form.start <= a)) continue;
      Num v = cs[i](mid);
      if (v > best_v || (best && v == best_v && cs[i].job < cs[*best].job)) {
        best_v = v;
        best = i;
      }
    }
    if (!env.pieces.empty() && env.pieces.back().dominant == best) {
      env.pieces.back().end = b;
    } else {
      env.pieces.push_back(EnvelopePiece<Num>{a, b, best});
    }
  }
  return env;
}

template struct Envelope<Rational>;
template struct Envelope<double>;
template Envelope<Rational> build_envelope<Rational>(
    std::vector<DualCurve<Rational>>, const Rational&,
    const std::vector<Rational>&);
template Envelope<double> build_envelope<double>(std::vector<DualCurve<double>>,
                                                 const double&,
                                                 const std::vector<double>&);

}  // namespace pdsched
