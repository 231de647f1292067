#include "pdsched/duals/procedures.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "pdsched/core/errors.hpp"

namespace pdsched {

namespace {

template <class Num>
Num gamma_at(const CurveForm<Num>& form, const Num& lambda, const Num& t) {
  Num v = lambda - form.scale * form.g->value(t - form.shift);
  return v;
}

template <class Num>
void require_nonnegative(const std::vector<Num>& lambda, const char* who) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (num_lt(lambda[i], Num(0))) {
      throw Error(ErrorCode::kNegativeDual,
                  std::string(who) + ": lambda of the job at position " +
                      std::to_string(i) + " is " + format_num(lambda[i]));
    }
  }
}

template <class Num>
void require_sizes(const std::vector<CurveForm<Num>>& forms,
                   const std::vector<Num>& completions) {
  if (forms.size() != completions.size()) {
    throw Error(ErrorCode::kInvalidInput, "forms and completions differ");
  }
}

}  // namespace

template <class Num>
std::vector<Num> procedure1_assign(const std::vector<CurveForm<Num>>& forms,
                                   const std::vector<Num>& completions) {
  require_sizes(forms, completions);
  const std::size_t k = forms.size();
  std::vector<Num> lambda(k);
  if (k == 0) return lambda;
  lambda[k - 1] = lambda_through(forms[k - 1], completions[k - 1], Num(0));
  for (std::size_t j = k - 1; j-- > 0;) {
    Num target = gamma_at(forms[j + 1], lambda[j + 1], completions[j]);
    lambda[j] = lambda_through(forms[j], completions[j], target);
  }
  require_nonnegative(lambda, "procedure 1");
  return lambda;
}

template <class Num>
std::vector<Num> procedure3_gcp(
    const std::vector<CurveForm<Num>>& forms,
    const std::vector<Num>& completions,
    const std::vector<std::optional<std::size_t>>& successor) {
  require_sizes(forms, completions);
  const std::size_t k = forms.size();
  std::vector<Num> lambda(k);
  for (std::size_t j = k; j-- > 0;) {
    Num target = 0;
    if (successor[j]) {
      std::size_t s = *successor[j];
      if (s <= j || s >= k) {
        throw Error(ErrorCode::kInvalidInput,
                    "successor must finish later than its predecessor");
      }
      if (forms[s].start < completions[j]) {
        target = gamma_at(forms[s], lambda[s], completions[j]);
      } else {
        // The successor arrives at C_j: meet the highest curve of the jobs
        // already waiting instead, so a denser newcomer cannot sink below
        // gamma_j while it runs.
        for (std::size_t i = j + 1; i < k; ++i) {
          if (!(forms[i].start < completions[j])) continue;
          Num v = gamma_at(forms[i], lambda[i], completions[j]);
          if (target < v) target = v;
        }
      }
    }
    lambda[j] = lambda_through(forms[j], completions[j], target);
  }
  require_nonnegative(lambda, "procedure 3");
  return lambda;
}

template <class Num>
std::vector<Num> procedure4_equal_density(
    const std::vector<CurveForm<Num>>& forms,
    const std::vector<Num>& completions, const std::vector<bool>& busy_end) {
  require_sizes(forms, completions);
  const std::size_t k = forms.size();
  std::vector<Num> lambda(k);
  for (std::size_t j = k; j-- > 0;) {
    const CurveForm<Num>& f = forms[j];
    Num floor = lambda_through(f, completions[j], Num(0));
    if (j + 1 == k || busy_end[j]) {
      lambda[j] = floor;
      continue;
    }
    const CurveForm<Num>& next = forms[j + 1];
    if (f.scale != next.scale) {
      throw Error(ErrorCode::kOutOfTheoremScope,
                  "procedure 4 needs equal densities");
    }
    if (next.shift < f.shift) {
      throw Error(ErrorCode::kOutOfTheoremScope,
                  "procedure 4 needs completions in release order");
    }
    Num from = num_max(completions[j], next.start);
    Num inf = f.g->min_shift_difference(f.shift, next.shift, from);
    Num v = lambda[j + 1] + f.scale * inf;
    lambda[j] = v < floor ? floor : v;
  }
  require_nonnegative(lambda, "procedure 4");
  return lambda;
}

template <class Num>
std::vector<Num> procedure5_concave(const std::vector<CurveForm<Num>>& forms,
                                    const std::vector<Num>& completions,
                                    const Num& tau, Procedure5Stats* stats) {
  require_sizes(forms, completions);
  const std::size_t k = forms.size();
  std::vector<Num> lambda(k);
  if (k == 0) return lambda;
  for (std::size_t a = 0; a < k; ++a) {
    lambda[a] = lambda_through(forms[a], completions[k - 1], Num(0));
  }
  // C_{a-1} with C_0 = tau, for a 0-based position.
  auto before = [&](std::size_t a) -> const Num& {
    return a == 0 ? tau : completions[a - 1];
  };
  auto gamma = [&](std::size_t a, const Num& t) {
    return gamma_at(forms[a], lambda[a], t);
  };
  const long cap = 10L * static_cast<long>(k) * static_cast<long>(k);
  long events = 0;
  for (std::size_t j = 1; j < k; ++j) {
    const Num& at = completions[j - 1];
    while (true) {
      std::vector<bool> in(k, false);
      bool any = false;
      for (std::size_t a = 0; a < j; ++a) {
        if (num_lt(lambda[j], gamma(a, at))) {
          in[a] = true;
          any = true;
        }
      }
      if (!any) break;
      // Jobs b < a whose curve already reaches lambda_a at C_{a-1} move
      // together with a.
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t a = j; a-- > 0;) {
          if (!in[a]) continue;
          for (std::size_t b = 0; b < a; ++b) {
            if (!in[b] && num_le(lambda[a], gamma(b, before(a)))) {
              in[b] = true;
              grew = true;
            }
          }
        }
      }
      std::optional<Num> rho;
      auto offer = [&](const Num& v) {
        if (!rho || v < *rho) rho = v;
      };
      for (std::size_t a = 0; a < j; ++a) {
        if (!in[a]) continue;
        Num gap = gamma(a, at) - lambda[j];
        // Same tolerance as membership, so float ties do not stall.
        if (num_lt(lambda[j], gamma(a, at))) offer(gap);
        for (std::size_t b = 0; b < a; ++b) {
          if (in[b]) continue;
          Num slack = lambda[a] - gamma(b, before(a));
          offer(slack);
        }
      }
      if (!rho || !(*rho > 0)) {
        throw Error(ErrorCode::kIterationCapExceeded,
                    "procedure 5 made no progress");
      }
      for (std::size_t a = 0; a < j; ++a) {
        if (in[a]) lambda[a] -= *rho;
      }
      if (++events > cap) {
        throw Error(ErrorCode::kIterationCapExceeded,
                    "procedure 5 exceeded " + std::to_string(cap) + " events");
      }
    }
  }
  if (stats) stats->events = static_cast<int>(events);
  require_nonnegative(lambda, "procedure 5");
  return lambda;
}

template <class Num>
Procedure2Result procedure2_update_past(const Procedure2Input<Num>& input,
                                        std::vector<Num>& lambda) {
  const std::size_t n = input.forms.size();
  Procedure2Result out;
  // owner[a] = position of a's set, or -1 when frozen / unassigned.
  std::vector<long> owner(n, -1);
  out.sets.resize(input.pending.size());
  for (std::size_t i = 0; i < input.pending.size(); ++i) {
    out.sets[i].push_back(input.pending[i]);
    owner[input.pending[i]] = static_cast<long>(i);
  }
  std::vector<bool> frozen(n, false);

  std::vector<std::size_t> order = input.completed;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (input.completion[x] != input.completion[y]) {
      return input.completion[x] > input.completion[y];
    }
    return x < y;
  });

  auto before_gamma = [&](std::size_t a, const Num& t) {
    return gamma_at(input.forms[a], input.before[a], t);
  };
  auto freeze = [&](std::size_t a) {
    frozen[a] = true;
    out.frozen.push_back(a);
  };

  // Smallest lambda_a that keeps a on top of every job waiting while it
  // ran, with gamma_a(C_a) >= 0.
  auto covering_value = [&](std::size_t a) {
    const Num& ca = input.completion[a];
    Num need = lambda_through(input.forms[a], ca, Num(0));
    for (const auto& seg : input.schedule->segments) {
      if (seg.idle() || seg.allocations.front().job != a) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a || input.fresh[b]) continue;
        if (!(input.forms[b].start < seg.end)) continue;
        if (!(seg.start < input.completion[b])) continue;
        Num at = num_max(seg.start, input.forms[b].start);
        Num v = gamma_at(input.forms[b], lambda[b], at);
        if (need < v) need = v;
      }
    }
    return need;
  };

  for (std::size_t a : order) {
    const Num& ca = input.completion[a];
    if (!input.next_scheduled[a]) {
      freeze(a);
      continue;
    }
    Num target = before_gamma(a, ca);
    std::optional<std::size_t> match;
    bool any = false;
    auto earlier = [&](std::size_t x, std::size_t y) {
      if (input.completion[x] != input.completion[y]) {
        return input.completion[x] < input.completion[y];
      }
      return x < y;
    };
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || input.fresh[b]) continue;
      // A job released exactly at C_a never shared a busy period with a.
      if (!(input.forms[b].start < ca)) continue;
      if (!(input.completion[b] > ca)) continue;
      if (owner[b] < 0 && !frozen[b]) continue;
      any = true;
      if (!num_eq(before_gamma(b, ca), target)) continue;
      if (!match || earlier(b, *match)) match = b;
    }
    if (!any) {
      // Nothing released before tau runs after a: its busy period is over.
      freeze(a);
      continue;
    }
    if (!match) {
      if (!input.fallback || !input.schedule) {
        throw Error(ErrorCode::kNoSuccessor,
                    "no curve meets the completed job at index " +
                        std::to_string(a) + " at its completion time");
      }
      Num need = covering_value(a);
      if (input.before[a] < need) lambda[a] = need;
      owner[a] = static_cast<long>(out.sets.size());
      out.sets.push_back({a});
      continue;
    }
    std::size_t b = *match;
    if (frozen[b]) {
      freeze(a);
      continue;
    }
    // b is pending or was handled earlier (C_b > C_a): copy its shift.
    Num delta = lambda[b] - input.before[b];
    lambda[a] = input.before[a] + delta;
    owner[a] = owner[b];
    out.sets[owner[b]].push_back(a);
  }
  return out;
}

#define PDSCHED_INSTANTIATE(Num)                                            \
  template std::vector<Num> procedure1_assign<Num>(                         \
      const std::vector<CurveForm<Num>>&, const std::vector<Num>&);         \
  template std::vector<Num> procedure3_gcp<Num>(                            \
      const std::vector<CurveForm<Num>>&, const std::vector<Num>&,          \
      const std::vector<std::optional<std::size_t>>&);                      \
  template std::vector<Num> procedure4_equal_density<Num>(                  \
      const std::vector<CurveForm<Num>>&, const std::vector<Num>&,          \
      const std::vector<bool>&);                                            \
  template std::vector<Num> procedure5_concave<Num>(                        \
      const std::vector<CurveForm<Num>>&, const std::vector<Num>&,          \
      const Num&, Procedure5Stats*);                                        \
  template Procedure2Result procedure2_update_past<Num>(                    \
      const Procedure2Input<Num>&, std::vector<Num>&);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
