#ifndef PDSCHED_DUALS_ENVELOPE_HPP_
#define PDSCHED_DUALS_ENVELOPE_HPP_

#include <optional>
#include <vector>

#include "pdsched/duals/curve.hpp"

namespace pdsched {

template <class Num>
struct EnvelopePiece {
  Num start{};
  Num end{};
  // Index into Envelope::curves of the curve attaining the maximum, or
  // empty where the envelope is 0.
  std::optional<std::size_t> dominant;
};

// gamma(t) = max{0, max over curves with start <= t of gamma_j(t)}, stored
// as pieces on [0, horizon]; gamma = 0 past the horizon.
template <class Num>
struct Envelope {
  std::vector<DualCurve<Num>> curves;
  std::vector<EnvelopePiece<Num>> pieces;
  // Set when a crossing point had to be located numerically in exact mode.
  bool approximate = false;

  Num horizon() const { return pieces.empty() ? Num(0) : pieces.back().end; }
  Num value(const Num& t) const;
  // Integral of gamma over [lo, hi].
  Num integral(const Num& lo, const Num& hi) const;
  Num integral() const;
  // Right end of the last piece where gamma is positive (0 if none).
  Num last_positive() const;
  std::vector<Num> breakpoints() const;
  // Job id of the dominant curve at t (left-closed pieces), if any.
  std::optional<std::size_t> dominant_job(const Num& t) const;
};

// Builds the envelope on [0, T] where T >= horizon is doubled until every
// curve is non-positive at T. `extra_points` are added to the breakpoint
// candidates (completion times, release times).
template <class Num>
Envelope<Num> build_envelope(std::vector<DualCurve<Num>> curves,
                             const Num& horizon,
                             const std::vector<Num>& extra_points = {});

}  // namespace pdsched

#endif  // PDSCHED_DUALS_ENVELOPE_HPP_
