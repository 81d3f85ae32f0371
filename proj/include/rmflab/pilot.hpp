#ifndef RMFLAB_PILOT_HPP
#define RMFLAB_PILOT_HPP

// Pilot-calibrated constants used by band-class verdicts. Regenerate with
//   rmflab calibrate --seeds 200
// which reruns the pilot experiments and prints suggested values; the
// numbers below were frozen from that run (base seed 1).

namespace rmflab::pilot {

// Ratio band for the q = 2/3 chaos moment probe over y in {1e2, 1e3, 1e4}.
inline constexpr double kChaosBandLo = 0.05;
inline constexpr double kChaosBandHi = 20.0;

// Threshold c for the lower-probe statistic max |M_f| * sqrt(loglog T_k);
// the acceptance fraction of (seed, window) pairs above c must be >= 0.95.
inline constexpr double kLowerProbeThreshold = 0.05;

// Envelope for |M_f(x)| / (loglog x)^{61/80} across seeds at desk scale.
inline constexpr double kSimulateStatEnvelope = 10.0;

// Multiplicative slack recorded for the Gaussian-walk barrier event failure
// frequency against exp(-2 C min{sqrt(log2 y0), 1/(1-q)}).
inline constexpr double kBarrierEventSlack = 1.0;

}  // namespace rmflab::pilot

#endif  // RMFLAB_PILOT_HPP
