#pragma once

// Decision thresholds shared by the CLI verdict lines and the test suites.
// Tune here, nowhere else.

namespace bergmanosc::thresholds {

// Log-log slope of a radial profile counts as "equal" to its target within
// this window.
inline constexpr double slope_window = 0.2;
// Tighter window used for the mean-oscillation growth rate in the symbol
// family study.
inline constexpr double slope_window_bmo = 0.15;

// A profile "vanishes at the boundary" when its last sample is below this
// fraction of its first sample (and the slope fit is positive).
inline constexpr double decay_ratio = 0.1;
// A profile counts as unbounded when the last sample exceeds this multiple
// of the first; bounded when max/min stays below it.
inline constexpr double growth_ratio = 5.0;

// Relative change allowed when a sup-over-grid functional is recomputed on
// a doubled grid.
inline constexpr double refinement_gate = 0.05;

// Floor used in ratio tests so constants do not produce 0/0.
inline constexpr double ratio_floor = 1e-12;

// Winding-number safety margins.
inline constexpr double curve_zero_eps = 1e-6;   // curve sample too close to 0
inline constexpr double fredholm_margin = 1e-2;  // scalar symbol: min |curve| below
                                                 // this on the outer radii => not Fredholm
inline constexpr double det_margin = 1e-3;       // block symbol: min |det| margin

// Essential-norm estimate below this counts as "compact" in verdict lines.
inline constexpr double essential_norm_compact = 0.05;

// Relative kernel-coefficient tail mass above this triggers a truncation
// warning in operator Berezin transforms.
inline constexpr double berezin_tail = 1e-6;

// Estimated projection-coefficient tail above this fraction of the value
// fails a Hankel norm computation.
inline constexpr double hankel_tail = 1e-4;

}  // namespace bergmanosc::thresholds
