#pragma once

namespace infocap::cortical {

/// Upper bound on the peak-constrained scalar AWGN capacity (unit noise), nats:
/// min{ ln(1 + 2A/sqrt(2 pi e)), 0.5 ln(1 + A^2) }.
double mckellips_bound(double A);

/// (d/2) ln(1 + snr/d): AWGN capacity with total power snr spread over d
/// dimensions, and the trivial bound for a peak constraint with snr = A^2.
double awgn_capacity(double snr, int d = 1);

/// Capacity of the Cauchy(0, gamma) additive channel under the logarithmic
/// constraint with parameter A >= gamma: ln(A / gamma).
double cauchy_log_capacity(double A, double gamma);

/// Capacity readout from the value function: J/alpha + 1 - ln alpha.
double capacity_from_value(double value, double alpha);

}  // namespace infocap::cortical
