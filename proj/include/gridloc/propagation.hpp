#pragma once

#include "gridloc/errors.hpp"
#include "gridloc/rng.hpp"

namespace gridloc {

// Log-normal shadowing parameters. `a_ref` is the received power one meter
// from the transmitter (dBm), `n` the path loss exponent, `sigma` the standard
// deviation of the dB-domain gaussian term. The reference distance is fixed to
// one meter so `a_ref` keeps its exact meaning; `d0` exists only to carry that
// constant.
struct PathLossModel {
    double a_ref = -45.0;
    double n = 2.0;
    double sigma = 0.0;
    double d0 = 1.0;
    // Round simulated samples to whole dBm, mimicking register granularity.
    bool quantize = false;

    void validate() const;
};

// Hardware register reading: RSS = rssi_val + offset.
struct RegisterReading {
    int rssi_val = 0;
    double offset = -45.0;
};

// Deterministic received signal strength at distance d (meters):
//   rss = a_ref - 10 * n * log10(d)
// Throws DomainError for d <= 0.
double rss_at_distance(const PathLossModel& model, double d);

// rss_at_distance plus a zero-mean gaussian of standard deviation sigma,
// drawn from the caller's generator. sigma == 0 returns the noiseless value
// exactly (no draw is consumed).
double rss_at_distance_noisy(const PathLossModel& model, double d, Rng& rng);

// Inverse of rss_at_distance: d = 10^((a_ref - rss) / (10 n)).
double distance_from_rss(const PathLossModel& model, double rss);

// Register conversion: rssi_val + offset.
double rss_from_register(const RegisterReading& reading);

}  // namespace gridloc
