//! Decibel conventions. Everything inside the engines is linear SI.

/// Thermal noise density in dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

pub fn watts_to_dbm(w: f64) -> f64 {
    linear_to_db(w) + 30.0
}

/// Noise power in dBm over `bandwidth_hz`.
pub fn noise_dbm(bandwidth_hz: f64) -> f64 {
    THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth_hz.log10()
}

/// Noise power in watts over `bandwidth_hz`.
pub fn noise_watts(bandwidth_hz: f64) -> f64 {
    dbm_to_watts(noise_dbm(bandwidth_hz))
}

/// Target SINR for a target rate in bits per channel use.
pub fn rate_to_sinr(rate_bpcu: f64) -> f64 {
    rate_bpcu.exp2() - 1.0
}
