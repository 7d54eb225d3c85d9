//! Engine-neutral metric records.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    Analytic,
    MonteCarlo,
}

/// Access scheme and surface type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    StarNoma,
    /// STAR-RIS NOMA evaluated at the optimal split β_T = ½.
    StarNomaMaxBeta,
    /// STAR-RIS NOMA with the typical UE on the transmission side, so β_T
    /// is its own split and the connected UE gets β_R.
    StarNomaTransmit,
    ConvNoma,
    StarOma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    CoverageT,
    CoverageC,
    RateT,
    RateC,
    SumRate,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Analytic => "analytic",
            Engine::MonteCarlo => "mc",
        }
    }
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::StarNoma, Variant::StarNomaMaxBeta, Variant::StarNomaTransmit, Variant::ConvNoma, Variant::StarOma];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::StarNoma => "star_noma",
            Variant::StarNomaMaxBeta => "star_noma_maxbeta",
            Variant::StarNomaTransmit => "star_noma_tx",
            Variant::ConvNoma => "conv_noma",
            Variant::StarOma => "star_oma",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Variant::ALL.into_iter().find(|v| v.as_str() == s)
    }
}

impl Metric {
    pub const ALL: [Metric; 5] = [Metric::CoverageT, Metric::CoverageC, Metric::RateT, Metric::RateC, Metric::SumRate];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::CoverageT => "coverage_t",
            Metric::CoverageC => "coverage_c",
            Metric::RateT => "rate_t",
            Metric::RateC => "rate_c",
            Metric::SumRate => "sum_rate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Metric::ALL.into_iter().find(|m| m.as_str() == s)
    }

    pub fn is_coverage(self) -> bool {
        matches!(self, Metric::CoverageT | Metric::CoverageC)
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Condition attached to a reported value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// SIC cannot succeed at the requested thresholds.
    Infeasible,
    /// A single trial has no spread estimate.
    CiUndefined,
    /// Realizations redrawn because the window held no RIS or no BS.
    EmptyWindowResamples(u64),
    /// Evaluation failed; the value is NaN.
    Error(String),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Infeasible => f.write_str("infeasible"),
            Flag::CiUndefined => f.write_str("ci_undefined"),
            Flag::EmptyWindowResamples(n) => write!(f, "empty_window_resamples={n}"),
            Flag::Error(msg) => write!(f, "error={}", msg.replace([',', ';', '\n'], " ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricResult {
    pub engine: Engine,
    pub variant: Variant,
    pub metric: Metric,
    pub value: f64,
    /// 95% normal-approximation half-width; `None` for analytic values and
    /// single-trial estimates.
    pub ci95: Option<f64>,
    pub trials: u64,
    pub seed: Option<u64>,
    pub flags: Vec<Flag>,
}

impl MetricResult {
    pub fn analytic(variant: Variant, metric: Metric, value: f64) -> Self {
        MetricResult { engine: Engine::Analytic, variant, metric, value, ci95: None, trials: 0, seed: None, flags: Vec::new() }
    }

    pub fn with_flag(mut self, flag: Flag) -> Self {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
            self.flags.sort();
        }
        self
    }

    /// Flags joined with `;`, empty when there are none.
    pub fn flags_string(&self) -> String {
        self.flags.iter().map(Flag::to_string).collect::<Vec<_>>().join(";")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(Variant::parse(v.as_str()), Some(v));
        }
        for m in Metric::ALL {
            assert_eq!(Metric::parse(m.as_str()), Some(m));
        }
        assert_eq!(Metric::parse("coverage"), None);
    }

    #[test]
    fn flags_are_sorted_and_unique() {
        let r = MetricResult::analytic(Variant::StarNoma, Metric::RateT, 0.0)
            .with_flag(Flag::Error("a,b".into()))
            .with_flag(Flag::Infeasible)
            .with_flag(Flag::Infeasible);
        assert_eq!(r.flags_string(), "infeasible;error=a b");
    }
}
