//! Run configuration: global flags, `HGW_`-prefixed environment
//! overrides, and their resolution against a session file's `[config]`
//! stanza. Precedence: flag (or env var) > session stanza > default.

use crate::dsl::Session;
use clap::{Args, ValueEnum};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Flags shared by every command. Each one can also be set through the
/// environment variable named after it with the `HGW_` prefix.
#[derive(Args, Debug, Clone, Default)]
pub struct GlobalOpts {
    /// Session file in the stanza DSL
    #[arg(long, global = true, env = "HGW_SESSION")]
    pub session: Option<PathBuf>,

    /// Degree cap D for bounded-degree ideal membership [default: 3]
    #[arg(long, global = true, env = "HGW_DEGREE_CAP")]
    pub degree_cap: Option<usize>,

    /// Truncation level for the free-Hopf tower H(m,n) [default: 3]
    #[arg(long, global = true, env = "HGW_ALPHA_CAP")]
    pub alpha_cap: Option<usize>,

    /// Work over Q(xi_m) instead of Q
    #[arg(long, global = true, env = "HGW_CYCLOTOMIC_ORDER")]
    pub cyclotomic_order: Option<u32>,

    /// Report format [default: text]
    #[arg(long, global = true, env = "HGW_REPORT", value_enum)]
    pub report: Option<ReportFormat>,

    /// Worker threads for independent checks (0 = all cores)
    #[arg(long, global = true, env = "HGW_PARALLEL")]
    pub parallel: Option<usize>,

    /// Monomial budget per echelon basis [default: 500000]
    #[arg(long, global = true, env = "HGW_CAPACITY_MONOMIALS")]
    pub capacity_monomials: Option<usize>,

    /// Seed for randomized property suites [default: 0]
    #[arg(long, global = true, env = "HGW_SEED")]
    pub seed: Option<u64>,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub degree_cap: usize,
    pub alpha_cap: usize,
    pub cyclotomic_order: Option<u32>,
    pub capacity_monomials: usize,
    pub report: ReportFormat,
    pub parallel: Option<usize>,
    pub seed: u64,
}

pub fn resolve(opts: &GlobalOpts, session: &Session) -> Result<Resolved, String> {
    let degree_cap = opts.degree_cap.or(session.degree_cap).unwrap_or(3);
    let alpha_cap = opts.alpha_cap.or(session.alpha_cap).unwrap_or(3);
    let capacity = opts
        .capacity_monomials
        .or(session.capacity_monomials)
        .unwrap_or(500_000);
    if degree_cap == 0 || alpha_cap == 0 || capacity == 0 {
        return Err("caps and capacity must be positive".to_string());
    }
    let order = opts.cyclotomic_order.or(session.cyclotomic_order);
    if order == Some(0) {
        return Err("cyclotomic order must be >= 1".to_string());
    }
    Ok(Resolved {
        degree_cap,
        alpha_cap,
        cyclotomic_order: order,
        capacity_monomials: capacity,
        report: opts.report.unwrap_or(ReportFormat::Text),
        parallel: opts.parallel,
        seed: opts.seed.unwrap_or(0),
    })
}
