use super::{SeparationKind, SwapFamily, SwapQuadruple};
use crate::config::EstimatorConfig;
use crate::error::{Error, Result};
use crate::exact::{exact_pagerank, exact_single_target, DEFAULT_EPS};
use crate::par;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub kind: SeparationKind,
    /// min(cfg.c, the family's bound on c).
    pub c_eff: f64,
    /// Pair: max over samples of π_G(s_q,t_q). Gap: π_G(t).
    pub pi_base: f64,
    pub pi_swapped_min: f64,
    /// Pair: 2 c_eff δ. Gap: (1 + 4 c_eff) π_G(t).
    pub threshold: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Exact-oracle check of the family's separation on `samples` uniformly
/// drawn quadruples (drawn from `cfg.seed`).
pub fn verify_separation(fam: &SwapFamily, cfg: &EstimatorConfig, samples: usize) -> Result<SeparationReport> {
    let qs = fam.sample_quads(samples, cfg.seed);
    let c_eff = cfg.c.min(fam.c_bound);
    match fam.separation {
        SeparationKind::Pair => {
            let vals = par::map(&qs, |q| pair_values(fam, cfg, q));
            let vals = vals.into_iter().collect::<Result<Vec<_>>>()?;
            let pi_base = vals.iter().map(|v| v.0).fold(0.0, f64::max);
            let pi_swapped_min = vals.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
            let threshold = 2.0 * c_eff * fam.delta;
            Ok(SeparationReport {
                kind: SeparationKind::Pair,
                c_eff,
                pi_base,
                pi_swapped_min,
                threshold,
                samples,
                passed: pi_base <= DEFAULT_EPS && pi_swapped_min > threshold,
            })
        }
        SeparationKind::PageRankGap => {
            let t = fam.default_target();
            let base = exact_pagerank(&fam.graph, cfg, t, DEFAULT_EPS)?;
            let vals = par::map(&qs, |q| -> Result<f64> {
                let h = fam.swapped(q)?;
                exact_pagerank(&h, cfg, fam.target_for(q), DEFAULT_EPS)
            });
            let vals = vals.into_iter().collect::<Result<Vec<_>>>()?;
            let pi_swapped_min = vals.into_iter().fold(f64::INFINITY, f64::min);
            let threshold = (1.0 + 4.0 * c_eff) * base;
            Ok(SeparationReport {
                kind: SeparationKind::PageRankGap,
                c_eff,
                pi_base: base,
                pi_swapped_min,
                threshold,
                samples,
                passed: pi_swapped_min >= threshold,
            })
        }
    }
}

/// (π_G(s_q,t_q), π_{G_q}(s_q,t_q)).
fn pair_values(fam: &SwapFamily, cfg: &EstimatorConfig, q: &SwapQuadruple) -> Result<(f64, f64)> {
    let s = fam.source_for(q).ok_or_else(|| Error::Precondition(format!("{} has no source", fam.id)))?;
    let t = fam.target_for(q);
    let base = exact_single_target(&fam.graph, cfg, t, DEFAULT_EPS)?.get(s);
    let h = fam.swapped(q)?;
    let swapped = exact_single_target(&h, cfg, t, DEFAULT_EPS)?.get(s);
    Ok((base, swapped))
}
