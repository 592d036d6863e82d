use num_complex::Complex64;

use super::chain;
use crate::error::Result;
use crate::exec::Exec;
use crate::observables::correlation::normalized_g2;
use crate::observables::grid::FrequencyGrid;
use crate::params::{DriveConfig, EmitterParams, Flags, ValidityFlag};
use crate::response::TwoPhotonResponse;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub n: usize,
    pub g2_zero: f64,
    /// ψ_incoh(τ = 0) at the actual drive.
    pub psi_incoh_zero: Complex64,
    pub psi_coh: Complex64,
    pub flags: Flags,
}

/// g²(0) of the chain described by `drive` for each chain length in `ns`.
/// Lengths are sorted and deduplicated; points are evaluated in parallel but
/// returned in order.
pub fn g2_zero_sweep(
    p: &EmitterParams,
    drive: &DriveConfig,
    ns: &[usize],
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<Vec<SweepPoint>> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    exec.map_slice(&ns, |&n| {
        let d = drive.with_emitters(n);
        let resp = chain(p, &d, grid, Exec::Sequential)?;
        let zero = resp.incoherent_zero_per_drive(*grid, Exec::Sequential)?;
        let omega = resp.reference_drive();
        Ok(SweepPoint {
            n,
            g2_zero: normalized_g2(resp.alpha_out_per_drive(), zero),
            psi_incoh_zero: omega * omega * zero,
            psi_coh: resp.psi_coh().value,
            flags: resp.flags(),
        })
    })
    .into_iter()
    .collect()
}

/// The sweep point with the smallest finite g²(0), skipping chains where some
/// β′ reached 1/2; ties go to the smaller N.
pub fn antibunching_point(points: &[SweepPoint]) -> Option<&SweepPoint> {
    points
        .iter()
        .filter(|pt| {
            pt.g2_zero.is_finite() && !pt.flags.contains(ValidityFlag::LargeEffectiveCoupling)
        })
        .fold(None, |best: Option<&SweepPoint>, pt| match best {
            Some(b) if b.g2_zero < pt.g2_zero || (b.g2_zero == pt.g2_zero && b.n <= pt.n) => {
                Some(b)
            }
            _ => Some(pt),
        })
}
