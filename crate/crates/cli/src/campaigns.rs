//! Campaign runners: deterministic sampling loops around the core checks,
//! aggregated into verification reports.

use anyhow::{anyhow, bail, Result};
use num_complex::Complex;
use serde_json::json;

use nineteen_vertex_core::couplings::Couplings;
use nineteen_vertex_core::geometry::{
    certify_singular_points, map_phi, map_phi_inv, map_psi, map_psi_inv, map_sigma, map_sigma_inv,
};
use nineteen_vertex_core::hamiltonian::{
    cfr_reduction, derivative_consistency, solve_tangent, symmetry_residual, two_body_matrix,
    two_body_spin_form,
};

use nineteen_vertex_core::lax::{build_lax, lax_from_spectral};
use nineteen_vertex_core::matrix::permutator;
use nineteen_vertex_core::projective::projective_eq;
use nineteen_vertex_core::rmatrix::{
    r_from_k3, r_from_spectral, r_from_threefold, regularity_check, rrr_residual, unitarity_check,
    ybe_residual,
};
use nineteen_vertex_core::sample::{
    sample_k3_quadext, sample_spectral, small_rational, SplitMix64,
};
use nineteen_vertex_core::scalar::{sq, QuadExt, Scalar};
use nineteen_vertex_core::transfer::{build_transfer, transfer_commutator, Budget};
use nineteen_vertex_core::variety::{
    aux_cminus_sq, cubic_t1, divisor_ratios, hypersurface5_on_weights, psi2, surface_s, surface_s1,
    threefold, DivisorStatus,
};
use nineteen_vertex_core::weights::{
    weights_from_k3, weights_from_spectral, weights_from_threefold, K3Point, SpectralPoint,
    ThreefoldPoint,
};
use nineteen_vertex_core::Rat;

use crate::config::{Backend, CampaignConfig, Chart};
use crate::jsonio::{rat_coords, rat_to_c64};
use crate::report::{ReportBuilder, VerificationReport};

type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyKind {
    Ybe,
    Rrr,
    Unitarity,
    Regularity,
    Divisors,
    Variety,
}

fn builder(check: &str, cfg: &CampaignConfig) -> ReportBuilder {
    ReportBuilder::new(
        check,
        &cfg.backend.to_string(),
        Some(cfg.chart.to_string()),
        cfg.couplings.clone(),
        cfg.seed,
        cfg.tolerance,
    )
}

/// Builder for checks defined on spectral-chart points only.
fn spectral_builder(check: &str, cfg: &CampaignConfig) -> ReportBuilder {
    let mut rep = ReportBuilder::new(
        check,
        &cfg.backend.to_string(),
        Some(Chart::Spectral.to_string()),
        cfg.couplings.clone(),
        cfg.seed,
        cfg.tolerance,
    );
    if cfg.chart != Chart::Spectral {
        rep.note("this check is defined on spectral-chart points");
    }
    rep
}

fn couplings_c64(cfg: &CampaignConfig) -> Result<Couplings<C64>> {
    let (l1, l2) = cfg.rational_couplings()?;
    Ok(Couplings::derive(rat_to_c64(&l1), rat_to_c64(&l2))?)
}

fn spectral_to_c64(p: &SpectralPoint<Rat>) -> SpectralPoint<C64> {
    SpectralPoint {
        coords: [
            rat_to_c64(&p.coords[0]),
            rat_to_c64(&p.coords[1]),
            rat_to_c64(&p.coords[2]),
            rat_to_c64(&p.coords[3]),
        ],
    }
}

fn point_json(p: &SpectralPoint<Rat>) -> serde_json::Value {
    rat_coords(&p.coords)
}

/// Pass/fail plus a report magnitude for one residual; float residuals are
/// scaled by the operand norms so they compare directly to the tolerance.
fn verdict<K: Scalar>(residual: &K, tol: f64, scale: f64) -> (bool, f64) {
    if K::EXACT {
        (residual.is_zero(), residual.magnitude())
    } else {
        let m = residual.magnitude() / scale.max(1.0);
        (m <= tol, m)
    }
}

pub fn run_verify(kind: VerifyKind, cfg: &CampaignConfig) -> Result<VerificationReport> {
    match kind {
        VerifyKind::Ybe => run_ybe(cfg),
        VerifyKind::Rrr => run_rrr(cfg),
        VerifyKind::Unitarity => run_unitarity(cfg),
        VerifyKind::Regularity => run_regularity(cfg),
        VerifyKind::Divisors => run_divisors(cfg),
        VerifyKind::Variety => run_variety(cfg),
    }
}

fn run_ybe(cfg: &CampaignConfig) -> Result<VerificationReport> {
    match cfg.chart {
        Chart::K3 => run_ybe_k3(cfg),
        _ => run_ybe_rational(cfg),
    }
}

/// YBE on the spectral or threefold route.
fn run_ybe_rational(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let cpl_f = couplings_c64(cfg)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = builder("ybe", cfg);
    for _ in 0..cfg.samples {
        let d1 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        let d2 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        rep.skip_samples(d1.skipped + d2.skipped);
        let input = json!([point_json(&d1.value), point_json(&d2.value)]);
        let (passed, magnitude, detail) = match cfg.backend {
            Backend::Exact => {
                let (res, detail) = ybe_pair_exact(cfg.chart, &d1.value, &d2.value, &cpl)?;
                let (p, m) = verdict(&res, cfg.tolerance, 1.0);
                (p, m, detail)
            }
            Backend::Float => {
                let p1 = spectral_to_c64(&d1.value);
                let p2 = spectral_to_c64(&d2.value);
                let r = r_from_spectral(&p1, &p2, &cpl_f)?;
                let l1 = lax_from_spectral(&p1, &cpl_f)?;
                let l2 = lax_from_spectral(&p2, &cpl_f)?;
                let scale = r.matrix.max_abs().magnitude()
                    * l1.matrix.max_abs().magnitude()
                    * l2.matrix.max_abs().magnitude();
                let res = ybe_residual(&r, &l1, &l2);
                let (p, m) = verdict(&res, cfg.tolerance, scale);
                (p, m, "float spectral route".to_string())
            }
        };
        rep.record(passed, magnitude, input, detail);
    }
    Ok(rep.finish())
}

fn ybe_pair_exact(
    chart: Chart,
    p1: &SpectralPoint<Rat>,
    p2: &SpectralPoint<Rat>,
    cpl: &Couplings<Rat>,
) -> Result<(Rat, String)> {
    let w1 = weights_from_spectral(p1, cpl)?;
    let w2 = weights_from_spectral(p2, cpl)?;
    let l1 = build_lax(&w1);
    let l2 = build_lax(&w2);
    match chart {
        Chart::Spectral => {
            let r = r_from_spectral(p1, p2, cpl)?;
            Ok((ybe_residual(&r, &l1, &l2), "spectral route".into()))
        }
        Chart::Threefold => {
            let r = r_from_threefold(&w1, &w2, cpl)?;
            Ok((ybe_residual(&r, &l1, &l2), "threefold route".into()))
        }
        Chart::K3 => unreachable!("dispatched separately"),
    }
}

/// YBE on the quartic-surface route, exactly in a quadratic-extension
/// tower, or in complex floats.
fn run_ybe_k3(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = builder("ybe", cfg);
    rep.note("quartic-surface chart: c- = c+ weights");
    for _ in 0..cfg.samples {
        let d1 = sample_k3_quadext(&mut rng, &cpl, cfg.bound.min(8))?;
        let d2 = sample_k3_quadext(&mut rng, &cpl, cfg.bound.min(8))?;
        rep.skip_samples(d1.skipped + d2.skipped);
        let input = json!([
            quadext_coords_json(&d1.value),
            quadext_coords_json(&d2.value)
        ]);
        match cfg.backend {
            Backend::Exact => {
                let (q1, q2) = lift_k3_pair(&d1.value, &d2.value);
                let cpl_t = cpl.convert(|x| Tower::base(QuadExt::base(x.clone())));
                let w1 = weights_from_k3(&q1, &cpl_t)?;
                let w2 = weights_from_k3(&q2, &cpl_t)?;
                let r = r_from_k3(&q1, &q2, &cpl_t)?;
                let res = ybe_residual(&r, &build_lax(&w1), &build_lax(&w2));
                let (p, m) = verdict(&res, cfg.tolerance, 1.0);
                rep.record(p, m, input, "exact quadratic-extension tower");
            }
            Backend::Float => {
                let cpl_f = couplings_c64(cfg)?;
                let q1 = k3_to_c64(&d1.value);
                let q2 = k3_to_c64(&d2.value);
                let w1 = weights_from_k3(&q1, &cpl_f)?;
                let w2 = weights_from_k3(&q2, &cpl_f)?;
                let r = r_from_k3(&q1, &q2, &cpl_f)?;
                let scale = r.matrix.max_abs().magnitude()
                    * build_lax(&w1).matrix.max_abs().magnitude()
                    * build_lax(&w2).matrix.max_abs().magnitude();
                let res = ybe_residual(&r, &build_lax(&w1), &build_lax(&w2));
                let (p, m) = verdict(&res, cfg.tolerance, scale);
                rep.record(p, m, input, "float quartic-surface route");
            }
        }
    }
    Ok(rep.finish())
}

type Ext = QuadExt<Rat>;
type Tower = QuadExt<Ext>;

fn quadext_coords_json(p: &K3Point<Ext>) -> serde_json::Value {
    serde_json::Value::Array(
        p.coords
            .iter()
            .map(|c| json!({"u": c.u.to_string(), "v": c.v.to_string()}))
            .collect(),
    )
}

/// Lifts two single-extension points into the common biquadratic tower.
fn lift_k3_pair(p1: &K3Point<Ext>, p2: &K3Point<Ext>) -> (K3Point<Tower>, K3Point<Tower>) {
    let lift_first = |c: &Ext| Tower::base(c.clone());
    // the second point's root becomes the tower's outer root
    let outer_min = p2
        .coords
        .iter()
        .find_map(|c| c.min_poly().cloned())
        .map(|m| Tower::sqrt_minpoly(Ext::base(-m.q.clone())));
    let lift_second = |c: &Ext| match (&outer_min, c.min_poly()) {
        (Some(min), Some(_)) => Tower::new(Ext::base(c.u.clone()), Ext::base(c.v.clone()), min),
        _ => Tower::base(Ext::base(c.u.clone())),
    };
    let q1 = K3Point {
        coords: core::array::from_fn(|i| lift_first(&p1.coords[i])),
    };
    let q2 = K3Point {
        coords: core::array::from_fn(|i| lift_second(&p2.coords[i])),
    };
    (q1, q2)
}

/// Embeds a single-extension point into complex floats. Exact membership
/// was certified at sampling time, so no float re-check is applied.
fn k3_to_c64(p: &K3Point<Ext>) -> K3Point<C64> {
    let root_value = p
        .coords
        .iter()
        .find_map(|c| c.min_poly().cloned())
        .map(|m| {
            // r^2 + p r + q = 0 with p = 0 here: r = sqrt(-q)
            let d = rat_to_c64(&(-m.q.clone()));
            d.sqrt()
        })
        .unwrap_or_else(|| C64::new(0.0, 0.0));
    let coords = core::array::from_fn(|i| {
        let c = &p.coords[i];
        rat_to_c64(&c.u) + rat_to_c64(&c.v) * root_value
    });
    K3Point { coords }
}

fn run_rrr(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let cpl_f = couplings_c64(cfg)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = spectral_builder("rrr", cfg);
    for _ in 0..cfg.samples {
        let d1 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        let d2 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        let d3 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        rep.skip_samples(d1.skipped + d2.skipped + d3.skipped);
        let input = json!([
            point_json(&d1.value),
            point_json(&d2.value),
            point_json(&d3.value)
        ]);
        match cfg.backend {
            Backend::Exact => {
                let res = rrr_residual(&d1.value, &d2.value, &d3.value, &cpl)?;
                let (p, m) = verdict(&res, cfg.tolerance, 1.0);
                rep.record(p, m, input, "R12 R13 R23 = R23 R13 R12");
            }
            Backend::Float => {
                let (q1, q2, q3) = (
                    spectral_to_c64(&d1.value),
                    spectral_to_c64(&d2.value),
                    spectral_to_c64(&d3.value),
                );
                let scale = r_from_spectral(&q1, &q2, &cpl_f)?
                    .matrix
                    .max_abs()
                    .magnitude()
                    * r_from_spectral(&q1, &q3, &cpl_f)?
                        .matrix
                        .max_abs()
                        .magnitude()
                    * r_from_spectral(&q2, &q3, &cpl_f)?
                        .matrix
                        .max_abs()
                        .magnitude();
                let res = rrr_residual(&q1, &q2, &q3, &cpl_f)?;
                let (p, m) = verdict(&res, cfg.tolerance, scale);
                rep.record(p, m, input, "R12 R13 R23 = R23 R13 R12 (float)");
            }
        }
    }
    Ok(rep.finish())
}

fn run_unitarity(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let cpl_f = couplings_c64(cfg)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = spectral_builder("unitarity", cfg);
    for _ in 0..cfg.samples {
        let d1 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        let d2 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        rep.skip_samples(d1.skipped + d2.skipped);
        let input = json!([point_json(&d1.value), point_json(&d2.value)]);
        match cfg.backend {
            Backend::Exact => match unitarity_check(&d1.value, &d2.value, &cpl) {
                Ok(rho) => {
                    let swapped = unitarity_check(&d2.value, &d1.value, &cpl)?;
                    let sym = rho.clone() - swapped;
                    rep.record(
                        sym.is_zero(),
                        0.0,
                        input,
                        format!("rho = {rho}, argument-swap symmetric"),
                    );
                }
                Err(e) => rep.record(false, f64::INFINITY, input, e.to_string()),
            },
            Backend::Float => {
                let p1 = spectral_to_c64(&d1.value);
                let p2 = spectral_to_c64(&d2.value);
                let r12 = r_from_spectral(&p1, &p2, &cpl_f)?;
                let r21 = r_from_spectral(&p2, &p1, &cpl_f)?;
                let perm = permutator::<C64>(3);
                let prod = r12.matrix.mul(&perm).mul(&r21.matrix).mul(&perm);
                let rho = *prod.get(0, 0);
                let mut off = 0.0f64;
                for r in 0..9 {
                    for c in 0..9 {
                        let want = if r == c { rho } else { C64::new(0.0, 0.0) };
                        off = off.max((prod.get(r, c) - want).norm());
                    }
                }
                let scale = prod.max_abs().magnitude().max(1.0);
                rep.record(
                    off <= cfg.tolerance * scale,
                    off,
                    input,
                    format!("rho = {rho} (float)"),
                );
            }
        }
    }
    Ok(rep.finish())
}

fn run_regularity(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let cpl_f = couplings_c64(cfg)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = spectral_builder("regularity", cfg);
    for _ in 0..cfg.samples {
        let d = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        rep.skip_samples(d.skipped);
        let input = point_json(&d.value);
        match cfg.backend {
            Backend::Exact => match regularity_check(&d.value, &cpl) {
                Ok(xi) => {
                    let unit = xi.clone() - <Rat as Scalar>::one();
                    rep.record(unit.is_zero(), 0.0, input, format!("xi = {xi}"));
                }
                Err(e) => rep.record(false, f64::INFINITY, input, e.to_string()),
            },
            Backend::Float => {
                let p = spectral_to_c64(&d.value);
                let r = r_from_spectral(&p, &p, &cpl_f)?;
                let res = r.matrix.sub(&permutator::<C64>(3)).max_abs().magnitude();
                rep.record(
                    res <= cfg.tolerance,
                    res,
                    input,
                    "R(w,w) = P with xi = 1 (float)",
                );
            }
        }
    }
    Ok(rep.finish())
}

fn run_divisors(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = builder("divisors", cfg);
    if cfg.backend == Backend::Float {
        rep.note("divisor constancy is an exact statement; running exactly");
    }
    let cpl_ext = cpl.convert(|x| Ext::base(x.clone()));
    let mut skipped_ratios = 0u32;
    for _ in 0..cfg.samples {
        let (checks, input) = match cfg.chart {
            Chart::K3 => {
                let d = sample_k3_quadext(&mut rng, &cpl, cfg.bound.min(8))?;
                rep.skip_samples(d.skipped);
                let w = weights_from_k3(&d.value, &cpl_ext)?;
                (divisor_ratios(&w, &cpl_ext), quadext_coords_json(&d.value))
            }
            _ => {
                let d = sample_spectral(&mut rng, &cpl, cfg.bound)?;
                rep.skip_samples(d.skipped);
                let w = weights_from_spectral(&d.value, &cpl)?.convert(|x| Ext::base(x.clone()));
                (divisor_ratios(&w, &cpl_ext), point_json(&d.value))
            }
        };
        let mut mismatched = Vec::new();
        for check in &checks {
            match check.status() {
                DivisorStatus::Match => {}
                DivisorStatus::Skipped => skipped_ratios += 1,
                DivisorStatus::Mismatch => mismatched.push(check.name),
            }
        }
        rep.record(
            mismatched.is_empty(),
            if mismatched.is_empty() {
                0.0
            } else {
                f64::INFINITY
            },
            input,
            if mismatched.is_empty() {
                "all ten divisor ratios equal their couplings".to_string()
            } else {
                format!("mismatched ratios: {mismatched:?}")
            },
        );
    }
    if skipped_ratios > 0 {
        rep.note(format!(
            "{skipped_ratios} individual ratios skipped on vanishing denominators"
        ));
    }
    Ok(rep.finish())
}

fn run_variety(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = builder("variety", cfg);
    if cfg.backend == Backend::Float {
        rep.note("variety membership is an exact statement; running exactly");
    }
    let cpl_ext = cpl.convert(|x| Ext::base(x.clone()));
    for _ in 0..cfg.samples {
        let (w, input) = match cfg.chart {
            Chart::K3 => {
                let d = sample_k3_quadext(&mut rng, &cpl, cfg.bound.min(8))?;
                rep.skip_samples(d.skipped);
                (
                    weights_from_k3(&d.value, &cpl_ext)?,
                    quadext_coords_json(&d.value),
                )
            }
            _ => {
                let d = sample_spectral(&mut rng, &cpl, cfg.bound)?;
                rep.skip_samples(d.skipped);
                let w = weights_from_spectral(&d.value, &cpl)?;
                (w.convert(|x| Ext::base(x.clone())), point_json(&d.value))
            }
        };
        let coords = w.threefold_coords();
        let t = threefold(&cpl_ext, &coords);
        let h5 = hypersurface5_on_weights(&cpl_ext, &w);
        let foot = w.footnote_identity_residual();
        let aux = aux_cminus_sq(&cpl_ext, &coords[0], &coords[1], &coords[2], &coords[3])?;
        let aux_res = aux - sq(&coords[4]);
        let all = [
            ("threefold", t),
            ("hypersurface", h5),
            ("footnote", foot),
            ("aux_elimination", aux_res),
        ];
        let bad: Vec<&str> = all
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(n, _)| *n)
            .collect();
        rep.record(
            bad.is_empty(),
            if bad.is_empty() { 0.0 } else { f64::INFINITY },
            input,
            if bad.is_empty() {
                "T = 0, quintic = 0, b+b- = bbar+bbar-, aux = c-^2".to_string()
            } else {
                format!("violated: {bad:?}")
            },
        );
    }
    Ok(rep.finish())
}

/// Emits sampled points and their weight sets as JSON, tagged with chart
/// provenance and couplings.
pub fn run_sample(cfg: &CampaignConfig, emit_lax: bool) -> Result<serde_json::Value> {
    let cpl = cfg.exact_couplings()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut records = Vec::new();
    for _ in 0..cfg.samples {
        let record = match cfg.chart {
            Chart::Spectral => {
                let d = sample_spectral(&mut rng, &cpl, cfg.bound)?;
                let w = weights_from_spectral(&d.value, &cpl)?;
                let mut rec = json!({
                    "chart": "spectral",
                    "point": point_json(&d.value),
                    "weights": crate::jsonio::weights_json(&w),
                });
                if emit_lax {
                    rec["lax"] = crate::jsonio::rat_matrix_json(&build_lax(&w).matrix);
                }
                rec
            }
            Chart::Threefold => {
                let d = sample_spectral(&mut rng, &cpl, cfg.bound)?;
                let w = weights_from_spectral(&d.value, &cpl)?;
                let tp = ThreefoldPoint::new(w.threefold_coords(), &cpl)
                    .map_err(|e| anyhow!(e.to_string()))?;
                let w2 = weights_from_threefold(&tp, &cpl)?;
                let mut rec = json!({
                    "chart": "threefold",
                    "point": rat_coords(&tp.coords),
                    "weights": crate::jsonio::weights_json(&w2),
                });
                if emit_lax {
                    rec["lax"] = crate::jsonio::rat_matrix_json(&build_lax(&w2).matrix);
                }
                rec
            }
            Chart::K3 => {
                let d = sample_k3_quadext(&mut rng, &cpl, cfg.bound.min(8))?;
                let qf = k3_to_c64(&d.value);
                let cpl_f = couplings_c64(cfg)?;
                let w = weights_from_k3(&qf, &cpl_f)?;
                let weights: serde_json::Map<String, serde_json::Value> =
                    nineteen_vertex_core::weights::WEIGHT_NAMES
                        .iter()
                        .zip(w.to_vec().iter())
                        .map(|(n, v)| (n.to_string(), crate::jsonio::complex_pair(v)))
                        .collect();
                let disc = d
                    .value
                    .coords
                    .iter()
                    .find_map(|c| c.min_poly().cloned())
                    .map(|m| (-m.q.clone()).to_string());
                let mut rec = json!({
                    "chart": "k3",
                    "point": quadext_coords_json(&d.value),
                    "weights": weights,
                });
                if let Some(dsc) = disc {
                    rec["extension_discriminant"] = json!(dsc);
                }
                if emit_lax {
                    rec["lax"] = crate::jsonio::c64_matrix_json(&build_lax(&w).matrix);
                }
                rec
            }
        };
        records.push(record);
    }
    Ok(json!({
        "artifact_version": crate::report::ARTIFACT_VERSION,
        "couplings": cfg.couplings,
        "chart": cfg.chart.to_string(),
        "seed": cfg.seed,
        "samples": records,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GeoMap {
    Phi,
    Psi,
    Sigma,
    All,
}

pub fn run_geometry_roundtrip(map: GeoMap, cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = ReportBuilder::new(
        "geometry_roundtrip",
        "exact",
        None,
        cfg.couplings.clone(),
        cfg.seed,
        cfg.tolerance,
    );
    if cfg.backend == Backend::Float {
        rep.note("round trips are certified exactly");
    }
    let maps: &[GeoMap] = match map {
        GeoMap::All => &[GeoMap::Phi, GeoMap::Psi, GeoMap::Sigma],
        GeoMap::Phi => &[GeoMap::Phi],
        GeoMap::Psi => &[GeoMap::Psi],
        GeoMap::Sigma => &[GeoMap::Sigma],
    };
    rep.details(
        json!({ "maps": maps.iter().map(|m| format!("{m:?}").to_lowercase()).collect::<Vec<_>>() }),
    );
    for &m in maps {
        for _ in 0..cfg.samples {
            match m {
                GeoMap::Phi => {
                    let d = sample_spectral(&mut rng, &cpl, cfg.bound)?;
                    rep.skip_samples(d.skipped);
                    let w = weights_from_spectral(&d.value, &cpl)?;
                    let tp = ThreefoldPoint::new(w.threefold_coords(), &cpl)
                        .map_err(|e| anyhow!(e.to_string()))?;
                    let img = map_phi(&cpl, &tp)?;
                    let contained = cubic_t1(&cpl, &img).is_zero();
                    let back = map_phi_inv(&cpl, &img)?;
                    let round = projective_eq(&back, &tp.coords)?;
                    rep.record(
                        contained && round,
                        0.0,
                        point_json(&d.value),
                        "phi: image on cubic, inverse round trip",
                    );
                }
                GeoMap::Psi => {
                    let q = loop {
                        let cand = [
                            small_rational(&mut rng, cfg.bound),
                            small_rational(&mut rng, cfg.bound),
                            small_rational(&mut rng, cfg.bound),
                            small_rational(&mut rng, cfg.bound),
                        ];
                        if !psi2(&cpl, &cand[0], &cand[1]).is_zero() {
                            break cand;
                        }
                        rep.skip_samples(1);
                    };
                    let img = map_psi(&cpl, &q)?;
                    let contained = cubic_t1(&cpl, &img).is_zero();
                    let back = map_psi_inv(&img)?;
                    let round = projective_eq(&back, &q)?;
                    rep.record(
                        contained && round,
                        0.0,
                        rat_coords(&q),
                        "psi: image on cubic, projection round trip",
                    );
                }
                GeoMap::Sigma => {
                    // degree-seven surface points come from the quartic
                    // chart through the inverse map
                    let d = sample_k3_quadext(&mut rng, &cpl, cfg.bound.min(8))?;
                    rep.skip_samples(d.skipped);
                    let cpl_e = cpl.convert(|x| Ext::base(x.clone()));
                    let s_pt = match map_sigma_inv(&cpl_e, &d.value.coords) {
                        Ok(p) => p,
                        Err(_) => {
                            rep.skip_samples(1);
                            continue;
                        }
                    };
                    let on_s = surface_s(&cpl_e, &s_pt).is_zero();
                    let fwd = map_sigma(&cpl_e, &s_pt)?;
                    let on_s1 = surface_s1(&cpl_e, &fwd).is_zero();
                    let round = projective_eq(&fwd, &d.value.coords)?;
                    let back = map_sigma_inv(&cpl_e, &fwd)?;
                    let round2 = projective_eq(&back, &s_pt)?;
                    rep.record(
                        on_s && on_s1 && round && round2,
                        0.0,
                        quadext_coords_json(&d.value),
                        "sigma: containment both ways, both round trips",
                    );
                }
                GeoMap::All => unreachable!(),
            }
        }
    }
    Ok(rep.finish())
}

pub fn run_geometry_singular(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let cpl_f = couplings_c64(cfg)?;
    let mut rep = ReportBuilder::new(
        "geometry_singular",
        "exact+float",
        None,
        cfg.couplings.clone(),
        cfg.seed,
        cfg.tolerance,
    );
    for cert in certify_singular_points(&cpl, &cpl_f) {
        let passed = if cert.exact {
            cert.exactly_zero
        } else {
            cert.max_abs_gradient < cfg.tolerance
        };
        rep.record(
            passed,
            cert.max_abs_gradient,
            json!(cert.point),
            if cert.exact {
                "gradient exactly zero"
            } else {
                "gradient below tolerance (complex float)"
            },
        );
    }
    Ok(rep.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TransferCheck {
    Commute,
    Spectrum,
}

pub fn run_transfer_commute(cfg: &CampaignConfig, sites: usize) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let cpl_f = couplings_c64(cfg)?;
    let budget = Budget {
        exact_max_sites: cfg.exact_max_sites,
        float_max_sites: cfg.float_max_sites,
    };
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = builder("transfer_commute", cfg);
    rep.note(format!("sites = {sites}"));
    let dims: Vec<(i64, usize)> = nineteen_vertex_core::transfer::sectors(sites)
        .iter()
        .map(|(m, states)| (*m, states.len()))
        .collect();
    rep.details(json!({ "sector_dimensions": dims }));
    for _ in 0..cfg.samples {
        let d1 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        let d2 = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        rep.skip_samples(d1.skipped + d2.skipped);
        let input = json!([point_json(&d1.value), point_json(&d2.value)]);
        match cfg.backend {
            Backend::Exact => {
                let l1 = lax_from_spectral(&d1.value, &cpl)?;
                let l2 = lax_from_spectral(&d2.value, &cpl)?;
                let res = transfer_commutator(&l1, &l2, sites, budget)?;
                let (p, m) = verdict(&res, cfg.tolerance, 1.0);
                rep.record(p, m, input, format!("[T_{sites}(w), T_{sites}(w')] = 0"));
            }
            Backend::Float => {
                let l1 = lax_from_spectral(&spectral_to_c64(&d1.value), &cpl_f)?;
                let l2 = lax_from_spectral(&spectral_to_c64(&d2.value), &cpl_f)?;
                let t1 = build_transfer(&l1, sites, true, budget)?;
                let t2 = build_transfer(&l2, sites, true, budget)?;
                let rel = crate::floatops::blocked_commutator_relative(&t1, &t2)?;
                rep.record(
                    rel <= cfg.tolerance,
                    rel,
                    input,
                    format!("relative commutator residual, {sites} sites"),
                );
            }
        }
    }
    Ok(rep.finish())
}

pub fn run_transfer_spectrum(cfg: &CampaignConfig, sites: usize) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let cpl_f = couplings_c64(cfg)?;
    let budget = Budget {
        exact_max_sites: cfg.exact_max_sites,
        float_max_sites: cfg.float_max_sites,
    };
    let mut rng = SplitMix64::new(cfg.seed);
    let mut rep = builder("transfer_spectrum", cfg);
    if cfg.backend == Backend::Exact {
        rep.note("spectra are a float-backend check; running in floats");
    }
    let npoints = cfg.samples.clamp(1, 8) as usize;
    let mut laxes = Vec::with_capacity(npoints);
    let mut inputs = Vec::new();
    for _ in 0..npoints {
        let d = sample_spectral(&mut rng, &cpl, cfg.bound)?;
        rep.skip_samples(d.skipped);
        inputs.push(point_json(&d.value));
        laxes.push(lax_from_spectral(&spectral_to_c64(&d.value), &cpl_f)?);
    }
    let tol = if cfg.tolerance == 1e-10 {
        1e-8
    } else {
        cfg.tolerance
    };
    let outcome = crate::spectrum::simultaneous_spectrum(&laxes, sites, cfg.seed, budget)?;
    rep.note(format!(
        "{} sectors, {} flagged non-diagonalizable",
        outcome.sectors.len(),
        outcome.flagged_sectors
    ));
    rep.details(serde_json::to_value(&outcome)?);
    rep.record(
        outcome.max_offdiagonal <= tol,
        outcome.max_offdiagonal,
        serde_json::Value::Array(inputs),
        format!(
            "common eigenbasis: max off-diagonal residual over {} points, {} sites",
            outcome.points, outcome.sites
        ),
    );
    Ok(rep.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum HamiltonianCheck {
    Equivalence,
    Derivative,
    Hermiticity,
    Cfr,
}

pub struct HamiltonianArgs {
    pub check: HamiltonianCheck,
    pub tangent: Option<[Rat; 4]>,
    pub twist: Option<Rat>,
    pub sites: usize,
    pub tau_p: Rat,
    pub tau_3: Rat,
    pub theta: Rat,
}

pub fn run_hamiltonian(args: &HamiltonianArgs, cfg: &CampaignConfig) -> Result<VerificationReport> {
    let cpl = cfg.exact_couplings()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let check_name = match args.check {
        HamiltonianCheck::Equivalence => "hamiltonian_equivalence",
        HamiltonianCheck::Derivative => "hamiltonian_derivative",
        HamiltonianCheck::Hermiticity => "hamiltonian_hermiticity",
        HamiltonianCheck::Cfr => "hamiltonian_cfr",
    };
    let mut rep = ReportBuilder::new(
        check_name,
        "exact",
        None,
        cfg.couplings.clone(),
        cfg.seed,
        cfg.tolerance,
    );

    let draw_tangent = |rng: &mut SplitMix64| -> [Rat; 4] {
        core::array::from_fn(|_| small_rational(rng, cfg.bound.min(9)))
    };
    let fixed = args.tangent.clone();
    let samples = if fixed.is_some() { 1 } else { cfg.samples };

    match args.check {
        HamiltonianCheck::Equivalence => {
            for _ in 0..samples {
                let [db, dbb, dcp, dcm] = fixed.clone().unwrap_or_else(|| draw_tangent(&mut rng));
                let delta = args
                    .twist
                    .clone()
                    .unwrap_or_else(|| small_rational(&mut rng, 6));
                let t = solve_tangent(db.clone(), dbb.clone(), dcp.clone(), dcm.clone(), &cpl)?;
                let m = two_body_matrix(&t, &delta, &cpl)?;
                let s = two_body_spin_form(&t, &delta, &cpl)?;
                let res = m.sub(&s).max_abs();
                let input = json!({
                    "tangent": [db.to_string(), dbb.to_string(), dcp.to_string(), dcm.to_string()],
                    "twist": delta.to_string(),
                });
                rep.record(
                    res.is_zero(),
                    res.magnitude(),
                    input,
                    "spin form = matrix form",
                );
            }
        }
        HamiltonianCheck::Derivative => {
            let chain_sites = args.sites.clamp(2, cfg.float_max_sites.min(5));
            for _ in 0..samples {
                let [db, dbb, dcp, dcm] = fixed.clone().unwrap_or_else(|| draw_tangent(&mut rng));
                let delta = args
                    .twist
                    .clone()
                    .unwrap_or_else(|| small_rational(&mut rng, 6));
                let t = solve_tangent(db.clone(), dbb.clone(), dcp.clone(), dcm.clone(), &cpl)?;
                let res = derivative_consistency(&t, &delta, &cpl)?;
                let input = json!({
                    "tangent": [db.to_string(), dbb.to_string(), dcp.to_string(), dcm.to_string()],
                    "twist": delta.to_string(),
                });
                rep.record(
                    res.is_zero(),
                    res.magnitude(),
                    input,
                    "jet derivative of twisted operator = two-body matrix",
                );
            }
            // chain-level consequence: the assembled Hamiltonian is a
            // conserved charge of the transfer matrix (float check)
            let cpl_f = couplings_c64(cfg)?;
            let draw: [Rat; 4] = core::array::from_fn(|_| small_rational(&mut rng, 6));
            let tf = solve_tangent(
                rat_to_c64(&draw[0]),
                rat_to_c64(&draw[1]),
                rat_to_c64(&draw[2]),
                rat_to_c64(&draw[3]),
                &cpl_f,
            )?;
            let chain = nineteen_vertex_core::hamiltonian::chain_hamiltonian(
                &tf,
                &C64::new(1.0, 0.0),
                &cpl_f,
                chain_sites,
                true,
                Budget {
                    exact_max_sites: cfg.exact_max_sites,
                    float_max_sites: cfg.float_max_sites,
                },
            )?;
            let pt = sample_spectral(&mut rng, &cpl, cfg.bound)?;
            let lax = lax_from_spectral(&spectral_to_c64(&pt.value), &cpl_f)?;
            let transfer = build_transfer(
                &lax,
                chain_sites,
                false,
                Budget {
                    exact_max_sites: cfg.exact_max_sites,
                    float_max_sites: cfg.float_max_sites,
                },
            )?;
            let h = crate::floatops::real_array(&chain)?;
            let tm = crate::floatops::real_array(&transfer.to_dense())?;
            let rel = crate::floatops::dense_commutator_relative(&h, &tm);
            let chain_tol = 1e-8f64.max(cfg.tolerance);
            rep.record(
                rel <= chain_tol,
                rel,
                json!({"sites": chain_sites, "tangent": draw.iter().map(|d| d.to_string()).collect::<Vec<_>>()}),
                format!("chain Hamiltonian commutes with T_{chain_sites} (float)"),
            );
        }
        HamiltonianCheck::Hermiticity => {
            let hermitian_couplings =
                (cpl.lambda1_minus.clone() - cpl.lambda1_plus.clone()).is_zero();
            if !hermitian_couplings {
                bail!(
                    "hermiticity needs couplings with lambda1_minus = lambda1_plus \
                     (for example 1,1); got ({}, {})",
                    cfg.couplings[0],
                    cfg.couplings[1]
                );
            }
            rep.note("twist forced to 1 (symmetric gauge)");
            let one = <Rat as Scalar>::one();
            for _ in 0..samples {
                let [db, _, dcp, dcm] = fixed.clone().unwrap_or_else(|| draw_tangent(&mut rng));
                let t = solve_tangent(db.clone(), db.clone(), dcp.clone(), dcm.clone(), &cpl)?;
                let m = two_body_matrix(&t, &one, &cpl)?;
                let sym = symmetry_residual(&m);
                // negative control: an asymmetric tangent must break it
                let t_bad = solve_tangent(
                    db.clone(),
                    db.clone() + <Rat as Scalar>::one(),
                    dcp.clone(),
                    dcm.clone(),
                    &cpl,
                )?;
                let m_bad = two_body_matrix(&t_bad, &one, &cpl)?;
                let asym = symmetry_residual(&m_bad);
                let input = json!({
                    "tangent": [db.to_string(), db.to_string(), dcp.to_string(), dcm.to_string()],
                });
                rep.record(
                    sym.is_zero() && !asym.is_zero(),
                    sym.magnitude(),
                    input,
                    "symmetric under footnote conditions; asymmetric control breaks it",
                );
            }
        }
        HamiltonianCheck::Cfr => {
            let root = args.tau_3.try_sqrt().map_err(|_| {
                anyhow!(
                    "tau_3 = {} is not a rational square; the exact reduction needs one",
                    args.tau_3
                )
            })?;
            for _ in 0..samples {
                let dcs: [Rat; 4] = core::array::from_fn(|_| small_rational(&mut rng, 9));
                let a = cfr_reduction(
                    &args.tau_p,
                    &args.tau_3,
                    &args.theta,
                    &dcs[0],
                    &dcs[1],
                    Default::default(),
                )?;
                let b = cfr_reduction(
                    &args.tau_p,
                    &args.tau_3,
                    &args.theta,
                    &dcs[2],
                    &dcs[3],
                    Default::default(),
                )?;
                let res = a.h_red.sub(&b.h_red).max_abs();
                let lambda_ok = (a.couplings.lambda2_plus.clone() * root.clone()
                    - <Rat as Scalar>::one())
                .is_zero();
                let input = json!({
                    "tau_p": args.tau_p.to_string(),
                    "tau_3": args.tau_3.to_string(),
                    "theta": args.theta.to_string(),
                    "dc_choices": dcs.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                });
                rep.record(
                    res.is_zero() && lambda_ok,
                    res.magnitude(),
                    input,
                    "H_red independent of dc± and lambda2+ = 1/sqrt(tau_3)",
                );
            }
        }
    }
    Ok(rep.finish())
}
