//! Simultaneous-spectrum checks: a commuting family shares an eigenbasis;
//! an off-variety member breaks it.

use num_complex::Complex;

use nineteen_vertex_cli::jsonio::rat_to_c64;
use nineteen_vertex_cli::spectrum::simultaneous_spectrum;
use nineteen_vertex_core::lax::{build_lax, LaxOperator};
use nineteen_vertex_core::sample::{sample_spectral, SplitMix64};
use nineteen_vertex_core::scalar::Scalar;
use nineteen_vertex_core::transfer::Budget;
use nineteen_vertex_core::weights::{weights_from_spectral, SpectralPoint};
use nineteen_vertex_core::{Couplings, Rat};

type C64 = Complex<f64>;

fn float_family(count: usize, seed: u64) -> Vec<LaxOperator<C64>> {
    let cpl = Couplings::derive(Rat::from_int(1), Rat::from_int(2)).unwrap();
    let cpl_f = Couplings::derive(C64::new(1.0, 0.0), C64::new(2.0, 0.0)).unwrap();
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let p = sample_spectral(&mut rng, &cpl, 20).unwrap().value;
            let pf = SpectralPoint {
                coords: core::array::from_fn(|i| rat_to_c64(&p.coords[i])),
            };
            let w = weights_from_spectral(&pf, &cpl_f).unwrap();
            build_lax(&w)
        })
        .collect()
}

#[test]
fn commuting_family_shares_an_eigenbasis_at_four_sites() {
    let laxes = float_family(3, 41);
    let outcome = simultaneous_spectrum(&laxes, 4, 41, Budget::default()).unwrap();
    assert_eq!(outcome.points, 3);
    assert!(
        outcome.max_offdiagonal < 1e-8,
        "off-diagonal residual {}",
        outcome.max_offdiagonal
    );
    // sector dimensions partition the 81-dimensional space
    let total: usize = outcome.sectors.iter().map(|s| s.dimension).sum();
    assert_eq!(total, 81);
}

#[test]
fn single_point_family_is_trivially_consistent() {
    let laxes = float_family(1, 43);
    let outcome = simultaneous_spectrum(&laxes, 3, 43, Budget::default()).unwrap();
    assert!(outcome.max_offdiagonal < 1e-8);
}

#[test]
fn off_variety_member_breaks_the_common_eigenbasis() {
    let mut laxes = float_family(2, 47);
    let mut w = laxes[1].weights.clone();
    w.g += C64::new(0.5, 0.0);
    laxes[1] = build_lax(&w);
    let outcome = simultaneous_spectrum(&laxes, 3, 47, Budget::default()).unwrap();
    assert!(
        outcome.max_offdiagonal > 1e-8,
        "perturbed family should not share an eigenbasis (residual {})",
        outcome.max_offdiagonal
    );
}
