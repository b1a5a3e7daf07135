//! Acceptance suite: every headline contract of the artifact, run at its
//! stated sample count and tolerance, one pass/fail line per criterion.
//!
//! Run with `cargo test -p nineteen-vertex-cli --test acceptance`
//! (add `-- --nocapture` to see the per-criterion PASS lines).

use std::time::Instant;

use num_complex::Complex;

use nineteen_vertex_cli::campaigns::{
    run_geometry_roundtrip, run_geometry_singular, run_hamiltonian, run_transfer_commute,
    run_verify, GeoMap, HamiltonianArgs, HamiltonianCheck, VerifyKind,
};
use nineteen_vertex_cli::config::{Backend, CampaignConfig, Chart};
use nineteen_vertex_cli::floatops::dense_commutator_relative;
use nineteen_vertex_cli::jsonio::rat_to_c64;
use nineteen_vertex_core::hamiltonian::{
    chain_hamiltonian, solve_tangent, sz_sum_coefficient, two_body_matrix,
};
use nineteen_vertex_core::lax::lax_from_spectral;
use nineteen_vertex_core::matrix::permutator;
use nineteen_vertex_core::rmatrix::unitarity_check;
use nineteen_vertex_core::sample::{sample_spectral, small_rational, SplitMix64};
use nineteen_vertex_core::scalar::Scalar;
use nineteen_vertex_core::transfer::{build_transfer, Budget};
use nineteen_vertex_core::weights::SpectralPoint;
use nineteen_vertex_core::{Couplings, Rat};

type C64 = Complex<f64>;

const COUPLING_SETS: [[&str; 2]; 3] = [["1", "2"], ["1", "1"], ["3/2", "5/3"]];

fn cfg(
    couplings: [&str; 2],
    chart: Chart,
    backend: Backend,
    samples: u32,
    seed: u64,
) -> CampaignConfig {
    CampaignConfig {
        couplings: [couplings[0].to_string(), couplings[1].to_string()],
        chart,
        backend,
        samples,
        seed,
        ..CampaignConfig::default()
    }
}

fn rational_couplings(pair: [&str; 2]) -> Couplings<Rat> {
    use nineteen_vertex_core::scalar::parse_rational;
    Couplings::derive(
        parse_rational(pair[0]).unwrap(),
        parse_rational(pair[1]).unwrap(),
    )
    .unwrap()
}

#[test]
fn criterion_01_yang_baxter_exact_over_three_coupling_sets() {
    let started = Instant::now();
    for (i, pair) in COUPLING_SETS.iter().enumerate() {
        let report = run_verify(
            VerifyKind::Ybe,
            &cfg(*pair, Chart::Spectral, Backend::Exact, 100, 101 + i as u64),
        )
        .unwrap();
        assert!(report.passed(), "YBE failures at {pair:?}: {report:#?}");
        assert_eq!(report.samples.valid, 100);
        assert_eq!(
            report.max_residual, 0.0,
            "YBE residual must be exactly zero"
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "expected under 60 s, took {elapsed:?}"
    );
    println!(
        "PASS criterion 1: Yang-Baxter exactly zero on 100 pairs x 3 coupling sets ({:.1} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_non_additive_triple_r_identity() {
    let started = Instant::now();
    let report = run_verify(
        VerifyKind::Rrr,
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 25, 202),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 25);
    assert_eq!(report.max_residual, 0.0);
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "expected under 120 s, took {elapsed:?}"
    );
    println!(
        "PASS criterion 2: R12 R13 R23 = R23 R13 R12 exactly on 25 random triples ({:.1} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_03_regularity_with_unit_normalization() {
    let report = run_verify(
        VerifyKind::Regularity,
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 50, 303),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 50);
    println!("PASS criterion 3: R(w,w) = xi P with xi = 1 on 50 points, exact");
}

#[test]
fn criterion_04_unitarity_scalar_product() {
    let report = run_verify(
        VerifyKind::Unitarity,
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 50, 404),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 50);
    // coincident points: rho = 1 exactly
    let cpl = rational_couplings(["1", "2"]);
    let mut rng = SplitMix64::new(405);
    let p = sample_spectral(&mut rng, &cpl, 20).unwrap().value;
    let rho = unitarity_check(&p, &p, &cpl).unwrap();
    assert_eq!(rho, Rat::from_int(1));
    println!("PASS criterion 4: R P R' P = rho I exactly on 50 pairs; rho(w,w) = 1");
}

#[test]
fn criterion_05_variety_membership_and_divisors() {
    let report = run_verify(
        VerifyKind::Variety,
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 50, 505),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 50);
    let report = run_verify(
        VerifyKind::Divisors,
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 50, 506),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 50);
    println!(
        "PASS criterion 5: threefold, quintic, footnote identity and all ten divisor \
         ratios exact on 50 chart samples"
    );
}

#[test]
fn criterion_06_regular_point_is_the_permutator() {
    for pair in COUPLING_SETS {
        let cpl = rational_couplings(pair);
        let lax = lax_from_spectral(&SpectralPoint::regular_point(&cpl), &cpl).unwrap();
        assert_eq!(lax.matrix, permutator(3), "couplings {pair:?}");
    }
    println!("PASS criterion 6: L([1:0:1:lambda2+]) = permutator(3) exactly");
}

#[test]
fn criterion_07_transfer_commutativity() {
    // exact backend, sites 2..=5, 10 pairs each, exactly zero
    let exact_started = Instant::now();
    for sites in 2..=5usize {
        let report = run_transfer_commute(
            &cfg(
                ["1", "2"],
                Chart::Spectral,
                Backend::Exact,
                10,
                700 + sites as u64,
            ),
            sites,
        )
        .unwrap();
        assert!(report.passed(), "sites {sites}: {report:#?}");
        assert_eq!(report.samples.valid, 10);
        assert_eq!(report.max_residual, 0.0, "sites {sites}");
    }
    let exact_elapsed = exact_started.elapsed();
    assert!(
        exact_elapsed.as_secs() < 600,
        "exact run expected under 10 min, took {exact_elapsed:?}"
    );
    // float backend, sites 6..=8, relative residual under 1e-10
    for sites in 6..=8usize {
        let report = run_transfer_commute(
            &cfg(
                ["1", "2"],
                Chart::Spectral,
                Backend::Float,
                10,
                710 + sites as u64,
            ),
            sites,
        )
        .unwrap();
        assert!(report.passed(), "sites {sites}: {report:#?}");
        assert!(
            report.max_residual < 1e-10,
            "sites {sites}: relative residual {}",
            report.max_residual
        );
    }
    println!(
        "PASS criterion 7: [T_N(w), T_N(w')] = 0 exactly for N=2..5 (10 pairs each, {:.0} s) \
         and below 1e-10 relative for N=6..8 in floats",
        exact_elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_08_birational_round_trips() {
    let report = run_geometry_roundtrip(
        GeoMap::All,
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 50, 808),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(
        report.samples.valid, 150,
        "50 samples for each of phi, psi, sigma"
    );
    println!(
        "PASS criterion 8: phi, psi, sigma round trips are projective identities and \
         images satisfy the target polynomials, exact, 50 samples per map"
    );
}

#[test]
fn criterion_09_singular_point_certification() {
    let report =
        run_geometry_singular(&cfg(["1", "2"], Chart::Spectral, Backend::Exact, 1, 909)).unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(
        report.samples.valid, 7,
        "three cubic + four quartic singular points"
    );
    assert!(report.max_residual < 1e-10);
    println!(
        "PASS criterion 9: gradients vanish at all singular points (rational ones exactly, \
         the i*sqrt(3) pair below 1e-10 in complex floats)"
    );
}

#[test]
fn criterion_10_hamiltonian_limit() {
    // spin form equals matrix form exactly, 20 random constrained tangents
    let report = run_hamiltonian(
        &HamiltonianArgs {
            check: HamiltonianCheck::Equivalence,
            tangent: None,
            twist: None,
            sites: 3,
            tau_p: Rat::from_ratio(2, 3),
            tau_3: Rat::from_ratio(1, 4),
            theta: Rat::from_int(5),
        },
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 20, 1010),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 20);
    // jet derivative of the twisted operator reproduces the printed matrix
    let report = run_hamiltonian(
        &HamiltonianArgs {
            check: HamiltonianCheck::Derivative,
            tangent: None,
            twist: None,
            sites: 3,
            tau_p: Rat::from_ratio(2, 3),
            tau_3: Rat::from_ratio(1, 4),
            theta: Rat::from_int(5),
        },
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 20, 1011),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    // chain commutes with the transfer matrix in floats at 1e-8
    let cpl = rational_couplings(["1", "2"]);
    let cpl_f = Couplings::derive(C64::new(1.0, 0.0), C64::new(2.0, 0.0)).unwrap();
    let mut rng = SplitMix64::new(1012);
    for sites in 3..=5usize {
        let tangent: [Rat; 4] = core::array::from_fn(|_| small_rational(&mut rng, 9));
        let t = solve_tangent(
            rat_to_c64(&tangent[0]),
            rat_to_c64(&tangent[1]),
            rat_to_c64(&tangent[2]),
            rat_to_c64(&tangent[3]),
            &cpl_f,
        )
        .unwrap();
        let chain = chain_hamiltonian(
            &t,
            &C64::new(1.0, 0.0),
            &cpl_f,
            sites,
            true,
            Budget::default(),
        )
        .unwrap();
        let point = sample_spectral(&mut rng, &cpl, 20).unwrap().value;
        let pf = SpectralPoint {
            coords: core::array::from_fn(|i| rat_to_c64(&point.coords[i])),
        };
        let lax = lax_from_spectral(&pf, &cpl_f).unwrap();
        let transfer = build_transfer(&lax, sites, false, Budget::default()).unwrap();
        let h = nineteen_vertex_cli::floatops::real_array(&chain).unwrap();
        let tm = nineteen_vertex_cli::floatops::real_array(&transfer.to_dense()).unwrap();
        let rel = dense_commutator_relative(&h, &tm);
        assert!(rel < 1e-8, "sites {sites}: [H, T] relative residual {rel}");
    }
    println!(
        "PASS criterion 10: spin form = matrix form exactly (20 tangents), jet derivative \
         reproduces the two-body matrix exactly, chain commutes with T_N below 1e-8"
    );
}

#[test]
fn criterion_11_magnetic_field_structure() {
    // Sz-sum coefficient equals (dc+ - dc-)/2 and vanishes when they agree
    let cpl = rational_couplings(["1", "2"]);
    let mut rng = SplitMix64::new(1101);
    for _ in 0..20 {
        let draw: [Rat; 4] = core::array::from_fn(|_| small_rational(&mut rng, 9));
        let t = solve_tangent(
            draw[0].clone(),
            draw[1].clone(),
            draw[2].clone(),
            draw[3].clone(),
            &cpl,
        )
        .unwrap();
        let h = two_body_matrix(&t, &Rat::from_int(1), &cpl).unwrap();
        let coeff = sz_sum_coefficient(&h).unwrap();
        let expect = (draw[2].clone() - draw[3].clone()) * Rat::from_ratio(1, 2);
        assert_eq!(coeff, expect);
        let t = solve_tangent(
            draw[0].clone(),
            draw[1].clone(),
            draw[2].clone(),
            draw[2].clone(),
            &cpl,
        )
        .unwrap();
        let h = two_body_matrix(&t, &Rat::from_int(1), &cpl).unwrap();
        assert!(sz_sum_coefficient(&h).unwrap().is_zero());
    }
    // quartic-surface chart always yields c- = c+ and satisfies the YBE,
    // exactly in the quadratic-extension scalar
    let report = run_verify(
        VerifyKind::Ybe,
        &cfg(["1", "2"], Chart::K3, Backend::Exact, 10, 1102),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.max_residual, 0.0);
    // and in floats at 1e-10 (norm-scaled)
    let report = run_verify(
        VerifyKind::Ybe,
        &cfg(["1", "2"], Chart::K3, Backend::Float, 25, 1103),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert!(report.max_residual < 1e-10);
    println!(
        "PASS criterion 11: magnetic term is (dc+ - dc-)/2 and vanishes on the symmetric \
         submanifold; quartic-chart weights have c- = c+ and satisfy the YBE (exact tower \
         and float 1e-10)"
    );
}

#[test]
fn criterion_12_reduction_onto_the_three_parameter_chain() {
    let report = run_hamiltonian(
        &HamiltonianArgs {
            check: HamiltonianCheck::Cfr,
            tangent: None,
            twist: None,
            sites: 3,
            tau_p: Rat::from_ratio(2, 3),
            tau_3: Rat::from_ratio(1, 4),
            theta: Rat::from_int(5),
        },
        &cfg(["1", "2"], Chart::Spectral, Backend::Exact, 20, 1212),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 20);
    println!(
        "PASS criterion 12: reduced two-body operator independent of the dc± choice for \
         square tau_3; lambda2+ = 1/sqrt(tau_3) reproduced"
    );
}

#[test]
fn criterion_13_hermiticity_footnote() {
    let report = run_hamiltonian(
        &HamiltonianArgs {
            check: HamiltonianCheck::Hermiticity,
            tangent: None,
            twist: None,
            sites: 3,
            tau_p: Rat::from_ratio(2, 3),
            tau_3: Rat::from_ratio(1, 4),
            theta: Rat::from_int(5),
        },
        &cfg(["1", "1"], Chart::Spectral, Backend::Exact, 20, 1313),
    )
    .unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.samples.valid, 20);
    println!(
        "PASS criterion 13: two-body operator exactly symmetric for twist 1, couplings (1,1), \
         dbbar+ = db+; asymmetric tangents break it"
    );
}
