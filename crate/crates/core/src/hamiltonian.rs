//! The Hamiltonian limit: first-order expansion of the twisted transition
//! operator around the regular point, the two-body operator in matrix and
//! spin-1 forms, chain assembly, and the reduction onto the three-parameter
//! spin-chain family it reproduces.

use crate::couplings::Couplings;
use crate::error::{Error, Result};
use crate::lax::{build_lax_twisted, spin_z};
use crate::matrix::{embed_one_site, embed_two_site, kron, permutator, DenseMatrix};
use crate::scalar::{sq, Jet, Scalar};
use crate::weights::{weights_from_threefold, ThreefoldPoint};

/// First-order expansion data at the regular point. The four dotted weights
/// are free; `da_plus`, `da_minus` and `dg` are pinned by the requirement
/// that the expansion stays on the threefold to first order.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentCoefficients<K> {
    pub db_plus: K,
    pub dbbar_plus: K,
    pub dc_plus: K,
    pub dc_minus: K,
    pub da_plus: K,
    pub da_minus: K,
    pub dg: K,
}

/// Solves the first-order variety constraint for the derived coefficients.
pub fn solve_tangent<K: Scalar>(
    db_plus: K,
    dbbar_plus: K,
    dc_plus: K,
    dc_minus: K,
    cpl: &Couplings<K>,
) -> Result<TangentCoefficients<K>> {
    let quarter_l2p = K::from_int(4) * cpl.lambda2_plus.clone();
    let lead = (cpl.lambda1_minus.clone() * db_plus.clone()
        + cpl.lambda1_plus.clone() * dbbar_plus.clone())
    .try_div(&quarter_l2p)?;
    let half = K::from_ratio(1, 2);
    let da_plus =
        -lead.clone() - half.clone() * dc_minus.clone() + K::from_ratio(3, 2) * dc_plus.clone();
    let da_minus =
        -lead.clone() + K::from_ratio(3, 2) * dc_minus.clone() - half.clone() * dc_plus.clone();
    let dg = lead + half.clone() * dc_minus.clone() + half * dc_plus.clone();
    Ok(TangentCoefficients {
        db_plus,
        dbbar_plus,
        dc_plus,
        dc_minus,
        da_plus,
        da_minus,
        dg,
    })
}

/// Residual of the first-order constraint
/// `Λ1- db+ + Λ1+ dbbar+ + 4Λ2+ da+ + 2Λ2+ dc- - 6Λ2+ dc+`.
pub fn constraint_residual<K: Scalar>(t: &TangentCoefficients<K>, cpl: &Couplings<K>) -> K {
    cpl.lambda1_minus.clone() * t.db_plus.clone()
        + cpl.lambda1_plus.clone() * t.dbbar_plus.clone()
        + K::from_int(4) * cpl.lambda2_plus.clone() * t.da_plus.clone()
        + K::from_int(2) * cpl.lambda2_plus.clone() * t.dc_minus.clone()
        - K::from_int(6) * cpl.lambda2_plus.clone() * t.dc_plus.clone()
}

/// Spin-1 raising operator `S+ = sqrt(2) (E12 + E23)`; needs a backend
/// with a square root of two.
pub fn spin_plus<K: Scalar>() -> Result<DenseMatrix<K>> {
    let s = K::from_int(2).try_sqrt()?;
    Ok(DenseMatrix::from_entries(
        3,
        3,
        &[(0, 1, s.clone()), (1, 2, s)],
    ))
}

/// Spin-1 lowering operator `S- = sqrt(2) (E21 + E32)`.
pub fn spin_minus<K: Scalar>() -> Result<DenseMatrix<K>> {
    let s = K::from_int(2).try_sqrt()?;
    Ok(DenseMatrix::from_entries(
        3,
        3,
        &[(1, 0, s.clone()), (2, 1, s)],
    ))
}

/// `sqrt(2)`-free raising/lowering patterns; pairing two of them absorbs
/// the factor of two, keeping every spin-form term rational.
fn ladder_up<K: Scalar>() -> DenseMatrix<K> {
    DenseMatrix::from_entries(3, 3, &[(0, 1, K::one()), (1, 2, K::one())])
}

fn ladder_down<K: Scalar>() -> DenseMatrix<K> {
    DenseMatrix::from_entries(3, 3, &[(1, 0, K::one()), (2, 1, K::one())])
}

/// The two-body operator of the expansion, as the printed 9x9 matrix.
pub fn two_body_matrix<K: Scalar>(
    t: &TangentCoefficients<K>,
    delta: &K,
    cpl: &Couplings<K>,
) -> Result<DenseMatrix<K>> {
    if delta.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let l2p_inv = l2p.try_inv()?;
    let l2p2_inv = sq(&l2p_inv);
    let delta_inv = delta.try_inv()?;
    let hop = t.da_plus.clone() + t.dc_minus.clone() - t.dc_plus.clone();
    Ok(DenseMatrix::from_entries(
        9,
        9,
        &[
            (0, 0, t.da_plus.clone()),
            (1, 1, t.dc_plus.clone()),
            (1, 3, t.dbbar_plus.clone()),
            (2, 2, hop.clone()),
            (2, 4, delta.clone() * t.dbbar_plus.clone() * l2p_inv.clone()),
            (
                2,
                6,
                -(l1m.clone() * t.dbbar_plus.clone() * l2p_inv.clone()),
            ),
            (3, 1, t.db_plus.clone()),
            (3, 3, t.dc_plus.clone()),
            (
                4,
                2,
                t.db_plus.clone() * l2p_inv.clone() * delta_inv.clone(),
            ),
            (4, 4, t.dg.clone()),
            (4, 6, t.dbbar_plus.clone() * l2p_inv.clone() * delta_inv),
            (5, 5, t.dc_minus.clone()),
            (5, 7, t.dbbar_plus.clone() * l2p2_inv.clone()),
            (6, 2, -(l1p.clone() * t.db_plus.clone() * l2p_inv.clone())),
            (6, 4, delta.clone() * t.db_plus.clone() * l2p_inv),
            (6, 6, hop),
            (7, 5, t.db_plus.clone() * l2p2_inv),
            (7, 7, t.dc_minus.clone()),
            (8, 8, t.da_minus.clone()),
        ],
    ))
}

/// The same operator assembled from spin-1 generators. The printed form
/// carries `dbbar+/db+` ratios, so `db+ = 0` is a reported precondition
/// failure (the matrix form covers that case).
pub fn two_body_spin_form<K: Scalar>(
    t: &TangentCoefficients<K>,
    delta: &K,
    cpl: &Couplings<K>,
) -> Result<DenseMatrix<K>> {
    if delta.is_zero() {
        return Err(Error::ZeroTwist);
    }
    if t.db_plus.is_zero() {
        return Err(Error::VanishingDenominator {
            context: "two-body spin form (use the matrix form instead)",
            factors: alloc::vec!["db_plus"],
        });
    }
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let two = K::from_int(2);
    let half = K::from_ratio(1, 2);
    let quarter = K::from_ratio(1, 4);

    let up = ladder_up::<K>();
    let dn = ladder_down::<K>();
    let sz = spin_z::<K>();
    let i3 = DenseMatrix::identity(3);
    let i9 = DenseMatrix::identity(9);
    // each kron pairs two ladder factors, absorbing (sqrt 2)^2 = 2
    let sm_sp = kron(&dn, &up).scale(&two);
    let sp_sm = kron(&up, &dn).scale(&two);
    let smsz_sp = kron(&dn.mul(&sz), &up).scale(&two);
    let sp_smsz = kron(&up, &dn.mul(&sz)).scale(&two);
    let sm_spsz = kron(&dn, &up.mul(&sz)).scale(&two);
    let spsz_sm = kron(&up.mul(&sz), &dn).scale(&two);
    let sz_sz = kron(&sz, &sz);
    let sz2_sum = kron(&sz.mul(&sz), &i3).add(&kron(&i3, &sz.mul(&sz)));
    let sz_sum = kron(&sz, &i3).add(&kron(&i3, &sz));

    let l2p_inv = l2p.try_inv()?;
    let delta_inv = delta.try_inv()?;
    // (Λ2+ - Δ)(Λ2+ Δ - 1)/(Δ^2 Λ2+)
    let kappa = ((l2p.clone() - delta.clone()) * (l2p.clone() * delta.clone() - K::one()))
        * sq(&delta_inv)
        * l2p_inv.clone();
    let hop = sm_sp.scale(&t.db_plus).add(&sp_sm.scale(&t.dbbar_plus));
    let exchange = hop.add(&hop.mul(&sz_sz.scale(&kappa)));

    let lead = quarter.clone()
        * l2p_inv.clone()
        * (l1m.clone() * t.db_plus.clone() + l1p.clone() * t.dbbar_plus.clone());
    let coeff1 = half.clone() * delta.clone() * l2p_inv.clone();
    let coeff3 = half.clone() * (l2p.clone() - delta.clone()) * l2p_inv.clone();
    let coeff4 = half.clone() * (delta.clone() * l2p.clone() - K::one()) * sq(&l2p_inv);
    let biquad = sm_sp
        .mul(&sm_sp)
        .scale(&(l1p.clone() * t.db_plus.clone()))
        .add(
            &sp_sm
                .mul(&sp_sm)
                .scale(&(l1m.clone() * t.dbbar_plus.clone())),
        );

    let mut h = exchange.scale(&coeff1);
    h = h.sub(&biquad.scale(&(quarter * l2p_inv)));
    h = h.add(
        &smsz_sp
            .scale(&t.db_plus)
            .add(&sp_smsz.scale(&t.dbbar_plus))
            .scale(&coeff3),
    );
    h = h.add(
        &sm_spsz
            .scale(&t.db_plus)
            .add(&spsz_sm.scale(&t.dbbar_plus))
            .scale(&coeff4),
    );
    h = h.sub(&sz2_sum.scale(&lead));
    h = h.add(&sz_sum.scale(&(half.clone() * (t.dc_plus.clone() - t.dc_minus.clone()))));
    let id_coeff = lead + half.clone() * t.dc_plus.clone() + half * t.dc_minus.clone();
    Ok(h.add(&i9.scale(&id_coeff)))
}

/// Coefficient of `Sz_j + Sz_{j+1}` extracted from an assembled two-body
/// operator by trace projection; every other term of the operator is
/// trace-orthogonal to the magnetization sum.
pub fn sz_sum_coefficient<K: Scalar>(h: &DenseMatrix<K>) -> Result<K> {
    let sz = spin_z::<K>();
    let i3 = DenseMatrix::identity(3);
    let m = kron(&sz, &i3).add(&kron(&i3, &sz));
    let mut trace = K::zero();
    for i in 0..9 {
        trace = trace + h.get(i, i).clone() * m.get(i, i).clone();
    }
    trace.try_div(&K::from_int(12))
}

/// Sum of embedded two-body terms on `sites` sites (periodic wrap optional).
pub fn chain_hamiltonian<K: Scalar>(
    t: &TangentCoefficients<K>,
    delta: &K,
    cpl: &Couplings<K>,
    sites: usize,
    periodic: bool,
    budget: crate::transfer::Budget,
) -> Result<DenseMatrix<K>> {
    if sites < 2 {
        return Err(Error::InvalidConfig(alloc::format!(
            "chain needs at least 2 sites, got {sites}"
        )));
    }
    let limit = if K::EXACT {
        budget.exact_max_sites
    } else {
        budget.float_max_sites
    };
    if sites > limit {
        return Err(Error::BudgetExceeded { sites, limit });
    }
    let h2 = two_body_matrix(t, delta, cpl)?;
    let dim = 3usize.pow(sites as u32);
    let mut total = DenseMatrix::zeros(dim, dim);
    for j in 0..sites - 1 {
        total = total.add(&embed_two_site(&h2, sites, j, j + 1, 3));
    }
    if periodic {
        total = total.add(&embed_two_site(&h2, sites, sites - 1, 0, 3));
    }
    Ok(total)
}

/// Independent assembly of the printed bulk Hamiltonian (unit twist,
/// periodic): equals `(2Λ2+/db+) Σ_j H_{j,j+1}` up to a multiple of the
/// identity.
pub fn bulk_hamiltonian<K: Scalar>(
    t: &TangentCoefficients<K>,
    cpl: &Couplings<K>,
    sites: usize,
) -> Result<DenseMatrix<K>> {
    if t.db_plus.is_zero() {
        return Err(Error::VanishingDenominator {
            context: "bulk hamiltonian",
            factors: alloc::vec!["db_plus"],
        });
    }
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let ratio = t.dbbar_plus.try_div(&t.db_plus)?;
    let l2p_inv = l2p.try_inv()?;
    let one = K::one();
    let half = K::from_ratio(1, 2);

    let up = ladder_up::<K>();
    let dn = ladder_down::<K>();
    let sz = spin_z::<K>();
    let two = K::from_int(2);
    let sm_sp = kron(&dn, &up).scale(&two);
    let sp_sm = kron(&up, &dn).scale(&two);
    let smsz_sp = kron(&dn.mul(&sz), &up).scale(&two);
    let sp_smsz = kron(&up, &dn.mul(&sz)).scale(&two);
    let sm_spsz = kron(&dn, &up.mul(&sz)).scale(&two);
    let spsz_sm = kron(&up.mul(&sz), &dn).scale(&two);
    let sz_sz = kron(&sz, &sz);

    // ((Λ2+ - 1)^2 / Λ2+) Sz Sz correction to the exchange term
    let kappa = sq(&(l2p.clone() - one.clone())) * l2p_inv.clone();
    let hop = sm_sp.clone().add(&sp_sm.scale(&ratio));
    let mut bond = hop.add(&hop.mul(&sz_sz.scale(&kappa)));
    bond = bond.sub(
        &sm_sp.mul(&sm_sp).scale(&(half.clone() * l1p.clone())).add(
            &sp_sm
                .mul(&sp_sm)
                .scale(&(half * l1m.clone() * ratio.clone())),
        ),
    );
    bond = bond.add(
        &smsz_sp
            .add(&sp_smsz.scale(&ratio))
            .scale(&(l2p.clone() - one.clone())),
    );
    bond = bond.add(
        &sm_spsz
            .add(&spsz_sm.scale(&ratio))
            .scale(&((l2p.clone() - one) * l2p_inv)),
    );

    let sz2_site = sz
        .mul(&sz)
        .scale(&(l1m.clone() + l1p.clone() * ratio.clone()));
    let field = sz.scale(
        &(K::from_int(2)
            * cpl.lambda2_plus.clone()
            * (t.dc_plus.clone() - t.dc_minus.clone()).try_div(&t.db_plus)?),
    );
    let site_term = field.sub(&sz2_site);

    let dim = 3usize.pow(sites as u32);
    let mut total = DenseMatrix::zeros(dim, dim);
    for j in 0..sites {
        let next = (j + 1) % sites;
        total = total.add(&embed_two_site(&bond, sites, j, next, 3));
        total = total.add(&embed_one_site(&site_term, sites, j, 3));
    }
    Ok(total)
}

/// Exact first-order check tying the printed two-body operator to the
/// transfer-matrix definition: the twisted transition operator is evaluated
/// in jet arithmetic along the expansion curve and `P dL/dε` is compared to
/// [`two_body_matrix`]. Returns the max-abs difference (exactly zero).
pub fn derivative_consistency<K: Scalar>(
    t: &TangentCoefficients<K>,
    delta: &K,
    cpl: &Couplings<K>,
) -> Result<K> {
    let constraint = constraint_residual(t, cpl);
    if !constraint.is_zero() {
        return Err(Error::TangentConstraintViolated(alloc::format!(
            "{constraint}"
        )));
    }
    let jcpl = cpl.convert(|x| Jet::constant(x.clone()));
    let coords = [
        Jet::new(K::one(), t.da_plus.clone()),
        Jet::new(K::zero(), t.db_plus.clone()),
        Jet::new(K::zero(), t.dbbar_plus.clone()),
        Jet::new(K::one(), t.dc_plus.clone()),
        Jet::new(K::one(), t.dc_minus.clone()),
    ];
    // membership of the jet point doubles as the first-order variety check
    let point = ThreefoldPoint::new(coords, &jcpl)?;
    let w = weights_from_threefold(&point, &jcpl)?;
    let lax = build_lax_twisted(&w, &Jet::constant(delta.clone()))?;
    let base = lax.matrix.map(|j| j.base.clone());
    debug_assert!(base.sub(&permutator(3)).is_zero());
    let tangent = lax.matrix.map(|j| j.tan.clone());
    let h_from_jet = permutator::<K>(3).mul(&tangent);
    let h_printed = two_body_matrix(t, delta, cpl)?;
    Ok(h_from_jet.sub(&h_printed).max_abs())
}

/// Which operator the three-parameter reduction adds per site pair; the
/// source text writes `[S_j + S_{j+1}]` without naming a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CfrCorrection {
    /// `Sz_j + Sz_{j+1}` — the reading consistent with the magnetic-field
    /// term, and the only one making the reduction tangent-independent.
    #[default]
    SzSum,
    /// Literal sum over all three components of both sites; needs a
    /// backend with `sqrt(2)` and `i` (complex floats).
    XyzSum,
}

/// Result of the reduction onto the three-parameter spin-chain family.
#[derive(Debug, Clone)]
pub struct CfrReduction<K> {
    pub couplings: Couplings<K>,
    pub tangent: TangentCoefficients<K>,
    pub delta: K,
    pub h_red: DenseMatrix<K>,
}

/// Maps the three free parameters `(τp, τ3, θ)` onto couplings, twist and
/// tangent, and assembles the reduced two-body operator, which is
/// independent of the `dc±` choice under the [`CfrCorrection::SzSum`]
/// reading.
pub fn cfr_reduction<K: Scalar>(
    tau_p: &K,
    tau_3: &K,
    theta: &K,
    dc_plus: &K,
    dc_minus: &K,
    correction: CfrCorrection,
) -> Result<CfrReduction<K>> {
    if tau_p.is_zero() {
        return Err(Error::InvalidConfig("tau_p must be nonzero".into()));
    }
    let root = tau_3.try_sqrt()?;
    let delta = root.try_inv()?;
    let lambda2_plus = delta.clone();
    let lambda1_plus = (tau_3.clone() - sq(tau_3) - K::one()).try_div(&(tau_p.clone() * root))?;
    let cpl = Couplings::derive(lambda1_plus, lambda2_plus)?;
    let tangent = solve_tangent(
        tau_p.clone() * theta.clone(),
        tau_p.clone(),
        dc_plus.clone(),
        dc_minus.clone(),
        &cpl,
    )?;
    let h = two_body_matrix(&tangent, &delta, &cpl)?;

    let kfree = K::one() - tau_3.clone() + sq(tau_3) + theta.clone() * sq(tau_p);
    let quarter = K::from_ratio(1, 4);
    let sz_coeff = quarter.clone()
        * (-kfree.clone() + K::from_int(2) * dc_minus.clone() - K::from_int(2) * dc_plus.clone());
    let id_coeff =
        quarter * (kfree - K::from_int(2) * dc_minus.clone() - K::from_int(2) * dc_plus.clone());

    let i3 = DenseMatrix::identity(3);
    let correction_op = match correction {
        CfrCorrection::SzSum => {
            let sz = spin_z::<K>();
            kron(&sz, &i3).add(&kron(&i3, &sz))
        }
        CfrCorrection::XyzSum => {
            let sp = spin_plus::<K>()?;
            let sm = spin_minus::<K>()?;
            let sx = sp.add(&sm).scale(&K::from_ratio(1, 2));
            // Sy = (S+ - S-)/(2i); i is only available in complex backends
            let i_inv = {
                let minus_one = K::from_int(-1);
                let i = minus_one.try_sqrt()?;
                (K::from_int(2) * i).try_inv()?
            };
            let sy = sp.sub(&sm).scale(&i_inv);
            let sz = spin_z::<K>();
            let vec_sum = sx.add(&sy).add(&sz);
            kron(&vec_sum, &i3).add(&kron(&i3, &vec_sum))
        }
    };
    let h_red = h
        .add(&correction_op.scale(&sz_coeff))
        .add(&DenseMatrix::identity(9).scale(&id_coeff));
    Ok(CfrReduction {
        couplings: cpl,
        tangent,
        delta,
        h_red,
    })
}

/// Max-abs asymmetry `H - H^T`; zero under the Hermiticity conditions
/// (unit twist, `Λ1- = Λ1+`, `dbbar+ = db+`, real couplings).
pub fn symmetry_residual<K: Scalar>(h: &DenseMatrix<K>) -> K {
    h.sub(&h.transpose()).max_abs()
}
