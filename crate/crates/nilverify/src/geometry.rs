//! Certificates for symplectic forms, integrability of the invariant
//! complex structure, and Lefschetz-kernel statements on the invariant
//! cohomology.
//!
//! Positivity of a top power is decided against an explicit reference
//! volume, never numerically. With generator pairs (g, ~g) the `standard`
//! orientation uses
//!
//!   V = (i ~g1 ^ g1) ^ (i ~g2 ^ g2) ^ (i ~g3 ^ g3),
//!
//! the orientation in which the bundled quotient construction's symplectic
//! form has positive cube; `flipped` negates it and is the orientation of
//! the complex coordinates themselves, (i g ^ ~g) per pair. Reports always
//! carry the chosen convention.

use serde::Serialize;
use thiserror::Error;

use crate::ce::{AlgebraSpec, CeError, CohomologyBasis};
use crate::equivariance::{invariant_cohomology, ActionError, ActionSpec};
use crate::exterior::Form;
use crate::linalg::Matrix;
use crate::scalar::{CycloScalar, Sign};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("form must be homogeneous of degree 2")]
    NotDegreeTwo,
    #[error("Lefschetz certificates require exactly three conjugate pairs")]
    NeedThreePairs,
    #[error("the reference volume class is trivial in top cohomology")]
    TopClassTrivial,
    #[error("class is not in the invariant degree-2 cohomology")]
    NotInvariantClass,
    #[error("kernel certificate requires a nonzero class")]
    ZeroBeta,
    #[error(transparent)]
    Cohomology(#[from] CeError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Which reference volume orients top-power sign decisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Standard,
    Flipped,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Standard => Orientation::Flipped,
            Orientation::Flipped => Orientation::Standard,
        }
    }
}

/// The exact reference volume form for the chosen orientation.
pub fn reference_volume(spec: &AlgebraSpec, orientation: Orientation) -> Form {
    let gens = spec.generators();
    let mut v = Form::one();
    for p in 0..gens.pair_count() {
        let g = Form::generator(p);
        let gbar = Form::generator(gens.conj_partner(p));
        let area = match orientation {
            Orientation::Standard => gbar.wedge(&g),
            Orientation::Flipped => g.wedge(&gbar),
        };
        v = v.wedge(&area.scale(&CycloScalar::i()));
    }
    v
}

/// Result of checking a candidate symplectic form: realness, closedness,
/// invariance, and the exact sign of its top power against the reference
/// volume.
#[derive(Clone, Debug)]
pub struct SymplecticCertificate {
    pub orientation: Orientation,
    pub is_real: bool,
    /// conj(omega) - omega when realness fails.
    pub realness_witness: Option<Form>,
    pub is_closed: bool,
    /// d(omega) when closedness fails.
    pub closedness_witness: Option<Form>,
    pub is_invariant: bool,
    /// act(omega) - omega when invariance fails.
    pub invariance_witness: Option<Form>,
    /// omega^n = c * V for the reference volume V.
    pub top_coefficient: CycloScalar,
    /// Exact sign of the coefficient; None when it is not totally real.
    pub top_sign: Option<Sign>,
}

impl SymplecticCertificate {
    /// Valid iff the form is real, closed, and positively oriented.
    pub fn is_valid(&self) -> bool {
        self.is_real && self.is_closed && self.top_sign == Some(Sign::Positive)
    }

    pub fn is_degenerate(&self) -> bool {
        self.top_coefficient.is_zero()
    }
}

/// Verify conj(omega) = omega, d(omega) = 0, act(omega) = omega, and
/// compute omega^n = c * V with the exact sign of c.
pub fn check_symplectic(
    spec: &AlgebraSpec,
    action: &ActionSpec,
    omega: &Form,
    orientation: Orientation,
) -> Result<SymplecticCertificate, GeometryError> {
    if omega.homogeneous_degree() != Some(2) {
        return Err(GeometryError::NotDegreeTwo);
    }
    let gens = spec.generators();
    let conj_diff = omega.conj(gens).sub(omega);
    let d_omega = spec.differential(omega);
    let act_diff = action.act(1, omega).sub(omega);

    let n = gens.pair_count() as u32;
    let top = omega.wedge_pow(n);
    let volume = reference_volume(spec, orientation);
    let top_mono = spec.monomials(spec.top_degree())[0];
    let v_coeff = volume.coefficient(top_mono);
    let c = &top.coefficient(top_mono) * &v_coeff.inv().expect("volume is nonzero");
    let top_sign = c.sign_of_real().ok();

    Ok(SymplecticCertificate {
        orientation,
        is_real: conj_diff.is_zero(),
        realness_witness: (!conj_diff.is_zero()).then_some(conj_diff),
        is_closed: d_omega.is_zero(),
        closedness_witness: (!d_omega.is_zero()).then_some(d_omega),
        is_invariant: act_diff.is_zero(),
        invariance_witness: (!act_diff.is_zero()).then_some(act_diff),
        top_coefficient: c,
        top_sign,
    })
}

/// Per-generator integrability checks for the invariant complex structure:
/// no (0,2) component in the differential of any (1,0) generator.
#[derive(Clone, Debug)]
pub struct IntegrabilityCertificate {
    pub checks: Vec<IntegrabilityCheck>,
}

#[derive(Clone, Debug)]
pub struct IntegrabilityCheck {
    pub generator: String,
    pub antiholomorphic_part: Form,
    pub ok: bool,
}

impl IntegrabilityCertificate {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<&IntegrabilityCheck> {
        self.checks.iter().find(|c| !c.ok)
    }
}

pub fn check_integrability(spec: &AlgebraSpec) -> IntegrabilityCertificate {
    let gens = spec.generators();
    let checks = (0..gens.pair_count())
        .map(|i| {
            let split = spec.generator_differential(i).bidegree_split(gens);
            let bad = split.get(&(0, 2)).cloned().unwrap_or_else(Form::zero);
            IntegrabilityCheck {
                generator: gens.name(i).to_string(),
                ok: bad.is_zero(),
                antiholomorphic_part: bad,
            }
        })
        .collect();
    IntegrabilityCertificate { checks }
}

/// Shared data for Lefschetz statements on the invariant cohomology:
/// the invariant H^2, H^4, H^6, the symmetric triple-product tensor on
/// H^2, and the cup pairing H^2 x H^4 -> H^6.
pub struct LefschetzContext {
    pub orientation: Orientation,
    pub h2: CohomologyBasis,
    pub h4: CohomologyBasis,
    pub h6: CohomologyBasis,
    /// T[i][j][k]: coordinate of rep_i ^ rep_j ^ rep_k against the class of
    /// the reference volume.
    pub triple: Vec<Vec<Vec<CycloScalar>>>,
    /// Cup pairing matrix of the H^2 and H^4 bases in H^6 coordinates.
    pub pairing: Matrix,
    pub pairing_det: CycloScalar,
}

impl LefschetzContext {
    // Symmetric tensor indexing stays readable as plain index loops.
    #[allow(clippy::needless_range_loop)]
    pub fn new(
        spec: &AlgebraSpec,
        action: &ActionSpec,
        orientation: Orientation,
    ) -> Result<LefschetzContext, GeometryError> {
        if spec.generators().pair_count() != 3 {
            return Err(GeometryError::NeedThreePairs);
        }
        let h2 = invariant_cohomology(spec, action, 2)?;
        let h4 = invariant_cohomology(spec, action, 4)?;
        let h6 = invariant_cohomology(spec, action, 6)?;
        if h6.dim() != 1 {
            return Err(GeometryError::TopClassTrivial);
        }
        let volume = reference_volume(spec, orientation);
        let v_coord = h6.reduce(spec, &volume)?[0].clone();
        if v_coord.is_zero() {
            return Err(GeometryError::TopClassTrivial);
        }
        let v_inv = v_coord.inv().expect("nonzero");

        let n = h2.dim();
        let reps = h2.representatives();
        let mut triple = vec![vec![vec![CycloScalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in i..n {
                let ij = reps[i].wedge(&reps[j]);
                for k in j..n {
                    let prod = ij.wedge(&reps[k]);
                    let c = if prod.is_zero() {
                        CycloScalar::zero()
                    } else {
                        &h6.reduce(spec, &prod)?[0] * &v_inv
                    };
                    // Degree-2 classes commute, so fill all six orderings.
                    for (a, b, c3) in [
                        (i, j, k),
                        (i, k, j),
                        (j, i, k),
                        (j, k, i),
                        (k, i, j),
                        (k, j, i),
                    ] {
                        triple[a][b][c3] = c.clone();
                    }
                }
            }
        }

        let mut pairing = Matrix::zero(n, h4.dim());
        for i in 0..n {
            for j in 0..h4.dim() {
                let prod = reps[i].wedge(&h4.representatives()[j]);
                let c = if prod.is_zero() {
                    CycloScalar::zero()
                } else {
                    &h6.reduce(spec, &prod)?[0] * &v_inv
                };
                *pairing.at_mut(i, j) = c;
            }
        }
        let pairing_det = if pairing.rows() == pairing.cols() {
            pairing.det()
        } else {
            CycloScalar::zero()
        };
        Ok(LefschetzContext {
            orientation,
            h2,
            h4,
            h6,
            triple,
            pairing,
            pairing_det,
        })
    }

    /// T evaluated on three coordinate vectors.
    #[allow(clippy::needless_range_loop)]
    pub fn triple_eval(
        &self,
        x: &[CycloScalar],
        y: &[CycloScalar],
        z: &[CycloScalar],
    ) -> CycloScalar {
        let n = self.h2.dim();
        let mut acc = CycloScalar::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    if z[k].is_zero() || self.triple[i][j][k].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&(&x[i] * &y[j]) * &(&z[k] * &self.triple[i][j][k]));
                }
            }
        }
        acc
    }
}

/// The matrix of cup product with a fixed invariant 2-class, its rank and
/// kernel; the hard Lefschetz property holds iff the matrix is square and
/// invertible.
#[derive(Clone, Debug)]
pub struct LefschetzReport {
    pub omega_coords: Vec<CycloScalar>,
    /// Columns are images of the H^2 basis in the H^4 basis.
    pub matrix: Matrix,
    pub rank: usize,
    pub kernel_coords: Vec<Vec<CycloScalar>>,
    pub kernel_forms: Vec<Form>,
    pub lefschetz_holds: bool,
}

pub fn lefschetz_report(
    spec: &AlgebraSpec,
    ctx: &LefschetzContext,
    omega: &Form,
) -> Result<LefschetzReport, GeometryError> {
    let omega_coords = ctx
        .h2
        .reduce(spec, omega)
        .map_err(|_| GeometryError::NotInvariantClass)?;
    let omega_rep = ctx.h2.form_for_coords(&omega_coords)?;
    let n = ctx.h2.dim();
    let mut cols = Vec::with_capacity(n);
    for rep in ctx.h2.representatives() {
        let image = omega_rep.wedge(rep);
        cols.push(ctx.h4.reduce(spec, &image)?);
    }
    let matrix = Matrix::from_columns(ctx.h4.dim(), &cols);
    let rank = matrix.rank();
    let kernel_coords = matrix.kernel_basis();
    let kernel_forms = kernel_coords
        .iter()
        .map(|v| ctx.h2.form_for_coords(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LefschetzReport {
        omega_coords,
        lefschetz_holds: rank == n && ctx.h4.dim() == n,
        matrix,
        rank,
        kernel_coords,
        kernel_forms,
    })
}

/// A certificate that a fixed 2-class kills every triple product, hence
/// lies in the kernel of the Lefschetz map of every invariant 2-class.
#[derive(Clone, Debug)]
pub struct UniversalKernelCertificate {
    pub beta_coords: Vec<CycloScalar>,
    pub pairs_checked: usize,
    /// First basis pair with a nonzero triple product, if any.
    pub witness: Option<(usize, usize, CycloScalar)>,
    pub triple_products_vanish: bool,
    /// Nondegeneracy of the cup pairing H^2 x H^4 -> H^6, which upgrades
    /// vanishing triple products to a kernel statement for every class.
    pub pairing_nondegenerate: bool,
}

impl UniversalKernelCertificate {
    pub fn granted(&self) -> bool {
        self.triple_products_vanish && self.pairing_nondegenerate
    }
}

pub fn universal_kernel_certificate(
    spec: &AlgebraSpec,
    ctx: &LefschetzContext,
    beta: &Form,
) -> Result<UniversalKernelCertificate, GeometryError> {
    let beta_coords = ctx
        .h2
        .reduce(spec, beta)
        .map_err(|_| GeometryError::NotInvariantClass)?;
    if beta_coords.iter().all(|c| c.is_zero()) {
        return Err(GeometryError::ZeroBeta);
    }
    let n = ctx.h2.dim();
    let mut witness = None;
    let mut pairs = 0;
    let mut unit = vec![CycloScalar::zero(); n];
    'outer: for i in 0..n {
        for j in i..n {
            pairs += 1;
            unit.iter_mut().for_each(|c| *c = CycloScalar::zero());
            unit[i] = CycloScalar::one();
            let mut ej = vec![CycloScalar::zero(); n];
            ej[j] = CycloScalar::one();
            let t = ctx.triple_eval(&beta_coords, &unit, &ej);
            if !t.is_zero() {
                witness = Some((i, j, t));
                break 'outer;
            }
        }
    }
    Ok(UniversalKernelCertificate {
        beta_coords,
        pairs_checked: pairs,
        triple_products_vanish: witness.is_none(),
        witness,
        pairing_nondegenerate: !ctx.pairing_det.is_zero(),
    })
}

/// Basis of all classes with identically vanishing triple products; the
/// kernel of beta -> T(beta, ., .) as a map into symmetric 2-tensors.
pub fn universal_kernel_search(ctx: &LefschetzContext) -> Vec<Vec<CycloScalar>> {
    let n = ctx.h2.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let row: Vec<CycloScalar> = (0..n).map(|k| ctx.triple[k][i][j].clone()).collect();
            rows.push(row);
        }
    }
    let mut m = Matrix::zero(rows.len(), n);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            *m.at_mut(r, c) = v.clone();
        }
    }
    m.kernel_basis()
}
