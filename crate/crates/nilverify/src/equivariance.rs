//! Finite cyclic group actions that scale each generator by a root of
//! unity, their compatibility certificates, and the invariant subcomplex.
//!
//! The invariant cohomology is computed two independent ways and asserted
//! equal: as the eigenvalue-1 eigenspace of the induced action on each
//! cohomology group, and by averaging closed cochains over the group. Over
//! a field of characteristic zero the two agree, so running both is a free
//! correctness oracle.

use thiserror::Error;

use crate::ce::{cohomology, AlgebraSpec, CeError, CohomologyBasis};
use crate::exterior::Form;
use crate::linalg::{Matrix, SpanReducer};
use crate::scalar::CycloScalar;

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("expected one eigenvalue per generator ({expected}), got {got}")]
    WrongEigenvalueCount { expected: usize, got: usize },
    #[error("eigenvalue {value} of `{gen}` is not a root of unity in the scalar field")]
    NotRootOfUnity { gen: String, value: String },
    #[error("eigenvalue {value} of `{gen}` does not satisfy the order-{order} identity")]
    OrderViolation {
        gen: String,
        value: String,
        order: u32,
    },
    #[error("eigenvalue of `{gen}` conflicts with conjugation pairing")]
    ConjugationMismatch { gen: String },
    #[error("action does not commute with the differential (witness `{gen}`)")]
    NotEquivariant { gen: String },
    #[error(transparent)]
    Cohomology(#[from] CeError),
}

/// A diagonal action of a cyclic group: one root-of-unity eigenvalue per
/// generator, closed under conjugation.
#[derive(Clone, Debug)]
pub struct ActionSpec {
    order: u32,
    eigenvalues: Vec<CycloScalar>,
}

impl ActionSpec {
    pub fn new(
        spec: &AlgebraSpec,
        order: u32,
        eigenvalues: Vec<CycloScalar>,
    ) -> Result<ActionSpec, ActionError> {
        let gens = spec.generators();
        if eigenvalues.len() != gens.len() {
            return Err(ActionError::WrongEigenvalueCount {
                expected: gens.len(),
                got: eigenvalues.len(),
            });
        }
        for (i, e) in eigenvalues.iter().enumerate() {
            let Some(ord) = e.root_order() else {
                return Err(ActionError::NotRootOfUnity {
                    gen: gens.name(i).to_string(),
                    value: e.to_string(),
                });
            };
            if !order.is_multiple_of(ord) {
                return Err(ActionError::OrderViolation {
                    gen: gens.name(i).to_string(),
                    value: e.to_string(),
                    order,
                });
            }
        }
        for i in 0..gens.len() {
            if eigenvalues[gens.conj_partner(i)] != eigenvalues[i].conj() {
                return Err(ActionError::ConjugationMismatch {
                    gen: gens.name(i).to_string(),
                });
            }
        }
        Ok(ActionSpec { order, eigenvalues })
    }

    /// Trivial action (order 1, all eigenvalues 1).
    pub fn trivial(spec: &AlgebraSpec) -> ActionSpec {
        ActionSpec {
            order: 1,
            eigenvalues: vec![CycloScalar::one(); spec.generators().len()],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn eigenvalue(&self, gen: usize) -> &CycloScalar {
        &self.eigenvalues[gen]
    }

    /// The algebra homomorphism scaling each monomial by the product of its
    /// generators' eigenvalues raised to `power`.
    pub fn act(&self, power: u32, a: &Form) -> Form {
        let mut out = Form::zero();
        for (m, c) in a.terms() {
            let mut factor = CycloScalar::one();
            for p in m.positions() {
                factor = &factor * &self.eigenvalues[p];
            }
            let factor = factor.pow(power as i64).expect("nonnegative power");
            out.add_term(*m, &(c * &factor));
        }
        out
    }

    /// Group average (1/n) sum of all powers; a projector onto invariants.
    pub fn average(&self, a: &Form) -> Form {
        let mut sum = Form::zero();
        for k in 0..self.order {
            sum = sum.add(&self.act(k, a));
        }
        sum.scale(
            &CycloScalar::from_int(self.order as i64)
                .inv()
                .expect("order is nonzero"),
        )
    }
}

/// Per-generator commutation and order checks with witnesses.
#[derive(Clone, Debug)]
pub struct EquivarianceCertificate {
    pub order: u32,
    pub checks: Vec<EquivarianceCheck>,
}

#[derive(Clone, Debug)]
pub struct EquivarianceCheck {
    pub generator: String,
    /// act(rho, 1, d g) as a form.
    pub action_then_d: Form,
    /// d(act(rho, 1, g)) as a form.
    pub d_then_action: Form,
    pub commutes: bool,
    /// eigenvalue(g)^order, which must be 1.
    pub power_identity: bool,
}

impl EquivarianceCertificate {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.commutes && c.power_identity)
    }

    pub fn first_failure(&self) -> Option<&EquivarianceCheck> {
        self.checks.iter().find(|c| !(c.commutes && c.power_identity))
    }
}

/// Check that the action commutes with the differential on every generator
/// and that the order-n power of the action is the identity.
pub fn verify_equivariance(spec: &AlgebraSpec, action: &ActionSpec) -> EquivarianceCertificate {
    let gens = spec.generators();
    let checks = (0..gens.len())
        .map(|i| {
            let g = Form::generator(i);
            let lhs = action.act(1, spec.generator_differential(i));
            let rhs = spec.differential(&action.act(1, &g));
            let pow_ok = action
                .eigenvalue(i)
                .pow(action.order() as i64)
                .expect("nonnegative power")
                .is_one();
            EquivarianceCheck {
                generator: gens.name(i).to_string(),
                commutes: lhs == rhs,
                action_then_d: lhs,
                d_then_action: rhs,
                power_identity: pow_ok,
            }
        })
        .collect();
    EquivarianceCertificate {
        order: action.order(),
        checks,
    }
}

/// The fixed subspace of the induced action on H^k, with representatives
/// that are themselves invariant forms.
///
/// Computed as the eigenvalue-1 eigenspace of the (finite order, exact)
/// matrix of the action on cohomology, then cross-checked against the
/// subspace obtained by averaging closed cochains.
pub fn invariant_cohomology(
    spec: &AlgebraSpec,
    action: &ActionSpec,
    k: u32,
) -> Result<CohomologyBasis, ActionError> {
    let cert = verify_equivariance(spec, action);
    if let Some(fail) = cert.first_failure() {
        return Err(ActionError::NotEquivariant {
            gen: fail.generator.clone(),
        });
    }
    let full = cohomology(spec, k)?;
    let n = full.dim();
    let monomials = spec.monomials(k);

    // Matrix of the action on H^k in the full basis.
    let mut cols = Vec::with_capacity(n);
    for rep in full.representatives() {
        cols.push(full.reduce(spec, &action.act(1, rep))?);
    }
    let a = Matrix::from_columns(n, &cols);
    let mut a_minus_id = a.clone();
    for i in 0..n {
        let v = a_minus_id.at(i, i) - &CycloScalar::one();
        *a_minus_id.at_mut(i, i) = v;
    }
    let eigen_coords = a_minus_id.kernel_basis();

    // Averaging route: project each closed monomial-space vector and span
    // the resulting classes.
    let mut averaged_span = SpanReducer::new();
    let d_k = spec.d_matrix(k);
    for z in d_k.kernel_basis() {
        let form = spec.form_from_coords(k, &z);
        let projected = action.average(&form);
        debug_assert!(spec.differential(&projected).is_zero());
        let class = full.reduce(spec, &projected)?;
        averaged_span.insert(&class);
    }
    let mut eigen_span = SpanReducer::new();
    for v in &eigen_coords {
        eigen_span.insert(v);
    }
    assert_eq!(
        averaged_span.rank(),
        eigen_span.rank(),
        "averaging and eigenspace routes disagree in degree {k}"
    );
    for v in &eigen_coords {
        assert!(
            averaged_span.contains(v),
            "eigenspace vector escapes the averaged span in degree {k}"
        );
    }

    // Invariant representatives: average the eigencoordinate combinations.
    // Averaging fixes the class and lands on a literally invariant form.
    let mut rep_vectors = Vec::new();
    for v in &eigen_coords {
        let rep = action.average(&full.form_for_coords(v)?);
        debug_assert_eq!(action.act(1, &rep), rep);
        rep_vectors.push(spec.coords(&rep, k)?);
    }
    let image_cols: Vec<Vec<CycloScalar>> = if k == 0 {
        Vec::new()
    } else {
        let dm = spec.d_matrix(k - 1);
        (0..dm.cols()).map(|j| dm.column(j)).collect()
    };
    Ok(CohomologyBasis::from_parts(
        k,
        monomials,
        rep_vectors,
        image_cols,
        spec,
    ))
}

/// Invariant cohomology in every degree.
pub fn invariant_ring(
    spec: &AlgebraSpec,
    action: &ActionSpec,
) -> Result<Vec<CohomologyBasis>, ActionError> {
    (0..=spec.top_degree())
        .map(|k| invariant_cohomology(spec, action, k))
        .collect()
}
