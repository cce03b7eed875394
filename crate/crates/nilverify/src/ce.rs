//! The Chevalley–Eilenberg complex of a nilpotent Lie algebra presented by
//! structure differentials, with exact cohomology computation.
//!
//! The differential is the unique degree +1 graded derivation extending the
//! generator differentials. Cohomology bases are computed by elimination
//! over Q(zeta_12) with representatives chosen from the monomial echelon in
//! graded-lexicographic order, so outputs are deterministic. For the
//! nilmanifold quotient of a nilpotent Lie group this complex computes the
//! manifold's complex-coefficient cohomology.

use thiserror::Error;

use crate::exterior::{degree_basis, Form, GeneratorSet, Monomial};
use crate::linalg::{Matrix, Solver, SpanReducer};
use crate::scalar::CycloScalar;

#[derive(Debug, Error)]
pub enum CeError {
    #[error("expected one differential per generator ({expected}), got {got}")]
    WrongDifferentialCount { expected: usize, got: usize },
    #[error("differential of `{0}` is not homogeneous of degree 2")]
    DifferentialNotDegreeTwo(String),
    #[error("differential of `{gen}` conflicts with conjugation: d(conj) = {got}, expected {expected}")]
    ConjugationMismatch {
        gen: String,
        got: String,
        expected: String,
    },
    #[error("form is not homogeneous of one degree")]
    NotHomogeneous,
    #[error("form is not closed; d(form) = {0}")]
    NotClosed(String),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(u32),
    #[error("coordinate vector has wrong length: expected {expected}, got {got}")]
    BadCoordinates { expected: usize, got: usize },
    #[error("closed form does not reduce into the basis (internal error)")]
    ReductionFailed,
}

/// Presentation of the complex: generators plus one degree-2 differential
/// per generator (zero when omitted).
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    gens: GeneratorSet,
    diffs: Vec<Form>,
}

impl AlgebraSpec {
    /// Validates shape and conjugation compatibility. Flatness (d^2 = 0) is
    /// a separate certificate so that broken presentations can be examined.
    pub fn new(gens: GeneratorSet, diffs: Vec<Form>) -> Result<AlgebraSpec, CeError> {
        if diffs.len() != gens.len() {
            return Err(CeError::WrongDifferentialCount {
                expected: gens.len(),
                got: diffs.len(),
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            if !d.is_zero() && d.homogeneous_degree() != Some(2) {
                return Err(CeError::DifferentialNotDegreeTwo(gens.name(i).to_string()));
            }
        }
        let spec = AlgebraSpec { gens, diffs };
        for i in 0..spec.gens.len() {
            let j = spec.gens.conj_partner(i);
            let expected = spec.diffs[i].conj(&spec.gens);
            if spec.diffs[j] != expected {
                return Err(CeError::ConjugationMismatch {
                    gen: spec.gens.name(i).to_string(),
                    got: spec.diffs[j].display(&spec.gens).to_string(),
                    expected: expected.display(&spec.gens).to_string(),
                });
            }
        }
        Ok(spec)
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn generator_differential(&self, i: usize) -> &Form {
        &self.diffs[i]
    }

    pub fn top_degree(&self) -> u32 {
        self.gens.len() as u32
    }

    /// The graded derivation: d(x ^ y) = dx ^ y + (-1)^{|x|} x ^ dy.
    pub fn differential(&self, a: &Form) -> Form {
        let mut out = Form::zero();
        for (m, coeff) in a.terms() {
            let positions: Vec<usize> = m.positions().collect();
            for (slot, &p) in positions.iter().enumerate() {
                if self.diffs[p].is_zero() {
                    continue;
                }
                // Prefix of length `slot` passes over d(g_p): sign (-1)^slot.
                let before = Monomial::from_positions(&positions[..slot]).unwrap();
                let after = Monomial::from_positions(&positions[slot + 1..]).unwrap();
                let mut piece = Form::from_monomial(before, coeff.clone())
                    .wedge(&self.diffs[p])
                    .wedge(&Form::from_monomial(after, CycloScalar::one()));
                if slot % 2 == 1 {
                    piece = piece.neg();
                }
                out = out.add(&piece);
            }
        }
        out
    }

    /// Monomial basis of degree k in graded-lex order.
    pub fn monomials(&self, k: u32) -> Vec<Monomial> {
        degree_basis(self.gens.len(), k)
    }

    /// Coordinates of a homogeneous degree-k form in the monomial basis.
    pub fn coords(&self, a: &Form, k: u32) -> Result<Vec<CycloScalar>, CeError> {
        match a.homogeneous_degree() {
            Some(d) if d == k || a.is_zero() => {}
            _ => return Err(CeError::NotHomogeneous),
        }
        Ok(self
            .monomials(k)
            .iter()
            .map(|m| a.coefficient(*m))
            .collect())
    }

    pub fn form_from_coords(&self, k: u32, coords: &[CycloScalar]) -> Form {
        let mons = self.monomials(k);
        assert_eq!(coords.len(), mons.len());
        let mut f = Form::zero();
        for (m, c) in mons.iter().zip(coords) {
            f.add_term(*m, c);
        }
        f
    }

    /// Matrix of d from degree k to degree k+1 in the monomial bases.
    pub fn d_matrix(&self, k: u32) -> Matrix {
        let source = self.monomials(k);
        let cols: Vec<Vec<CycloScalar>> = source
            .iter()
            .map(|m| {
                let dm = self.differential(&Form::from_monomial(*m, CycloScalar::one()));
                self.coords(&dm, k + 1).expect("d raises degree by one")
            })
            .collect();
        Matrix::from_columns(self.monomials(k + 1).len(), &cols)
    }
}

/// Outcome of checking d(d(g)) = 0 on every generator.
#[derive(Clone, Debug)]
pub struct FlatnessCertificate {
    pub checks: Vec<FlatnessCheck>,
}

#[derive(Clone, Debug)]
pub struct FlatnessCheck {
    pub generator: String,
    pub d_squared: Form,
    pub ok: bool,
}

impl FlatnessCertificate {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<&FlatnessCheck> {
        self.checks.iter().find(|c| !c.ok)
    }
}

/// d^2 = 0 on generators, which extends to the whole algebra since d^2 is
/// a derivation; equivalent to the Jacobi identity for the dual algebra.
pub fn verify_flatness(spec: &AlgebraSpec) -> FlatnessCertificate {
    let checks = (0..spec.generators().len())
        .map(|i| {
            let d2 = spec.differential(spec.generator_differential(i));
            FlatnessCheck {
                generator: spec.generators().name(i).to_string(),
                ok: d2.is_zero(),
                d_squared: d2,
            }
        })
        .collect();
    FlatnessCertificate { checks }
}

/// A degree's cohomology: representatives plus the reduction data needed to
/// express any closed form as basis coordinates modulo exact forms.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degree: u32,
    monomials: Vec<Monomial>,
    reps: Vec<Form>,
    rep_vectors: Vec<Vec<CycloScalar>>,
    /// Precomputed solver for [representatives | exact forms].
    solver: Solver,
}

impl CohomologyBasis {
    pub fn from_parts(
        degree: u32,
        monomials: Vec<Monomial>,
        reps_coords: Vec<Vec<CycloScalar>>,
        image_cols: Vec<Vec<CycloScalar>>,
        spec: &AlgebraSpec,
    ) -> CohomologyBasis {
        let reps = reps_coords
            .iter()
            .map(|v| spec.form_from_coords(degree, v))
            .collect();
        let mut cols = reps_coords.clone();
        cols.extend(image_cols);
        let solver = Solver::new(&Matrix::from_columns(monomials.len(), &cols));
        CohomologyBasis {
            degree,
            monomials,
            reps,
            rep_vectors: reps_coords,
            solver,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// The monomial basis the coordinates refer to.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn representatives(&self) -> &[Form] {
        &self.reps
    }

    pub fn representative_vectors(&self) -> &[Vec<CycloScalar>] {
        &self.rep_vectors
    }

    /// The class of a closed form as coordinates in this basis.
    pub fn reduce(&self, spec: &AlgebraSpec, a: &Form) -> Result<Vec<CycloScalar>, CeError> {
        let da = spec.differential(a);
        if !da.is_zero() {
            return Err(CeError::NotClosed(
                da.display(spec.generators()).to_string(),
            ));
        }
        let v = spec.coords(a, self.degree)?;
        let x = self.solver.solve(&v).ok_or(CeError::ReductionFailed)?;
        Ok(x[..self.reps.len()].to_vec())
    }

    /// Linear combination of representatives for a coordinate vector.
    pub fn form_for_coords(&self, coords: &[CycloScalar]) -> Result<Form, CeError> {
        if coords.len() != self.reps.len() {
            return Err(CeError::BadCoordinates {
                expected: self.reps.len(),
                got: coords.len(),
            });
        }
        let mut f = Form::zero();
        for (rep, c) in self.reps.iter().zip(coords) {
            f = f.add(&rep.scale(c));
        }
        Ok(f)
    }
}

/// Exact kernel/image computation in degree k with echelon representatives.
pub fn cohomology(spec: &AlgebraSpec, k: u32) -> Result<CohomologyBasis, CeError> {
    if k > spec.top_degree() {
        return Err(CeError::DegreeOutOfRange(k));
    }
    let monomials = spec.monomials(k);
    let kernel = spec.d_matrix(k).kernel_basis();
    let image_cols: Vec<Vec<CycloScalar>> = if k == 0 {
        Vec::new()
    } else {
        let dm = spec.d_matrix(k - 1);
        (0..dm.cols()).map(|j| dm.column(j)).collect()
    };
    let mut span = SpanReducer::new();
    for col in &image_cols {
        span.insert(col);
    }
    let mut reps_coords = Vec::new();
    for v in kernel {
        if let Some(reduced) = span.insert(&v) {
            reps_coords.push(reduced);
        }
    }
    Ok(CohomologyBasis::from_parts(
        k,
        monomials,
        reps_coords,
        image_cols,
        spec,
    ))
}

/// All degrees at once; index by degree.
pub fn cohomology_ring(spec: &AlgebraSpec) -> Result<Vec<CohomologyBasis>, CeError> {
    (0..=spec.top_degree()).map(|k| cohomology(spec, k)).collect()
}

/// Either a primitive for an exact form, or its nonzero class coordinates.
#[derive(Clone, Debug)]
pub enum Exactness {
    Exact(Form),
    NonExact { class_coords: Vec<CycloScalar> },
}

/// Solve d(x) = a over the full monomial basis one degree down.
pub fn exactness_witness(spec: &AlgebraSpec, a: &Form) -> Result<Exactness, CeError> {
    if a.is_zero() {
        return Ok(Exactness::Exact(Form::zero()));
    }
    let k = a.homogeneous_degree().ok_or(CeError::NotHomogeneous)?;
    let da = spec.differential(a);
    if !da.is_zero() {
        return Err(CeError::NotClosed(
            da.display(spec.generators()).to_string(),
        ));
    }
    let target = spec.coords(a, k)?;
    if k == 0 {
        // Nonzero constants are never exact.
        let basis = cohomology(spec, 0)?;
        return Ok(Exactness::NonExact {
            class_coords: basis.reduce(spec, a)?,
        });
    }
    match spec.d_matrix(k - 1).solve(&target) {
        Some(x) => Ok(Exactness::Exact(spec.form_from_coords(k - 1, &x))),
        None => {
            let basis = cohomology(spec, k)?;
            Ok(Exactness::NonExact {
                class_coords: basis.reduce(spec, a)?,
            })
        }
    }
}

/// Cup product on class coordinates: wedge representatives and reduce into
/// the target basis; independent of the representative choice.
pub fn cup(
    spec: &AlgebraSpec,
    left: &CohomologyBasis,
    right: &CohomologyBasis,
    target: &CohomologyBasis,
    x: &[CycloScalar],
    y: &[CycloScalar],
) -> Result<Vec<CycloScalar>, CeError> {
    let fx = left.form_for_coords(x)?;
    let fy = right.form_for_coords(y)?;
    target.reduce(spec, &fx.wedge(&fy))
}
