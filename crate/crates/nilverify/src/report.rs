//! Report structures for every CLI command: deterministic JSON and plain
//! text renderings of the underlying certificates.
//!
//! Byte determinism matters (golden files diff these), so everything is
//! built from exact values with fixed field order and sorted containers,
//! and every report carries scope notes separating what was checked from
//! what is assumed.

use serde::Serialize;
use thiserror::Error;

use crate::ce::{cohomology_ring, CeError, CohomologyBasis};
use crate::config::ManifoldConfig;
use crate::equivariance::{invariant_ring, ActionError};
use crate::exterior::Form;
use crate::fixed_locus::{
    curve_quotient, fixed_strata, isotropy_name, orbit_decomposition, CurveQuotient,
    FixedLocusError, Stratum, StratumKind,
};
use crate::geometry::{
    check_integrability, check_symplectic, lefschetz_report, reference_volume,
    universal_kernel_certificate, universal_kernel_search, GeometryError, LefschetzContext,
    Orientation,
};
use crate::scalar::{CycloScalar, Sign};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("config declares no form named `{0}`")]
    MissingForm(String),
    #[error("config declares no lattice model")]
    MissingLattice,
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    FixedLocus(#[from] FixedLocusError),
}

/// Scope note attached to every report.
pub const SCOPE_MODEL: &str = "Certificates concern the algebraic model: the nilmanifold \
presented by the structure equations and its quotient by the configured action.";
/// Extra note for resolution-level conclusions.
pub const SCOPE_RESOLUTION: &str = "Conclusions about any smooth resolution of the quotient rest \
on geometric arguments outside this tool; only quotient-level algebra is machine-checked here.";
/// Extra note for the Lefschetz kernel scope.
pub const SCOPE_KERNEL: &str = "The kernel certificate covers degree-2 classes coming from the \
invariant cohomology; classes supported near exceptional sets of a resolution are not examined.";

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: String,
    pub orientation: Orientation,
    pub status: String,
    pub scope_notes: Vec<String>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    fn new(
        command: &str,
        orientation: Orientation,
        passed: bool,
        notes: Vec<&str>,
        result: T,
    ) -> Report<T> {
        Report {
            command: command.to_string(),
            orientation,
            status: if passed { "pass" } else { "fail" }.to_string(),
            scope_notes: notes.into_iter().map(String::from).collect(),
            result,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
pub struct CheckJson {
    pub generator: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub ok: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Serialize)]
pub struct CheckResult {
    pub generators: Vec<String>,
    pub action_order: u32,
    pub flatness: CertificateJson,
    pub equivariance: CertificateJson,
}

#[derive(Serialize)]
pub struct DegreeJson {
    pub degree: u32,
    pub dim: usize,
    pub representatives: Vec<String>,
}

#[derive(Serialize)]
pub struct CohomologyResult {
    pub dimensions: Vec<usize>,
    pub degrees: Vec<DegreeJson>,
}

#[derive(Serialize)]
pub struct SymplecticResult {
    pub form: String,
    pub reference_volume: String,
    pub real: bool,
    pub closed: bool,
    pub invariant: bool,
    pub degenerate: bool,
    pub top_coefficient: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    pub valid: bool,
}

#[derive(Serialize)]
pub struct ComplexResult {
    pub ok: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Serialize)]
pub struct UniversalKernelJson {
    pub beta: String,
    pub beta_class: Vec<String>,
    pub pairs_checked: usize,
    pub triple_products_vanish: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub pairing_nondegenerate: bool,
    pub granted: bool,
}

#[derive(Serialize)]
pub struct KernelSearchJson {
    pub kernel_dimension: usize,
    pub classes: Vec<String>,
}

#[derive(Serialize)]
pub struct LefschetzResult {
    pub omega: String,
    pub omega_class: Vec<String>,
    pub h2_basis: Vec<String>,
    pub h4_basis: Vec<String>,
    /// Rows of the map from invariant H^2 to invariant H^4.
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
    pub kernel_dimension: usize,
    pub kernel_classes: Vec<String>,
    pub lefschetz_holds: bool,
    pub pairing_determinant: String,
    pub pairing_nondegenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universal_kernel: Option<UniversalKernelJson>,
    pub universal_kernel_search: KernelSearchJson,
}

#[derive(Serialize)]
pub struct StratumJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<String>,
    pub isotropy: Vec<u32>,
    pub isotropy_name: String,
}

#[derive(Serialize)]
pub struct FixedLocusResult {
    pub power: u32,
    pub count: usize,
    pub strata: Vec<StratumJson>,
}

#[derive(Serialize)]
pub struct OrbitJson {
    pub size: usize,
    pub isotropy_name: String,
    pub representative: StratumJson,
}

#[derive(Serialize)]
pub struct BaseComponentJson {
    pub surface: StratumJson,
    pub special_points: Vec<Vec<String>>,
    pub special_isotropy_name: String,
    pub quotient_description: String,
}

#[derive(Serialize)]
pub struct SingularLocusResult {
    pub action_order: u32,
    pub isolated_point_orbit_count: usize,
    pub point_orbits: Vec<OrbitJson>,
    pub surface_orbit_count: usize,
    pub surface_orbits: Vec<OrbitJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_component: Option<BaseComponentJson>,
    pub curve_quotients: Vec<CurveQuotient>,
}

#[derive(Serialize)]
pub struct VerifyAllResult {
    pub check: CheckResult,
    pub betti: CohomologyResult,
    pub invariant_betti: CohomologyResult,
    pub symplectic: SymplecticResult,
    pub complex_structure: ComplexResult,
    pub lefschetz: LefschetzResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_locus: Option<SingularLocusResult>,
    pub failures: Vec<String>,
}

fn scalar_strings(v: &[CycloScalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn basis_strings(cfg: &ManifoldConfig, basis: &CohomologyBasis) -> Vec<String> {
    basis
        .representatives()
        .iter()
        .map(|f| f.display(cfg.spec.generators()).to_string())
        .collect()
}

fn stratum_json(s: &Stratum, order: u32) -> StratumJson {
    match &s.kind {
        StratumKind::Point(p) => StratumJson {
            kind: "point".to_string(),
            point: Some(p.to_cyclo().iter().map(|c| c.to_string()).collect()),
            level: None,
            slope: None,
            offset: None,
            isotropy: s.isotropy.clone(),
            isotropy_name: isotropy_name(&s.isotropy, order),
        },
        StratumKind::Surface {
            level,
            slope,
            offset,
        } => StratumJson {
            kind: "surface".to_string(),
            point: None,
            level: Some(level.to_string()),
            slope: Some(slope.to_string()),
            offset: Some(offset.to_string()),
            isotropy: s.isotropy.clone(),
            isotropy_name: isotropy_name(&s.isotropy, order),
        },
    }
}

pub fn check_result(cfg: &ManifoldConfig) -> CheckResult {
    let gens = cfg.spec.generators();
    CheckResult {
        generators: (0..gens.len()).map(|i| gens.name(i).to_string()).collect(),
        action_order: cfg.action.order(),
        flatness: CertificateJson {
            ok: cfg.flatness.is_ok(),
            checks: cfg
                .flatness
                .checks
                .iter()
                .map(|c| CheckJson {
                    generator: c.generator.clone(),
                    ok: c.ok,
                    witness: (!c.ok).then(|| c.d_squared.display(gens).to_string()),
                })
                .collect(),
        },
        equivariance: CertificateJson {
            ok: cfg.equivariance.is_ok(),
            checks: cfg
                .equivariance
                .checks
                .iter()
                .map(|c| CheckJson {
                    generator: c.generator.clone(),
                    ok: c.commutes && c.power_identity,
                    witness: (!(c.commutes && c.power_identity)).then(|| {
                        format!(
                            "action then d: {}; d then action: {}",
                            c.action_then_d.display(gens),
                            c.d_then_action.display(gens)
                        )
                    }),
                })
                .collect(),
        },
    }
}

pub fn check_report(cfg: &ManifoldConfig, orientation: Orientation) -> Report<CheckResult> {
    let result = check_result(cfg);
    let ok = result.flatness.ok && result.equivariance.ok;
    Report::new("check", orientation, ok, vec![SCOPE_MODEL], result)
}

fn cohomology_result(
    cfg: &ManifoldConfig,
    bases: &[CohomologyBasis],
) -> CohomologyResult {
    CohomologyResult {
        dimensions: bases.iter().map(|b| b.dim()).collect(),
        degrees: bases
            .iter()
            .map(|b| DegreeJson {
                degree: b.degree,
                dim: b.dim(),
                representatives: basis_strings(cfg, b),
            })
            .collect(),
    }
}

pub fn cohomology_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
) -> Result<Report<CohomologyResult>, ReportError> {
    let ring = cohomology_ring(&cfg.spec)?;
    Ok(Report::new(
        "cohomology",
        orientation,
        true,
        vec![SCOPE_MODEL],
        cohomology_result(cfg, &ring),
    ))
}

pub fn invariants_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
) -> Result<Report<CohomologyResult>, ReportError> {
    let ring = invariant_ring(&cfg.spec, &cfg.action)?;
    Ok(Report::new(
        "invariants",
        orientation,
        true,
        vec![SCOPE_MODEL, SCOPE_RESOLUTION],
        cohomology_result(cfg, &ring),
    ))
}

fn symplectic_result(
    cfg: &ManifoldConfig,
    orientation: Orientation,
) -> Result<SymplecticResult, ReportError> {
    let omega = cfg
        .named_form("omega")
        .ok_or_else(|| ReportError::MissingForm("omega".to_string()))?;
    let cert = check_symplectic(&cfg.spec, &cfg.action, omega, orientation)?;
    let gens = cfg.spec.generators();
    Ok(SymplecticResult {
        form: omega.display(gens).to_string(),
        reference_volume: reference_volume(&cfg.spec, orientation)
            .display(gens)
            .to_string(),
        real: cert.is_real,
        closed: cert.is_closed,
        invariant: cert.is_invariant,
        degenerate: cert.is_degenerate(),
        top_coefficient: cert.top_coefficient.to_string(),
        sign: cert.top_sign,
        valid: cert.is_valid(),
    })
}

pub fn symplectic_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
) -> Result<Report<SymplecticResult>, ReportError> {
    let result = symplectic_result(cfg, orientation)?;
    let ok = result.valid && result.invariant;
    Ok(Report::new(
        "symplectic-check",
        orientation,
        ok,
        vec![SCOPE_MODEL],
        result,
    ))
}

fn complex_result(cfg: &ManifoldConfig) -> ComplexResult {
    let cert = check_integrability(&cfg.spec);
    ComplexResult {
        ok: cert.is_ok(),
        checks: cert
            .checks
            .iter()
            .map(|c| CheckJson {
                generator: c.generator.clone(),
                ok: c.ok,
                witness: (!c.ok).then(|| {
                    c.antiholomorphic_part
                        .display(cfg.spec.generators())
                        .to_string()
                }),
            })
            .collect(),
    }
}

pub fn complex_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
) -> Result<Report<ComplexResult>, ReportError> {
    let result = complex_result(cfg);
    let ok = result.ok;
    Ok(Report::new(
        "complex-check",
        orientation,
        ok,
        vec![SCOPE_MODEL],
        result,
    ))
}

fn lefschetz_result(
    cfg: &ManifoldConfig,
    orientation: Orientation,
    omega_override: Option<&Form>,
    beta_override: Option<&Form>,
) -> Result<LefschetzResult, ReportError> {
    let omega = match omega_override {
        Some(f) => f,
        None => cfg
            .named_form("omega")
            .ok_or_else(|| ReportError::MissingForm("omega".to_string()))?,
    };
    let beta = match beta_override {
        Some(f) => Some(f),
        None => cfg.named_form("beta"),
    };
    let gens = cfg.spec.generators();
    let ctx = LefschetzContext::new(&cfg.spec, &cfg.action, orientation)?;
    let rep = lefschetz_report(&cfg.spec, &ctx, omega)?;
    let universal = match beta {
        Some(b) => {
            let cert = universal_kernel_certificate(&cfg.spec, &ctx, b)?;
            Some(UniversalKernelJson {
                beta: b.display(gens).to_string(),
                beta_class: scalar_strings(&cert.beta_coords),
                pairs_checked: cert.pairs_checked,
                triple_products_vanish: cert.triple_products_vanish,
                witness: cert.witness.as_ref().map(|(i, j, t)| {
                    format!(
                        "T(beta, [{}], [{}]) = {}",
                        ctx.h2.representatives()[*i].display(gens),
                        ctx.h2.representatives()[*j].display(gens),
                        t
                    )
                }),
                pairing_nondegenerate: cert.pairing_nondegenerate,
                granted: cert.granted(),
            })
        }
        None => None,
    };
    let search = universal_kernel_search(&ctx);
    let search_classes = search
        .iter()
        .map(|v| {
            ctx.h2
                .form_for_coords(v)
                .map(|f| f.display(gens).to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut matrix_rows = Vec::new();
    for r in 0..rep.matrix.rows() {
        matrix_rows.push(
            (0..rep.matrix.cols())
                .map(|c| rep.matrix.at(r, c).to_string())
                .collect(),
        );
    }
    Ok(LefschetzResult {
        omega: omega.display(gens).to_string(),
        omega_class: scalar_strings(&rep.omega_coords),
        h2_basis: basis_strings(cfg, &ctx.h2),
        h4_basis: basis_strings(cfg, &ctx.h4),
        matrix: matrix_rows,
        rank: rep.rank,
        kernel_dimension: rep.kernel_coords.len(),
        kernel_classes: rep
            .kernel_forms
            .iter()
            .map(|f| f.display(gens).to_string())
            .collect(),
        lefschetz_holds: rep.lefschetz_holds,
        pairing_determinant: ctx.pairing_det.to_string(),
        pairing_nondegenerate: !ctx.pairing_det.is_zero(),
        universal_kernel: universal,
        universal_kernel_search: KernelSearchJson {
            kernel_dimension: search.len(),
            classes: search_classes,
        },
    })
}

pub fn lefschetz_command_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
    omega_override: Option<&Form>,
    beta_override: Option<&Form>,
) -> Result<Report<LefschetzResult>, ReportError> {
    let result = lefschetz_result(cfg, orientation, omega_override, beta_override)?;
    // The command reports facts; it fails only when a requested universal
    // kernel certificate is refused or the pairing degenerates.
    let ok = result.pairing_nondegenerate
        && result
            .universal_kernel
            .as_ref()
            .map(|u| u.granted)
            .unwrap_or(true);
    Ok(Report::new(
        "lefschetz",
        orientation,
        ok,
        vec![SCOPE_MODEL, SCOPE_RESOLUTION, SCOPE_KERNEL],
        result,
    ))
}

pub fn fixed_locus_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
    power: u32,
) -> Result<Report<FixedLocusResult>, ReportError> {
    if cfg.lattice.is_none() {
        return Err(ReportError::MissingLattice);
    }
    let action = cfg.lattice_action()?;
    let strata = fixed_strata(&action, power)?;
    let result = FixedLocusResult {
        power,
        count: strata.len(),
        strata: strata
            .iter()
            .map(|s| stratum_json(s, action.order()))
            .collect(),
    };
    Ok(Report::new(
        "fixed-locus",
        orientation,
        true,
        vec![SCOPE_MODEL],
        result,
    ))
}

fn singular_locus_result(cfg: &ManifoldConfig) -> Result<SingularLocusResult, ReportError> {
    let action = cfg.lattice_action()?;
    let order = action.order();
    let mut point_strata: Vec<Stratum> = Vec::new();
    let mut surface_strata: Vec<Stratum> = Vec::new();
    let mut seen_points = std::collections::BTreeSet::new();
    let mut seen_surfaces = std::collections::BTreeSet::new();
    for k in 1..order {
        for s in fixed_strata(&action, k)? {
            match &s.kind {
                StratumKind::Point(p) => {
                    if seen_points.insert(p.clone()) {
                        point_strata.push(s);
                    }
                }
                StratumKind::Surface {
                    level,
                    slope,
                    offset,
                } => {
                    if seen_surfaces.insert((level.clone(), slope.clone(), offset.clone())) {
                        surface_strata.push(s);
                    }
                }
            }
        }
    }

    // Points fixed by the whole group sit on the base surface; the rest
    // form proper orbits of isolated orbifold points.
    let (special, ordinary): (Vec<Stratum>, Vec<Stratum>) = point_strata
        .into_iter()
        .partition(|s| s.isotropy.len() == order as usize);
    let point_orbits_raw = orbit_decomposition(&action, &ordinary)?;
    let point_orbits: Vec<OrbitJson> = point_orbits_raw
        .iter()
        .map(|o| OrbitJson {
            size: o.members.len(),
            isotropy_name: isotropy_name(&ordinary[o.representative].isotropy, order),
            representative: stratum_json(&ordinary[o.representative], order),
        })
        .collect();

    let (base, others): (Vec<Stratum>, Vec<Stratum>) =
        surface_strata.into_iter().partition(|s| match &s.kind {
            StratumKind::Surface {
                level,
                slope,
                offset,
            } => level.is_zero() && slope.is_zero() && offset.is_zero(),
            _ => false,
        });
    let surface_orbits_raw = orbit_decomposition(&action, &others)?;
    let surface_orbits: Vec<OrbitJson> = surface_orbits_raw
        .iter()
        .map(|o| OrbitJson {
            size: o.members.len(),
            isotropy_name: isotropy_name(&others[o.representative].isotropy, order),
            representative: stratum_json(&others[o.representative], order),
        })
        .collect();

    let base_component = base.first().map(|s| BaseComponentJson {
        surface: stratum_json(s, order),
        special_points: special
            .iter()
            .map(|s| match &s.kind {
                StratumKind::Point(p) => p.to_cyclo().iter().map(|c| c.to_string()).collect(),
                _ => unreachable!(),
            })
            .collect(),
        special_isotropy_name: isotropy_name(&(0..order).collect::<Vec<_>>(), order),
        quotient_description: format!(
            "torus quotient by an order-{} rotation: a sphere with {} cone points",
            order / 2,
            special.len()
        ),
    });

    let exps = action.exponents();
    let curve_quotients = vec![
        curve_quotient("u1", exps[0]),
        curve_quotient("u2", exps[1]),
        curve_quotient("u3", exps[2]),
    ];
    Ok(SingularLocusResult {
        action_order: order,
        isolated_point_orbit_count: point_orbits.len(),
        point_orbits,
        surface_orbit_count: surface_orbits.len(),
        surface_orbits,
        base_component,
        curve_quotients,
    })
}

pub fn singular_locus_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
) -> Result<Report<SingularLocusResult>, ReportError> {
    if cfg.lattice.is_none() {
        return Err(ReportError::MissingLattice);
    }
    let result = singular_locus_result(cfg)?;
    Ok(Report::new(
        "singular-locus",
        orientation,
        true,
        vec![SCOPE_MODEL, SCOPE_RESOLUTION],
        result,
    ))
}

/// Run every verification and aggregate failures; the report passes iff
/// every certificate does.
pub fn verify_all_report(
    cfg: &ManifoldConfig,
    orientation: Orientation,
) -> Result<Report<VerifyAllResult>, ReportError> {
    let mut failures = Vec::new();

    let check = check_result(cfg);
    if !check.flatness.ok {
        failures.push("flatness: d^2 is nonzero on a generator".to_string());
    }
    if !check.equivariance.ok {
        failures.push("equivariance: the action does not commute with d".to_string());
    }

    let betti = cohomology_result(cfg, &cohomology_ring(&cfg.spec)?);
    let invariant_betti = cohomology_result(cfg, &invariant_ring(&cfg.spec, &cfg.action)?);

    let symplectic = symplectic_result(cfg, orientation)?;
    if !symplectic.valid {
        failures.push(format!(
            "symplectic: certificate invalid (real: {}, closed: {}, sign: {:?})",
            symplectic.real, symplectic.closed, symplectic.sign
        ));
    }
    if !symplectic.invariant {
        failures.push("symplectic: form is not invariant under the action".to_string());
    }

    let complex_structure = complex_result(cfg);
    if !complex_structure.ok {
        let witnesses: Vec<&str> = complex_structure
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.generator.as_str())
            .collect();
        failures.push(format!(
            "complex structure: (0,2) component in d of {}",
            witnesses.join(", ")
        ));
    }

    let lefschetz = lefschetz_result(cfg, orientation, None, None)?;
    if !lefschetz.pairing_nondegenerate {
        failures.push("lefschetz: cup pairing between invariant H^2 and H^4 degenerates".into());
    }
    match &lefschetz.universal_kernel {
        Some(u) => {
            if !u.granted {
                failures.push(format!(
                    "universal kernel: certificate refused for beta = {}{}",
                    u.beta,
                    u.witness
                        .as_ref()
                        .map(|w| format!(" ({w})"))
                        .unwrap_or_default()
                ));
            }
        }
        None => failures.push("universal kernel: no `beta` form declared".to_string()),
    }

    let singular_locus = match cfg.lattice {
        Some(_) => Some(singular_locus_result(cfg)?),
        None => None,
    };

    let passed = failures.is_empty();
    Ok(Report::new(
        "verify-all",
        orientation,
        passed,
        vec![SCOPE_MODEL, SCOPE_RESOLUTION, SCOPE_KERNEL],
        VerifyAllResult {
            check,
            betti,
            invariant_betti,
            symplectic,
            complex_structure,
            lefschetz,
            singular_locus,
            failures,
        },
    ))
}

// ---------------------------------------------------------------------
// Plain-text rendering.

fn push_cert(out: &mut String, name: &str, cert: &CertificateJson) {
    out.push_str(&format!("{name}: {}\n", pass_str(cert.ok)));
    for c in &cert.checks {
        out.push_str(&format!("  {:10} {}", c.generator, pass_str(c.ok)));
        if let Some(w) = &c.witness {
            out.push_str(&format!("  witness: {w}"));
        }
        out.push('\n');
    }
}

fn pass_str(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub trait TextRender {
    fn render(&self, out: &mut String);
}

impl TextRender for CheckResult {
    fn render(&self, out: &mut String) {
        out.push_str(&format!(
            "generators: {}\naction order: {}\n",
            self.generators.join(" "),
            self.action_order
        ));
        push_cert(out, "flatness (d^2 = 0)", &self.flatness);
        push_cert(out, "equivariance (rho* d = d rho*)", &self.equivariance);
    }
}

impl TextRender for CohomologyResult {
    fn render(&self, out: &mut String) {
        out.push_str(&format!("dimensions: {:?}\n", self.dimensions));
        for d in &self.degrees {
            out.push_str(&format!("H^{} (dim {}):\n", d.degree, d.dim));
            for r in &d.representatives {
                out.push_str(&format!("  [{r}]\n"));
            }
        }
    }
}

impl TextRender for SymplecticResult {
    fn render(&self, out: &mut String) {
        out.push_str(&format!("form: {}\n", self.form));
        out.push_str(&format!("reference volume: {}\n", self.reference_volume));
        out.push_str(&format!(
            "real: {}  closed: {}  invariant: {}\n",
            self.real, self.closed, self.invariant
        ));
        out.push_str(&format!(
            "top power = ({}) * volume, sign: {}\n",
            self.top_coefficient,
            self.sign
                .map(|s| format!("{s:?}").to_lowercase())
                .unwrap_or_else(|| "not real".to_string())
        ));
        out.push_str(&format!("certificate valid: {}\n", self.valid));
    }
}

impl TextRender for ComplexResult {
    fn render(&self, out: &mut String) {
        out.push_str(&format!("integrability: {}\n", pass_str(self.ok)));
        for c in &self.checks {
            out.push_str(&format!("  d {:8} {}", c.generator, pass_str(c.ok)));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  (0,2) part: {w}"));
            }
            out.push('\n');
        }
    }
}

impl TextRender for LefschetzResult {
    fn render(&self, out: &mut String) {
        out.push_str(&format!("omega: {}\n", self.omega));
        out.push_str(&format!("class coordinates: [{}]\n", self.omega_class.join(", ")));
        out.push_str("invariant H^2 basis:\n");
        for b in &self.h2_basis {
            out.push_str(&format!("  [{b}]\n"));
        }
        out.push_str("cup map into invariant H^4 (rows):\n");
        for row in &self.matrix {
            out.push_str(&format!("  [{}]\n", row.join(", ")));
        }
        out.push_str(&format!(
            "rank: {}  kernel dimension: {}  lefschetz holds: {}\n",
            self.rank, self.kernel_dimension, self.lefschetz_holds
        ));
        for k in &self.kernel_classes {
            out.push_str(&format!("  kernel class: [{k}]\n"));
        }
        out.push_str(&format!(
            "pairing determinant: {} (nondegenerate: {})\n",
            self.pairing_determinant, self.pairing_nondegenerate
        ));
        if let Some(u) = &self.universal_kernel {
            out.push_str(&format!(
                "universal kernel certificate for beta = {}: {}\n",
                u.beta,
                if u.granted { "granted" } else { "refused" }
            ));
            out.push_str(&format!(
                "  {} triple products checked, vanish: {}\n",
                u.pairs_checked, u.triple_products_vanish
            ));
            if let Some(w) = &u.witness {
                out.push_str(&format!("  witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "universal kernel search: dimension {}\n",
            self.universal_kernel_search.kernel_dimension
        ));
        for c in &self.universal_kernel_search.classes {
            out.push_str(&format!("  direction: [{c}]\n"));
        }
    }
}

fn render_stratum(s: &StratumJson) -> String {
    match s.kind.as_str() {
        "point" => format!(
            "point ({}) isotropy {}",
            s.point.as_ref().unwrap().join(", "),
            s.isotropy_name
        ),
        _ => format!(
            "surface {{(u1, {}, ({})*u1 + {})}} isotropy {}",
            s.level.as_ref().unwrap(),
            s.slope.as_ref().unwrap(),
            s.offset.as_ref().unwrap(),
            s.isotropy_name
        ),
    }
}

impl TextRender for FixedLocusResult {
    fn render(&self, out: &mut String) {
        out.push_str(&format!(
            "fixed strata of power {}: {} total\n",
            self.power, self.count
        ));
        for s in &self.strata {
            out.push_str(&format!("  {}\n", render_stratum(s)));
        }
    }
}

impl TextRender for SingularLocusResult {
    fn render(&self, out: &mut String) {
        out.push_str(&format!(
            "isolated orbifold point orbits: {}\n",
            self.isolated_point_orbit_count
        ));
        for o in &self.point_orbits {
            out.push_str(&format!(
                "  orbit of size {}: {}\n",
                o.size,
                render_stratum(&o.representative)
            ));
        }
        out.push_str(&format!("surface orbits: {}\n", self.surface_orbit_count));
        for o in &self.surface_orbits {
            out.push_str(&format!(
                "  orbit of size {}: {}\n",
                o.size,
                render_stratum(&o.representative)
            ));
        }
        if let Some(b) = &self.base_component {
            out.push_str(&format!(
                "base component: {}\n  {}\n",
                render_stratum(&b.surface),
                b.quotient_description
            ));
            for p in &b.special_points {
                out.push_str(&format!(
                    "  special point ({}) isotropy {}\n",
                    p.join(", "),
                    b.special_isotropy_name
                ));
            }
        }
        for c in &self.curve_quotients {
            out.push_str(&format!(
                "curve {}: quotient degree {}, ramification orders {:?}\n",
                c.coordinate, c.degree, c.ramification_orders
            ));
        }
    }
}

impl TextRender for VerifyAllResult {
    fn render(&self, out: &mut String) {
        out.push_str("== structure checks ==\n");
        self.check.render(out);
        out.push_str("== cohomology ==\n");
        out.push_str(&format!("dimensions: {:?}\n", self.betti.dimensions));
        out.push_str("== invariant cohomology ==\n");
        out.push_str(&format!(
            "dimensions: {:?}\n",
            self.invariant_betti.dimensions
        ));
        out.push_str("== symplectic ==\n");
        self.symplectic.render(out);
        out.push_str("== complex structure ==\n");
        self.complex_structure.render(out);
        out.push_str("== lefschetz ==\n");
        self.lefschetz.render(out);
        if let Some(s) = &self.singular_locus {
            out.push_str("== singular locus ==\n");
            s.render(out);
        }
        if self.failures.is_empty() {
            out.push_str("all checks passed\n");
        } else {
            out.push_str("failures:\n");
            for f in &self.failures {
                out.push_str(&format!("  - {f}\n"));
            }
        }
    }
}

impl<T: Serialize + TextRender> Report<T> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "nilverify {} (orientation: {:?}, status: {})\n",
            self.command, self.orientation, self.status
        ));
        self.result.render(&mut out);
        for n in &self.scope_notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn trivial_action_yields_an_empty_singular_locus() {
        let cfg = parse_config(
            "[algebra]\npair mu ~mu\npair nu ~nu\npair theta ~theta\nd theta = mu^nu\n\
             [lattice]\nmodel = heisenberg\n",
        )
        .unwrap();
        assert_eq!(cfg.action.order(), 1);
        let r = singular_locus_result(&cfg).unwrap();
        assert_eq!(r.isolated_point_orbit_count, 0);
        assert_eq!(r.surface_orbit_count, 0);
        assert!(r.base_component.is_none());
        for c in &r.curve_quotients {
            assert_eq!(c.degree, 1);
            assert!(c.ramification_orders.is_empty());
        }
    }

    #[test]
    fn missing_declarations_are_distinct_errors() {
        let cfg = parse_config("[algebra]\npair mu ~mu\npair nu ~nu\npair theta ~theta\n")
            .unwrap();
        assert!(matches!(
            symplectic_report(&cfg, Orientation::Standard),
            Err(ReportError::MissingForm(_))
        ));
        assert!(matches!(
            singular_locus_report(&cfg, Orientation::Standard),
            Err(ReportError::MissingLattice)
        ));
    }

    #[test]
    fn verify_all_without_beta_reports_the_gap() {
        let cfg = parse_config(
            "[algebra]\npair mu ~mu\npair nu ~nu\npair theta ~theta\nd theta = mu^nu\n\
             [forms]\nomega = z^9*mu^~mu + nu^theta + ~nu^~theta\n",
        )
        .unwrap();
        let report = verify_all_report(&cfg, Orientation::Standard).unwrap();
        assert!(!report.passed());
        assert!(report
            .result
            .failures
            .iter()
            .any(|f| f.contains("no `beta` form")));
    }
}
