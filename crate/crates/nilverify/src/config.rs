//! Declarative manifold descriptions: parsing, semantic validation, and
//! the invariant that a loaded configuration always carries a flat algebra
//! and a compatible action.
//!
//! Grammar (line oriented, `#` comments):
//!
//! ```text
//! [field]
//! root_order = 12
//!
//! [algebra]
//! pair mu ~mu
//! d theta = mu^nu        # omitted differentials default to zero
//!
//! [action]
//! order = 6
//! rho mu = z6^4          # conjugate eigenvalues are inferred
//!
//! [forms]
//! omega = z^9*mu^~mu + nu^theta + ~nu^~theta
//!
//! [lattice]
//! model = heisenberg
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ce::{verify_flatness, AlgebraSpec, CeError, FlatnessCertificate};
use crate::equivariance::{verify_equivariance, ActionError, ActionSpec, EquivarianceCertificate};
use crate::exterior::{Form, GeneratorSet};
use crate::fixed_locus::{FixedLocusError, LatticeAction};
use crate::parse::{is_reserved_name, parse_form, parse_scalar};

#[derive(Debug, Error)]
pub enum ConfigErrorKind {
    #[error("syntax: {0}")]
    Syntax(String),
    #[error("unknown section `[{0}]`")]
    UnknownSection(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator name `{0}` is reserved for scalar tokens")]
    ReservedName(String),
    #[error("eigenvalue is not a root of unity compatible with the field: {0}")]
    BadEigenvalue(String),
    #[error("eigenvalues may only be assigned to (1,0) generators; `{0}` is a conjugate")]
    EigenvalueOnConjugate(String),
    #[error("root_order must divide 12, got {0}")]
    BadRootOrder(u32),
    #[error("unknown lattice model `{0}`")]
    UnknownLattice(String),
    #[error("flatness failure: d^2 is nonzero on `{generator}`: {witness}")]
    Flatness { generator: String, witness: String },
    #[error("equivariance failure: the action does not commute with d on `{generator}`")]
    Equivariance { generator: String },
    #[error("lattice model rejected the action: {0}")]
    Lattice(#[from] FixedLocusError),
    #[error(transparent)]
    Algebra(#[from] CeError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

#[derive(Debug, Error)]
#[error("config line {line}: {kind}")]
pub struct ConfigError {
    pub line: usize,
    pub kind: ConfigErrorKind,
}

impl ConfigError {
    fn at(line: usize, kind: ConfigErrorKind) -> ConfigError {
        ConfigError { line, kind }
    }
}

/// Which lattice model backs the fixed-point commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeModel {
    Heisenberg,
}

/// A parsed and validated manifold description. Construction guarantees
/// that the algebra is flat and the action equivariant.
#[derive(Debug)]
pub struct ManifoldConfig {
    pub root_order: u32,
    pub spec: AlgebraSpec,
    pub action: ActionSpec,
    pub forms: BTreeMap<String, Form>,
    pub lattice: Option<LatticeModel>,
    pub flatness: FlatnessCertificate,
    pub equivariance: EquivarianceCertificate,
}

impl ManifoldConfig {
    pub fn named_form(&self, name: &str) -> Option<&Form> {
        self.forms.get(name)
    }

    pub fn lattice_action(&self) -> Result<LatticeAction, FixedLocusError> {
        LatticeAction::from_action(&self.spec, &self.action)
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

pub fn parse_config(text: &str) -> Result<ManifoldConfig, ConfigError> {
    let mut sections: BTreeMap<String, Vec<Line>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| {
                    ConfigError::at(number, ConfigErrorKind::Syntax("unterminated section header".into()))
                })?
                .trim()
                .to_string();
            if !["field", "algebra", "action", "forms", "lattice"].contains(&name.as_str()) {
                return Err(ConfigError::at(number, ConfigErrorKind::UnknownSection(name)));
            }
            current = Some(name.clone());
            sections.entry(name).or_default();
            continue;
        }
        let Some(section) = &current else {
            return Err(ConfigError::at(
                number,
                ConfigErrorKind::Syntax("content before any section header".into()),
            ));
        };
        sections
            .get_mut(section)
            .unwrap()
            .push(Line { number, text: line });
    }

    // [field]
    let mut root_order = 12u32;
    for line in sections.get("field").map(Vec::as_slice).unwrap_or(&[]) {
        let (key, value) = split_assignment(line)?;
        match key.as_str() {
            "root_order" => {
                root_order = value.parse().map_err(|_| {
                    ConfigError::at(
                        line.number,
                        ConfigErrorKind::Syntax(format!("bad root_order `{value}`")),
                    )
                })?;
                if root_order == 0 || 12 % root_order != 0 {
                    return Err(ConfigError::at(
                        line.number,
                        ConfigErrorKind::BadRootOrder(root_order),
                    ));
                }
            }
            other => {
                return Err(ConfigError::at(
                    line.number,
                    ConfigErrorKind::Syntax(format!("unknown field key `{other}`")),
                ))
            }
        }
    }

    // [algebra]: first the pair lines, then the differentials.
    let algebra_lines = sections.get("algebra").map(Vec::as_slice).unwrap_or(&[]);
    let mut pairs: Vec<(String, String)> = Vec::new();
    for line in algebra_lines {
        if let Some(rest) = line.text.strip_prefix("pair ") {
            let names: Vec<&str> = rest.split_whitespace().collect();
            if names.len() != 2 {
                return Err(ConfigError::at(
                    line.number,
                    ConfigErrorKind::Syntax("pair takes exactly two names".into()),
                ));
            }
            for n in &names {
                if is_reserved_name(n) {
                    return Err(ConfigError::at(
                        line.number,
                        ConfigErrorKind::ReservedName(n.to_string()),
                    ));
                }
            }
            pairs.push((names[0].to_string(), names[1].to_string()));
        }
    }
    let pair_refs: Vec<(&str, &str)> = pairs
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let gens = GeneratorSet::from_pairs(&pair_refs).map_err(|e| {
        ConfigError::at(0, ConfigErrorKind::Syntax(e.to_string()))
    })?;

    let mut diffs: Vec<Option<Form>> = vec![None; gens.len()];
    for line in algebra_lines {
        if line.text.starts_with("pair ") {
            continue;
        }
        let Some(rest) = line.text.strip_prefix("d ") else {
            return Err(ConfigError::at(
                line.number,
                ConfigErrorKind::Syntax(format!("unrecognized algebra line `{}`", line.text)),
            ));
        };
        let Some((name, expr)) = rest.split_once('=') else {
            return Err(ConfigError::at(
                line.number,
                ConfigErrorKind::Syntax("expected `d <generator> = <form>`".into()),
            ));
        };
        let name = name.trim();
        let idx = gens.index_of(name).ok_or_else(|| {
            ConfigError::at(line.number, ConfigErrorKind::UnknownGenerator(name.to_string()))
        })?;
        let form = parse_form(expr.trim(), &gens).map_err(|e| {
            ConfigError::at(line.number, ConfigErrorKind::Syntax(e.to_string()))
        })?;
        diffs[idx] = Some(form);
    }
    // Mirror explicit differentials onto unset conjugate partners.
    for i in 0..gens.len() {
        if diffs[i].is_some() {
            continue;
        }
        let partner = gens.conj_partner(i);
        if let Some(d) = &diffs[partner] {
            diffs[i] = Some(d.conj(&gens));
        }
    }
    let diffs: Vec<Form> = diffs.into_iter().map(|d| d.unwrap_or_else(Form::zero)).collect();
    let spec = AlgebraSpec::new(gens, diffs)
        .map_err(|e| ConfigError::at(0, ConfigErrorKind::Algebra(e)))?;

    let flatness = verify_flatness(&spec);
    if let Some(fail) = flatness.first_failure() {
        return Err(ConfigError::at(
            0,
            ConfigErrorKind::Flatness {
                generator: fail.generator.clone(),
                witness: fail.d_squared.display(spec.generators()).to_string(),
            },
        ));
    }

    // [action]
    let action_lines = sections.get("action").map(Vec::as_slice).unwrap_or(&[]);
    let mut order = 1u32;
    let mut eigen: Vec<Option<crate::scalar::CycloScalar>> = vec![None; spec.generators().len()];
    for line in action_lines {
        if let Some(rest) = line.text.strip_prefix("rho ") {
            let Some((name, expr)) = rest.split_once('=') else {
                return Err(ConfigError::at(
                    line.number,
                    ConfigErrorKind::Syntax("expected `rho <generator> = <scalar>`".into()),
                ));
            };
            let name = name.trim();
            let idx = spec.generators().index_of(name).ok_or_else(|| {
                ConfigError::at(line.number, ConfigErrorKind::UnknownGenerator(name.to_string()))
            })?;
            if !spec.generators().is_holomorphic(idx) {
                return Err(ConfigError::at(
                    line.number,
                    ConfigErrorKind::EigenvalueOnConjugate(name.to_string()),
                ));
            }
            let value = parse_scalar(expr.trim()).map_err(|e| {
                ConfigError::at(line.number, ConfigErrorKind::Syntax(e.to_string()))
            })?;
            match value.root_order() {
                Some(k) if root_order.is_multiple_of(k) => {}
                _ => {
                    return Err(ConfigError::at(
                        line.number,
                        ConfigErrorKind::BadEigenvalue(value.to_string()),
                    ))
                }
            }
            eigen[idx] = Some(value);
        } else {
            let (key, value) = split_assignment(line)?;
            match key.as_str() {
                "order" => {
                    order = value.parse().map_err(|_| {
                        ConfigError::at(
                            line.number,
                            ConfigErrorKind::Syntax(format!("bad order `{value}`")),
                        )
                    })?;
                }
                other => {
                    return Err(ConfigError::at(
                        line.number,
                        ConfigErrorKind::Syntax(format!("unknown action key `{other}`")),
                    ))
                }
            }
        }
    }
    let eigenvalues: Vec<crate::scalar::CycloScalar> = (0..spec.generators().len())
        .map(|i| {
            if spec.generators().is_holomorphic(i) {
                eigen[i].clone().unwrap_or_else(crate::scalar::CycloScalar::one)
            } else {
                let h = spec.generators().conj_partner(i);
                eigen[h]
                    .clone()
                    .unwrap_or_else(crate::scalar::CycloScalar::one)
                    .conj()
            }
        })
        .collect();
    let action = ActionSpec::new(&spec, order, eigenvalues)
        .map_err(|e| ConfigError::at(0, ConfigErrorKind::Action(e)))?;

    let equivariance = verify_equivariance(&spec, &action);
    if let Some(fail) = equivariance.first_failure() {
        return Err(ConfigError::at(
            0,
            ConfigErrorKind::Equivariance {
                generator: fail.generator.clone(),
            },
        ));
    }

    // [forms]
    let mut forms = BTreeMap::new();
    for line in sections.get("forms").map(Vec::as_slice).unwrap_or(&[]) {
        let Some((name, expr)) = line.text.split_once('=') else {
            return Err(ConfigError::at(
                line.number,
                ConfigErrorKind::Syntax("expected `<name> = <form>`".into()),
            ));
        };
        let form = parse_form(expr.trim(), spec.generators()).map_err(|e| {
            ConfigError::at(line.number, ConfigErrorKind::Syntax(e.to_string()))
        })?;
        forms.insert(name.trim().to_string(), form);
    }

    // [lattice]
    let mut lattice = None;
    for line in sections.get("lattice").map(Vec::as_slice).unwrap_or(&[]) {
        let (key, value) = split_assignment(line)?;
        match (key.as_str(), value.as_str()) {
            ("model", "heisenberg") => lattice = Some(LatticeModel::Heisenberg),
            ("model", other) => {
                return Err(ConfigError::at(
                    line.number,
                    ConfigErrorKind::UnknownLattice(other.to_string()),
                ))
            }
            (other, _) => {
                return Err(ConfigError::at(
                    line.number,
                    ConfigErrorKind::Syntax(format!("unknown lattice key `{other}`")),
                ))
            }
        }
    }

    let config = ManifoldConfig {
        root_order,
        spec,
        action,
        forms,
        lattice,
        flatness,
        equivariance,
    };
    if config.lattice.is_some() {
        config
            .lattice_action()
            .map_err(|e| ConfigError::at(0, ConfigErrorKind::Lattice(e)))?;
    }
    Ok(config)
}

fn split_assignment(line: &Line) -> Result<(String, String), ConfigError> {
    let Some((key, value)) = line.text.split_once('=') else {
        return Err(ConfigError::at(
            line.number,
            ConfigErrorKind::Syntax(format!("expected `key = value`, got `{}`", line.text)),
        ));
    };
    Ok((key.trim().to_string(), value.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEISENBERG: &str = r#"
# The quotient construction's data.
[field]
root_order = 12

[algebra]
pair mu ~mu
pair nu ~nu
pair theta ~theta
d theta = mu^nu

[action]
order = 6
rho mu = z6^4
rho nu = z6
rho theta = z6^5

[forms]
omega = z^9*mu^~mu + nu^theta + ~nu^~theta
beta = nu^~nu

[lattice]
model = heisenberg
"#;

    #[test]
    fn shipped_config_parses_and_validates() {
        let cfg = parse_config(HEISENBERG).unwrap();
        assert_eq!(cfg.root_order, 12);
        assert!(cfg.flatness.is_ok());
        assert!(cfg.equivariance.is_ok());
        assert_eq!(cfg.action.order(), 6);
        assert_eq!(cfg.spec.generators().len(), 6);
        assert!(cfg.named_form("omega").is_some());
        assert!(cfg.named_form("beta").is_some());
        assert_eq!(cfg.lattice, Some(LatticeModel::Heisenberg));
        assert_eq!(cfg.lattice_action().unwrap().exponents(), [4, 1, 5]);
    }

    #[test]
    fn broken_action_is_diagnosed_with_its_witness() {
        let broken = HEISENBERG.replace("rho theta = z6^5", "rho theta = z6^3");
        let err = parse_config(&broken).unwrap_err();
        match err.kind {
            ConfigErrorKind::Equivariance { generator } => assert_eq!(generator, "theta"),
            other => panic!("expected equivariance failure, got {other}"),
        }
    }

    #[test]
    fn broken_flatness_is_diagnosed() {
        let cfg = r#"
[algebra]
pair t1 ~t1
pair t2 ~t2
pair t3 ~t3
d t1 = t2^t3
d t2 = t1^t2
"#;
        let err = parse_config(cfg).unwrap_err();
        match err.kind {
            ConfigErrorKind::Flatness { generator, .. } => assert_eq!(generator, "t1"),
            other => panic!("expected flatness failure, got {other}"),
        }
    }

    #[test]
    fn empty_algebra_is_the_abelian_spec() {
        let cfg = parse_config("[algebra]\npair a ~a\npair b ~b\n").unwrap();
        assert!(cfg.flatness.is_ok());
        assert_eq!(cfg.action.order(), 1);
        assert!(cfg.lattice.is_none());
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(
            parse_config("[algebra]\npair z6 ~z6\n").unwrap_err().kind,
            ConfigErrorKind::ReservedName(_)
        ));
        assert!(matches!(
            parse_config("[nonsense]\n").unwrap_err().kind,
            ConfigErrorKind::UnknownSection(_)
        ));
        assert!(matches!(
            parse_config("[algebra]\npair a ~a\nd q = a^~a\n").unwrap_err().kind,
            ConfigErrorKind::UnknownGenerator(_)
        ));
        let err = parse_config("[algebra]\npair a ~a\n[action]\norder = 6\nrho a = 1/2\n")
            .unwrap_err();
        assert!(matches!(err.kind, ConfigErrorKind::BadEigenvalue(_)));
        assert_eq!(err.line, 5);
        // Eigenvalues on conjugates are rejected: they are inferred.
        assert!(matches!(
            parse_config("[algebra]\npair a ~a\n[action]\norder = 2\nrho ~a = z2\n")
                .unwrap_err()
                .kind,
            ConfigErrorKind::EigenvalueOnConjugate(_)
        ));
        assert!(matches!(
            parse_config("[field]\nroot_order = 5\n").unwrap_err().kind,
            ConfigErrorKind::BadRootOrder(5)
        ));
    }
}
