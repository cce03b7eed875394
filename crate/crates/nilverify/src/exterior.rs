//! Exterior algebra on a fixed ordered set of degree-1 generators with
//! cyclotomic coefficients.
//!
//! Generators come in conjugate pairs tagged (1,0) / (0,1); the order is
//! total and fixed for the lifetime of a session, so every Koszul sign in
//! reports is reproducible. Monomials are bitmasks over generator
//! positions; forms are sparse maps monomial -> coefficient with no stored
//! zeros. Mixed-degree forms are permitted and all operations distribute
//! over degrees.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::CycloScalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("too many generators (at most 31 supported)")]
    TooMany,
    #[error("unknown generator `{0}`")]
    Unknown(String),
}

/// Ordered generator names with conjugation pairing and bidegree tags.
///
/// Holomorphic (1,0) generators occupy positions `0..pairs`, their
/// conjugate partners positions `pairs..2*pairs` in matching order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    conj: Vec<usize>,
}

impl GeneratorSet {
    /// Build from conjugate pairs `(holomorphic, antiholomorphic)`.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self, GeneratorError> {
        if 2 * pairs.len() > 31 {
            return Err(GeneratorError::TooMany);
        }
        let n = pairs.len();
        let mut names = Vec::with_capacity(2 * n);
        for (h, _) in pairs {
            names.push(h.to_string());
        }
        for (_, a) in pairs {
            names.push(a.to_string());
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(GeneratorError::DuplicateName(name.clone()));
            }
        }
        let conj = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        Ok(GeneratorSet { names, conj })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.names.len() / 2
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn conj_partner(&self, i: usize) -> usize {
        self.conj[i]
    }

    /// True for (1,0) generators.
    pub fn is_holomorphic(&self, i: usize) -> bool {
        i < self.pair_count()
    }

    /// (p, q) bidegree of a monomial.
    pub fn bidegree(&self, m: Monomial) -> (u32, u32) {
        let h = self.pair_count() as u32;
        let holo_mask = (1u32 << h) - 1;
        let p = (m.mask & holo_mask).count_ones();
        let q = m.mask.count_ones() - p;
        (p, q)
    }
}

/// A strictly increasing set of generator positions, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    mask: u32,
}

impl Monomial {
    pub const UNIT: Monomial = Monomial { mask: 0 };

    pub fn from_positions(pos: &[usize]) -> Option<Monomial> {
        let mut mask = 0u32;
        for &p in pos {
            let bit = 1u32 << p;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(Monomial { mask })
    }

    pub fn from_mask(mask: u32) -> Monomial {
        Monomial { mask }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn degree(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.mask & (1 << pos) != 0
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(|p| self.contains(*p))
    }

    /// Wedge of two monomials: None on a repeated generator, otherwise the
    /// union with the Koszul sign of the interleaving permutation.
    pub fn wedge(&self, other: &Monomial) -> Option<(Monomial, i8)> {
        if self.mask & other.mask != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in other.positions() {
            // generators of `self` that must move past position j
            inversions += (self.mask >> (j + 1)).count_ones();
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((
            Monomial {
                mask: self.mask | other.mask,
            },
            sign,
        ))
    }
}

// Graded-lexicographic order induced by the fixed generator order: degree
// first, then lex on the increasing position sequences, which coincides
// with numeric order of the masks within one degree.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.mask).cmp(&(other.degree(), other.mask))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:b}", self.mask)
    }
}

/// A sparse exterior-algebra element: monomial -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, CycloScalar>,
}

impl Form {
    pub fn zero() -> Form {
        Form::default()
    }

    pub fn unit(coeff: CycloScalar) -> Form {
        Form::from_monomial(Monomial::UNIT, coeff)
    }

    pub fn one() -> Form {
        Form::unit(CycloScalar::one())
    }

    pub fn generator(pos: usize) -> Form {
        Form::from_monomial(
            Monomial::from_positions(&[pos]).unwrap(),
            CycloScalar::one(),
        )
    }

    pub fn from_monomial(m: Monomial, coeff: CycloScalar) -> Form {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Form { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> CycloScalar {
        self.terms.get(&m).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: &CycloScalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(m)
            .or_insert_with(CycloScalar::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &CycloScalar) -> Form {
        if s.is_zero() {
            return Form::zero();
        }
        Form {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// Graded wedge product; bilinear over the monomial rule.
    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if let Some((m, sign)) = ma.wedge(mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -&c;
                    }
                    out.add_term(m, &c);
                }
            }
        }
        out
    }

    /// k-fold wedge power.
    pub fn wedge_pow(&self, k: u32) -> Form {
        let mut out = Form::one();
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }

    /// Conjugate every generator to its partner (re-sorting with Koszul
    /// signs) and every coefficient; an involution.
    pub fn conj(&self, gens: &GeneratorSet) -> Form {
        let mut out = Form::zero();
        for (m, c) in self.terms() {
            let mut acc = Form::unit(c.conj());
            for p in m.positions() {
                acc = acc.wedge(&Form::generator(gens.conj_partner(p)));
            }
            out = out.add(&acc);
        }
        out
    }

    /// Restriction to the terms of one degree.
    pub fn degree_part(&self, k: u32) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Some(k) when every term has degree k; Some(0) for the zero form.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Some(0),
            Some(m) => m.degree(),
        };
        if it.all(|m| m.degree() == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Split by (p,q) bidegree; the pieces sum back to the form.
    pub fn bidegree_split(&self, gens: &GeneratorSet) -> BTreeMap<(u32, u32), Form> {
        let mut out: BTreeMap<(u32, u32), Form> = BTreeMap::new();
        for (m, c) in self.terms() {
            out.entry(gens.bidegree(*m))
                .or_insert_with(Form::zero)
                .add_term(*m, c);
        }
        out
    }

    /// Render in the token syntax, e.g. `-z^3*mu^~mu + nu^theta`.
    pub fn display<'a>(&'a self, gens: &'a GeneratorSet) -> FormDisplay<'a> {
        FormDisplay { form: self, gens }
    }
}

pub struct FormDisplay<'a> {
    form: &'a Form,
    gens: &'a GeneratorSet,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.form.terms() {
            let mono = m
                .positions()
                .map(|p| self.gens.name(p).to_string())
                .collect::<Vec<_>>()
                .join("^");
            // Coefficient sums are parenthesized; single-term coefficients
            // push their sign out to the term separator.
            let mut coeff_str = c.to_string();
            let mut neg = false;
            if coeff_str.contains(' ') {
                coeff_str = format!("({})", coeff_str);
            } else if let Some(stripped) = coeff_str.strip_prefix('-') {
                neg = true;
                coeff_str = stripped.to_string();
            }
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{}", coeff_str)?;
            } else if coeff_str == "1" {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", coeff_str, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})*{:?}", c, m)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Monomial basis of degree k, in graded-lex order.
pub fn degree_basis(n_generators: usize, k: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0u32..1 << n_generators)
        .filter(|m| m.count_ones() == k)
        .map(Monomial::from_mask)
        .collect();
    out.sort();
    out
}
