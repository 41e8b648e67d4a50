//! Finite commutative unital rings.
//!
//! Every ring is finite and every element is stored as an index into a
//! canonical enumeration of the carrier. The enumeration is a mixed-radix
//! encoding of the normal-form coordinates (residues, reduced polynomial
//! coefficients, or factor tuples), so two elements are equal exactly when
//! their indices are equal. Index 0 is always the zero element.
//!
//! Small rings (at most [`TABLE_LIMIT`] elements) carry precomputed addition
//! and multiplication tables; larger rings compute on coordinates.

mod hom;
mod parse;
mod structure;

pub use hom::RingHom;
pub use parse::{parse_elem, parse_ring};
pub use structure::{
    additive_span, is_local, is_nice_pair, jacobson_radical, local_decomposition, maximal_ideals,
    radical_filtration, smallest_prime_factor, subring_generated, unit_generated_subring, units, verify_axioms, wedderburn_splitting,
    AxiomReport, Ideal, IdealQuotient, LocalDecomposition, NicePair, RadicalFiltration,
    UnitSubring, Wedderburn,
};

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Rings up to this size get full operation tables.
pub const TABLE_LIMIT: u64 = 1024;

/// Largest carrier accepted at construction.
pub const MAX_CARD: u64 = u32::MAX as u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("ring is not local ({0} maximal ideals)")]
    NotLocal(usize),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ring too large for exhaustive {what}: {card} elements")]
    TooLarge { what: &'static str, card: u64 },
    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),
}

/// A ring element, as an index into the canonical enumeration of its ring.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Description of a finite commutative ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    ZmodN(u64),
    /// `base[x]/(modulus)`, coefficients listed from the constant term up.
    PolyQuotient {
        base: Box<RingSpec>,
        modulus: Vec<i64>,
    },
    Product(Vec<RingSpec>),
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ZmodN(n) => write!(f, "Z/{n}"),
            RingSpec::PolyQuotient { base, modulus } => {
                let b = base.to_string();
                if matches!(**base, RingSpec::Product(_)) {
                    write!(f, "({b})")?;
                } else {
                    write!(f, "{b}")?;
                }
                write!(f, "[x]/({})", format_int_poly(modulus))
            }
            RingSpec::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|s| match s {
                        RingSpec::Product(_) => format!("({s})"),
                        _ => s.to_string(),
                    })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

fn format_int_poly(coeffs: &[i64]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => "x".to_string(),
            d => format!("x^{d}"),
        };
        let body = if deg == 0 {
            c.abs().to_string()
        } else if c.abs() == 1 {
            mono
        } else {
            format!("{}{}", c.abs(), mono)
        };
        if terms.is_empty() {
            terms.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            terms.push(if c < 0 { format!("-{body}") } else { format!("+{body}") });
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.concat()
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

const NO_INVERSE: u32 = u32::MAX;

#[derive(Debug)]
enum Kind {
    Zmod {
        n: u64,
    },
    Poly {
        base: Ring,
        /// x^degree = sum reduction[i] x^i
        reduction: Vec<Elem>,
        degree: usize,
    },
    Product {
        factors: Vec<Ring>,
        strides: Vec<u64>,
    },
    /// A ring given by explicit tables on a subset of a parent ring.
    Table {
        parent: Ring,
        members: Vec<Elem>,
    },
}

#[derive(Debug)]
struct Inner {
    label: String,
    spec: Option<RingSpec>,
    kind: Kind,
    card: u64,
    one: Elem,
    tables: Option<Tables>,
}

/// Handle to a finite commutative unital ring. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Ring(Arc<Inner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.spec.is_some() && self.0.spec == other.0.spec)
    }
}

impl Ring {
    /// Builds the ring described by `spec`.
    pub fn new(spec: &RingSpec) -> Result<Ring, RingError> {
        let ring = match spec {
            RingSpec::ZmodN(n) => {
                if *n < 2 {
                    return Err(RingError::InvalidSpec(format!("Z/{n} needs n >= 2")));
                }
                if *n > MAX_CARD {
                    return Err(RingError::InvalidSpec(format!("Z/{n} is too large")));
                }
                Inner {
                    label: spec.to_string(),
                    spec: Some(spec.clone()),
                    kind: Kind::Zmod { n: *n },
                    card: *n,
                    one: Elem(1),
                    tables: None,
                }
            }
            RingSpec::PolyQuotient { base, modulus } => {
                let base = Ring::new(base)?;
                let trimmed: Vec<i64> = {
                    let mut m = modulus.clone();
                    while m.len() > 1 && base.from_int(*m.last().unwrap()) == Elem::ZERO {
                        m.pop();
                    }
                    m
                };
                if trimmed.len() < 2 {
                    return Err(RingError::InvalidSpec(
                        "modulus must have degree >= 1".to_string(),
                    ));
                }
                if base.from_int(*trimmed.last().unwrap()) != base.one() {
                    return Err(RingError::InvalidSpec(format!(
                        "modulus {} is not monic over {}",
                        format_int_poly(modulus),
                        base.label()
                    )));
                }
                let degree = trimmed.len() - 1;
                let card = (base.card() as u128).pow(degree as u32);
                if card > MAX_CARD as u128 {
                    return Err(RingError::InvalidSpec(format!("{spec} is too large")));
                }
                let reduction = trimmed[..degree]
                    .iter()
                    .map(|&c| base.neg(base.from_int(c)))
                    .collect();
                let one = base.one();
                Inner {
                    label: spec.to_string(),
                    spec: Some(spec.clone()),
                    kind: Kind::Poly {
                        base,
                        reduction,
                        degree,
                    },
                    card: card as u64,
                    one,
                    tables: None,
                }
            }
            RingSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(RingError::InvalidSpec(
                        "product needs at least one factor".to_string(),
                    ));
                }
                let factors = parts.iter().map(Ring::new).collect::<Result<Vec<_>, _>>()?;
                Self::product_inner(factors, Some(spec.clone()), spec.to_string())?
            }
        };
        Ok(Ring(Arc::new(ring)).with_tables())
    }

    /// Product of already-built rings.
    pub fn product(factors: Vec<Ring>) -> Result<Ring, RingError> {
        if factors.is_empty() {
            return Err(RingError::InvalidSpec(
                "product needs at least one factor".to_string(),
            ));
        }
        let label = factors.iter().map(|r| r.label().to_string()).collect::<Vec<_>>().join(" x ");
        let spec = factors
            .iter()
            .map(|r| r.spec().cloned())
            .collect::<Option<Vec<_>>>()
            .map(RingSpec::Product);
        Ok(Ring(Arc::new(Self::product_inner(factors, spec, label)?)).with_tables())
    }

    fn product_inner(
        factors: Vec<Ring>,
        spec: Option<RingSpec>,
        label: String,
    ) -> Result<Inner, RingError> {
        let mut strides = Vec::with_capacity(factors.len());
        let mut card: u128 = 1;
        for f in &factors {
            strides.push(card as u64);
            card *= f.card() as u128;
            if card > MAX_CARD as u128 {
                return Err(RingError::InvalidSpec(format!("{label} is too large")));
            }
        }
        let one = Elem(
            factors
                .iter()
                .zip(&strides)
                .map(|(f, s)| f.one().0 as u64 * s)
                .sum::<u64>() as u32,
        );
        Ok(Inner {
            label,
            spec,
            kind: Kind::Product { factors, strides },
            card: card as u64,
            one,
            tables: None,
        })
    }

    /// The subring (possibly with a different identity) formed by `members`
    /// of `parent`. `members` must be closed under addition, negation and
    /// multiplication, contain zero, and contain `one` as a multiplicative
    /// identity for the subset.
    pub fn from_subset(
        parent: &Ring,
        members: Vec<Elem>,
        one: Elem,
        label: impl Into<String>,
    ) -> Result<Ring, RingError> {
        let mut members = members;
        members.sort();
        members.dedup();
        if members.first() != Some(&Elem::ZERO) {
            return Err(RingError::InvalidSpec("subset must contain zero".to_string()));
        }
        let n = members.len();
        let pos = |e: Elem| members.binary_search(&e).ok().map(|i| i as u32);
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (members[i], members[j]);
                add[i * n + j] = pos(parent.add(a, b)).ok_or_else(|| {
                    RingError::InvalidSpec("subset not closed under addition".to_string())
                })?;
                mul[i * n + j] = pos(parent.mul(a, b)).ok_or_else(|| {
                    RingError::InvalidSpec("subset not closed under multiplication".to_string())
                })?;
            }
        }
        let one_idx = pos(one)
            .ok_or_else(|| RingError::InvalidSpec("identity not in subset".to_string()))?;
        for i in 0..n {
            if mul[one_idx as usize * n + i] != i as u32 {
                return Err(RingError::InvalidSpec(
                    "given identity does not act as identity".to_string(),
                ));
            }
        }
        let neg = (0..n)
            .map(|i| (0..n).find(|&j| add[i * n + j] == 0).map(|j| j as u32))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| RingError::InvalidSpec("subset not closed under negation".to_string()))?;
        let inv = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| mul[i * n + j] == one_idx)
                    .map_or(NO_INVERSE, |j| j as u32)
            })
            .collect();
        Ok(Ring(Arc::new(Inner {
            label: label.into(),
            spec: None,
            kind: Kind::Table {
                parent: parent.clone(),
                members,
            },
            card: n as u64,
            one: Elem(one_idx),
            tables: Some(Tables { add, mul, neg, inv }),
        })))
    }

    fn with_tables(self) -> Ring {
        if self.0.tables.is_some() || self.card() > TABLE_LIMIT {
            return self;
        }
        let n = self.card() as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = self.add_raw(Elem(i as u32), Elem(j as u32)).0;
                mul[i * n + j] = self.mul_raw(Elem(i as u32), Elem(j as u32)).0;
            }
        }
        let neg = (0..n).map(|i| self.neg_raw(Elem(i as u32)).0).collect();
        let one = self.0.one.0;
        let inv = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| mul[i * n + j] == one)
                    .map_or(NO_INVERSE, |j| j as u32)
            })
            .collect();
        let inner = Arc::try_unwrap(self.0).expect("fresh ring is uniquely owned");
        Ring(Arc::new(Inner {
            tables: Some(Tables { add, mul, neg, inv }),
            ..inner
        }))
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn spec(&self) -> Option<&RingSpec> {
        self.0.spec.as_ref()
    }

    pub fn card(&self) -> u64 {
        self.0.card
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.card() as u32).map(Elem)
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.add[a.index() * self.0.card as usize + b.index()]),
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.mul[a.index() * self.0.card as usize + b.index()]),
            None => self.mul_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.neg[a.index()]),
            None => self.neg_raw(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents for units.
    pub fn zpow(&self, a: Elem, e: i64) -> Option<Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|i| self.pow(i, e.unsigned_abs()))
        }
    }

    /// The image of an integer under the unique map Z -> ring.
    pub fn from_int(&self, k: i64) -> Elem {
        match &self.0.kind {
            Kind::Zmod { n } => Elem(k.rem_euclid(*n as i64) as u32),
            _ => {
                let mut acc = Elem::ZERO;
                let mut base = self.one();
                let mut m = k.unsigned_abs();
                while m > 0 {
                    if m & 1 == 1 {
                        acc = self.add(acc, base);
                    }
                    base = self.add(base, base);
                    m >>= 1;
                }
                if k < 0 {
                    self.neg(acc)
                } else {
                    acc
                }
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if let Some(t) = &self.0.tables {
            let i = t.inv[a.index()];
            return (i != NO_INVERSE).then_some(Elem(i));
        }
        match &self.0.kind {
            Kind::Zmod { n } => mod_inverse(a.0 as u64, *n).map(|v| Elem(v as u32)),
            Kind::Product { factors, .. } => {
                let parts = self.split(a);
                let invs = factors
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| f.inv(p))
                    .collect::<Option<Vec<_>>>()?;
                Some(self.join(&invs))
            }
            _ => {
                let one = self.one();
                self.elements().find(|&b| self.mul(a, b) == one)
            }
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv(a).is_some()
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> u64 {
        let one = self.one();
        let mut x = one;
        let mut k = 1u64;
        while x != Elem::ZERO {
            x = self.add(x, one);
            k += 1;
        }
        k
    }

    /// Flattened leaf residues of the normal form.
    pub fn coordinates(&self, a: Elem) -> Vec<u64> {
        match &self.0.kind {
            Kind::Zmod { .. } => vec![a.0 as u64],
            Kind::Poly { base, degree, .. } => {
                let bc = base.card();
                let mut idx = a.0 as u64;
                let mut out = Vec::new();
                for _ in 0..*degree {
                    out.extend(base.coordinates(Elem((idx % bc) as u32)));
                    idx /= bc;
                }
                out
            }
            Kind::Product { factors, .. } => factors
                .iter()
                .zip(self.split(a))
                .flat_map(|(f, p)| f.coordinates(p))
                .collect(),
            Kind::Table { parent, members } => parent.coordinates(members[a.index()]),
        }
    }

    /// Human-readable normal form.
    pub fn format(&self, a: Elem) -> String {
        match &self.0.kind {
            Kind::Zmod { .. } => a.0.to_string(),
            Kind::Poly { base, .. } => {
                let coeffs = self.poly_coeffs(a);
                let simple = matches!(base.0.kind, Kind::Zmod { .. });
                let mut terms = Vec::new();
                for (deg, &c) in coeffs.iter().enumerate() {
                    if c == Elem::ZERO {
                        continue;
                    }
                    let cs = base.format(c);
                    let cs = if simple { cs } else { format!("({cs})") };
                    let t = match deg {
                        0 => cs,
                        _ => {
                            let mono = if deg == 1 { "x".to_string() } else { format!("x^{deg}") };
                            if c == base.one() {
                                mono
                            } else {
                                format!("{cs}{mono}")
                            }
                        }
                    };
                    terms.push(t);
                }
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            }
            Kind::Product { factors, .. } => {
                let parts: Vec<String> = factors
                    .iter()
                    .zip(self.split(a))
                    .map(|(f, p)| f.format(p))
                    .collect();
                format!("({})", parts.join(","))
            }
            Kind::Table { parent, members } => parent.format(members[a.index()]),
        }
    }

    /// Coefficients (constant term first) of an element of a polynomial quotient.
    pub fn poly_coeffs(&self, a: Elem) -> Vec<Elem> {
        match &self.0.kind {
            Kind::Poly { base, degree, .. } => {
                let bc = base.card();
                let mut idx = a.0 as u64;
                (0..*degree)
                    .map(|_| {
                        let c = Elem((idx % bc) as u32);
                        idx /= bc;
                        c
                    })
                    .collect()
            }
            _ => vec![a],
        }
    }

    /// Builds an element of a polynomial quotient from base coefficients,
    /// reducing modulo the defining polynomial.
    pub fn poly_from_coeffs(&self, coeffs: &[Elem]) -> Option<Elem> {
        match &self.0.kind {
            Kind::Poly {
                base,
                reduction,
                degree,
            } => {
                let mut c: Vec<Elem> = coeffs.to_vec();
                reduce_poly(base, reduction, *degree, &mut c);
                c.resize(*degree, Elem::ZERO);
                Some(encode_poly(base.card(), &c))
            }
            _ => None,
        }
    }

    /// The base ring of a polynomial quotient.
    pub fn poly_base(&self) -> Option<&Ring> {
        match &self.0.kind {
            Kind::Poly { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Product factors, when this ring was built as a product.
    pub fn product_factors(&self) -> Option<&[Ring]> {
        match &self.0.kind {
            Kind::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// For a product ring, the component of `a` in each factor.
    pub fn split(&self, a: Elem) -> Vec<Elem> {
        match &self.0.kind {
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| Elem(((a.0 as u64 / s) % f.card()) as u32))
                .collect(),
            _ => vec![a],
        }
    }

    /// Inverse of [`Ring::split`].
    pub fn join(&self, parts: &[Elem]) -> Elem {
        match &self.0.kind {
            Kind::Product { strides, .. } => Elem(
                parts
                    .iter()
                    .zip(strides)
                    .map(|(p, s)| p.0 as u64 * s)
                    .sum::<u64>() as u32,
            ),
            _ => parts[0],
        }
    }

    /// For a table ring, the parent element represented by `a`.
    pub fn parent_element(&self, a: Elem) -> Option<Elem> {
        match &self.0.kind {
            Kind::Table { members, .. } => Some(members[a.index()]),
            _ => None,
        }
    }

    /// A set of elements generating the ring as a unital ring.
    pub fn ring_generators(&self) -> Vec<Elem> {
        match &self.0.kind {
            Kind::Zmod { .. } => Vec::new(),
            Kind::Poly { base, .. } => {
                let mut gens: Vec<Elem> = base
                    .ring_generators()
                    .into_iter()
                    .map(|g| self.poly_from_coeffs(&[g]).unwrap())
                    .collect();
                gens.push(self.poly_from_coeffs(&[Elem::ZERO, base.one()]).unwrap());
                gens
            }
            Kind::Product { factors, .. } => {
                let mut gens = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    let embed = |x: Elem| {
                        let parts: Vec<Elem> = (0..factors.len())
                            .map(|j| if j == i { x } else { Elem::ZERO })
                            .collect();
                        self.join(&parts)
                    };
                    gens.push(embed(f.one()));
                    gens.extend(f.ring_generators().into_iter().map(embed));
                }
                gens
            }
            Kind::Table { .. } => self.elements().collect(),
        }
    }

    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.kind {
            Kind::Zmod { n } => Elem(((a.0 as u64 + b.0 as u64) % n) as u32),
            Kind::Poly { base, .. } => {
                let x = self.poly_coeffs(a);
                let y = self.poly_coeffs(b);
                let s: Vec<Elem> = x.iter().zip(&y).map(|(&p, &q)| base.add(p, q)).collect();
                encode_poly(base.card(), &s)
            }
            Kind::Product { factors, .. } => {
                let parts: Vec<Elem> = factors
                    .iter()
                    .zip(self.split(a).into_iter().zip(self.split(b)))
                    .map(|(f, (p, q))| f.add(p, q))
                    .collect();
                self.join(&parts)
            }
            Kind::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.kind {
            Kind::Zmod { n } => Elem(((a.0 as u128 * b.0 as u128) % *n as u128) as u32),
            Kind::Poly {
                base,
                reduction,
                degree,
            } => {
                let x = self.poly_coeffs(a);
                let y = self.poly_coeffs(b);
                let mut prod = vec![Elem::ZERO; 2 * degree - 1];
                for (i, &p) in x.iter().enumerate() {
                    if p == Elem::ZERO {
                        continue;
                    }
                    for (j, &q) in y.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(p, q));
                    }
                }
                reduce_poly(base, reduction, *degree, &mut prod);
                encode_poly(base.card(), &prod[..*degree])
            }
            Kind::Product { factors, .. } => {
                let parts: Vec<Elem> = factors
                    .iter()
                    .zip(self.split(a).into_iter().zip(self.split(b)))
                    .map(|(f, (p, q))| f.mul(p, q))
                    .collect();
                self.join(&parts)
            }
            Kind::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn neg_raw(&self, a: Elem) -> Elem {
        match &self.0.kind {
            Kind::Zmod { n } => Elem(((n - a.0 as u64) % n) as u32),
            Kind::Poly { base, .. } => {
                let s: Vec<Elem> = self.poly_coeffs(a).iter().map(|&p| base.neg(p)).collect();
                encode_poly(base.card(), &s)
            }
            Kind::Product { factors, .. } => {
                let parts: Vec<Elem> = factors
                    .iter()
                    .zip(self.split(a))
                    .map(|(f, p)| f.neg(p))
                    .collect();
                self.join(&parts)
            }
            Kind::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }
}

fn reduce_poly(base: &Ring, reduction: &[Elem], degree: usize, c: &mut Vec<Elem>) {
    for top in (degree..c.len()).rev() {
        let lead = c[top];
        if lead == Elem::ZERO {
            continue;
        }
        c[top] = Elem::ZERO;
        for (i, &r) in reduction.iter().enumerate() {
            let k = top - degree + i;
            c[k] = base.add(c[k], base.mul(lead, r));
        }
    }
    c.truncate(degree);
}

fn encode_poly(base_card: u64, coeffs: &[Elem]) -> Elem {
    let mut idx: u64 = 0;
    for c in coeffs.iter().rev() {
        idx = idx * base_card + c.0 as u64;
    }
    Elem(idx as u32)
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64) -> Ring {
        Ring::new(&RingSpec::ZmodN(n)).unwrap()
    }

    #[test]
    fn carrier_sizes() {
        assert_eq!(zn(12).card(), 12);
        let f3x2 = parse_ring("Z/3[x]/(x^2)").unwrap();
        assert_eq!(f3x2.card(), 9);
        let p = parse_ring("Z/4 x Z/3").unwrap();
        assert_eq!(p.card(), 12);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(matches!(
            Ring::new(&RingSpec::ZmodN(1)),
            Err(RingError::InvalidSpec(_))
        ));
        let non_monic = RingSpec::PolyQuotient {
            base: Box::new(RingSpec::ZmodN(4)),
            modulus: vec![1, 0, 2],
        };
        assert!(matches!(Ring::new(&non_monic), Err(RingError::InvalidSpec(_))));
        let constant = RingSpec::PolyQuotient {
            base: Box::new(RingSpec::ZmodN(3)),
            modulus: vec![1],
        };
        assert!(Ring::new(&constant).is_err());
        assert!(Ring::new(&RingSpec::Product(vec![])).is_err());
    }

    #[test]
    fn poly_arithmetic_reduces() {
        let r = parse_ring("Z/3[x]/(x^2)").unwrap();
        let x = r.poly_from_coeffs(&[Elem(0), Elem(1)]).unwrap();
        assert_eq!(r.mul(x, x), Elem::ZERO);
        let one_plus_x = r.add(r.one(), x);
        let inv = r.inv(one_plus_x).unwrap();
        assert_eq!(r.mul(one_plus_x, inv), r.one());
        assert_eq!(r.format(one_plus_x), "1+x");
        assert_eq!(r.format(r.from_int(-1)), "2");
    }

    #[test]
    fn slow_path_matches_tables() {
        // Z/2003 has no tables; compare a few inverses against brute force.
        let r = zn(2003);
        assert!(!r.has_tables());
        for a in [1u32, 2, 1000, 2002] {
            let i = r.inv(Elem(a)).unwrap();
            assert_eq!(r.mul(Elem(a), i), r.one());
        }
        let big = parse_ring("Z/7[x]/(x^4+1)").unwrap();
        assert!(!big.has_tables());
        let x = big.poly_from_coeffs(&[Elem(0), Elem(1)]).unwrap();
        assert_eq!(big.pow(x, 8), big.one());
        assert_eq!(big.pow(x, 4), big.from_int(-1));
    }

    #[test]
    fn product_split_join() {
        let r = parse_ring("Z/4 x Z/3").unwrap();
        for a in r.elements() {
            assert_eq!(r.join(&r.split(a)), a);
        }
        assert_eq!(r.format(r.one()), "(1,1)");
    }

    #[test]
    fn characteristic_values() {
        assert_eq!(zn(12).characteristic(), 12);
        assert_eq!(parse_ring("Z/3[x]/(x^3)").unwrap().characteristic(), 3);
        assert_eq!(parse_ring("Z/4 x Z/6").unwrap().characteristic(), 12);
    }
}
