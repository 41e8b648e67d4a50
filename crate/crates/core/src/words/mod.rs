//! Word maps built from root elements that recover ring operations on
//! root subgroups, and that carry one root subgroup onto another.

mod constructions;
mod harness;

pub use constructions::{
    a2_mult_word, b2_mult_word, b2_nu, b2_pi, carrier_root, g2_kappa, g2_mult_word, g2_short_mult_word, g2_theta, mult_word, SignTable,
};
pub use harness::{reconstruct_ring, transport_check, CarrierTables, ReconstructionHarness, ReconstructionReport, TransportEntry, TransportMapReport};

use crate::chevmatrix::{bigcell_factor, BigCell, ChevError, ChevGroup, GroupElement};
use crate::finring::Elem;
use crate::rootsys::{Root, RootSystem};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("not a nice pair: {0}")]
    NicePairViolation(String),
    #[error("roots {0} and {1} have different lengths")]
    LengthMismatch(String, String),
    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Group(#[from] ChevError),
}

/// A rational constant, specialized into a ring where its denominator is a unit.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn int(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn recip(n: i64) -> Rational {
        Rational {
            num: n.signum(),
            den: n.abs(),
        }
    }

    pub fn eval(self, g: &ChevGroup) -> Result<Elem, WordError> {
        let r = g.ring();
        let d = r
            .inv(r.from_int(self.den))
            .ok_or_else(|| WordError::NicePairViolation(format!("{} is not invertible in {}", self.den, r.label())))?;
        Ok(r.mul(r.from_int(self.num), d))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A formal group word in placeholders and fixed root elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Input(usize),
    E(Root, Rational),
    W(Root, Rational),
    H(Root, Rational),
    Mul(Vec<WordExpr>),
    Inv(Box<WordExpr>),
    /// [x, y] = x y x⁻¹ y⁻¹
    Comm(Box<WordExpr>, Box<WordExpr>),
    /// g x g⁻¹
    Conj(Box<WordExpr>, Box<WordExpr>),
}

impl WordExpr {
    pub fn comm(x: WordExpr, y: WordExpr) -> WordExpr {
        WordExpr::Comm(Box::new(x), Box::new(y))
    }

    pub fn conj(g: WordExpr, x: WordExpr) -> WordExpr {
        WordExpr::Conj(Box::new(g), Box::new(x))
    }

    pub fn inv(x: WordExpr) -> WordExpr {
        WordExpr::Inv(Box::new(x))
    }

    /// Evaluates to the pair (value, inverse).
    pub fn eval(&self, g: &ChevGroup, inputs: &[(GroupElement, GroupElement)]) -> Result<(GroupElement, GroupElement), WordError> {
        let r = g.ring();
        Ok(match self {
            WordExpr::Input(i) => inputs[*i].clone(),
            WordExpr::E(a, c) => {
                let t = c.eval(g)?;
                (g.e(*a, t), g.e(*a, r.neg(t)))
            }
            WordExpr::W(a, c) => {
                let u = c.eval(g)?;
                (g.w(*a, u)?, g.w(*a, r.neg(u))?)
            }
            WordExpr::H(a, c) => {
                let u = c.eval(g)?;
                let ui = r.inv(u).ok_or_else(|| ChevError::NotAUnit(r.format(u)))?;
                (g.h(*a, u)?, g.h(*a, ui)?)
            }
            WordExpr::Mul(parts) => {
                let mut x = g.identity();
                let mut xi = g.identity();
                for p in parts {
                    let (y, yi) = p.eval(g, inputs)?;
                    x = g.mul(&x, &y);
                    xi = g.mul(&yi, &xi);
                }
                (x, xi)
            }
            WordExpr::Inv(x) => {
                let (a, b) = x.eval(g, inputs)?;
                (b, a)
            }
            WordExpr::Comm(x, y) => {
                let (a, ai) = x.eval(g, inputs)?;
                let (b, bi) = y.eval(g, inputs)?;
                (g.commutator(&a, &ai, &b, &bi), g.commutator(&b, &bi, &a, &ai))
            }
            WordExpr::Conj(h, x) => {
                let (k, ki) = h.eval(g, inputs)?;
                let (a, ai) = x.eval(g, inputs)?;
                (g.mul(&g.mul(&k, &a), &ki), g.mul(&g.mul(&k, &ai), &ki))
            }
        })
    }

    pub fn display<'a>(&'a self, phi: &'a RootSystem) -> WordDisplay<'a> {
        WordDisplay { expr: self, phi }
    }
}

pub struct WordDisplay<'a> {
    expr: &'a WordExpr,
    phi: &'a RootSystem,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phi = self.phi;
        fn sub<'b>(e: &'b WordExpr, phi: &'b RootSystem) -> WordDisplay<'b> {
            WordDisplay { expr: e, phi }
        }
        match self.expr {
            WordExpr::Input(i) => write!(f, "${i}"),
            WordExpr::E(a, c) => write!(f, "e[{}]({c})", phi.label(*a)),
            WordExpr::W(a, c) => write!(f, "w[{}]({c})", phi.label(*a)),
            WordExpr::H(a, c) => write!(f, "h[{}]({c})", phi.label(*a)),
            WordExpr::Mul(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", sub(p, phi))?;
                }
                Ok(())
            }
            WordExpr::Inv(x) => write!(f, "({})^-1", sub(x, phi)),
            WordExpr::Comm(x, y) => write!(f, "[{}, {}]", sub(x, phi), sub(y, phi)),
            WordExpr::Conj(h, x) => write!(f, "{{{} | {}}}", sub(h, phi), sub(x, phi)),
        }
    }
}

/// A word map of fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMap {
    pub arity: usize,
    pub expr: WordExpr,
}

impl WordMap {
    pub fn apply(&self, g: &ChevGroup, inputs: &[(GroupElement, GroupElement)]) -> Result<GroupElement, WordError> {
        assert_eq!(inputs.len(), self.arity);
        Ok(self.expr.eval(g, inputs)?.0)
    }

    /// Applies the map to root elements e_α(t_i).
    pub fn apply_root(&self, g: &ChevGroup, a: Root, ts: &[Elem]) -> Result<GroupElement, WordError> {
        let r = g.ring();
        let inputs: Vec<_> = ts.iter().map(|&t| (g.e(a, t), g.e(a, r.neg(t)))).collect();
        self.apply(g, &inputs)
    }
}

/// A Weyl word w = w_{γ_m}(1)⋯w_{γ_1}(1) with w e_{α0}(t) w⁻¹ = e_α(εt).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub from: Root,
    pub to: Root,
    /// γ_1, …, γ_m in order of application.
    pub reflections: Vec<Root>,
    pub sign: i64,
    pub map: WordMap,
}

/// Signed coordinates of an element of U⁺ or U⁻, read through the big cell.
pub(crate) fn root_coordinates(g: &ChevGroup, x: &GroupElement) -> Option<Vec<(Root, i64)>> {
    let BigCell::InCell { uminus, torus, uplus } = bigcell_factor(g, x) else {
        return None;
    };
    let r = g.ring();
    if torus.iter().any(|&t| t != r.one()) {
        return None;
    }
    let p = r.card() as i64;
    let signed = |e: Elem| {
        let v = e.0 as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    };
    let phi = g.root_system();
    let mut out = Vec::new();
    for (a, (&um, &up)) in phi.positive_roots().zip(uminus.iter().zip(&uplus)) {
        if up != Elem::ZERO {
            out.push((a, signed(up)));
        }
        if um != Elem::ZERO {
            out.push((phi.neg(a), signed(um)));
        }
    }
    Some(out)
}

/// The coefficient c with x = e_α(c), for x in a root subgroup.
pub(crate) fn single_coordinate(g: &ChevGroup, x: &GroupElement, a: Root) -> Option<i64> {
    let coords = root_coordinates(g, x)?;
    match coords.as_slice() {
        [] => Some(0),
        [(b, c)] if *b == a => Some(*c),
        _ => None,
    }
}

/// Finds a Weyl word carrying α0 to α and its sign, resolved in `probe`
/// (a group over a prime field of large characteristic).
pub fn transport_word(probe: &ChevGroup, from: Root, to: Root) -> Result<Transport, WordError> {
    let phi = probe.root_system();
    if phi.norm(from) != phi.norm(to) {
        return Err(WordError::LengthMismatch(phi.label(from), phi.label(to)));
    }
    // BFS over reflections in simple roots.
    let mut prev: Vec<Option<(Root, Root)>> = vec![None; phi.len()];
    let mut seen = vec![false; phi.len()];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(b) = queue.pop_front() {
        if b == to {
            break;
        }
        for i in 0..phi.rank() {
            let s = phi.simple_root(i);
            let c = phi.weyl_reflect(s, b);
            if !seen[c.0] {
                seen[c.0] = true;
                prev[c.0] = Some((b, s));
                queue.push_back(c);
            }
        }
    }
    let mut reflections = Vec::new();
    let mut cur = to;
    while cur != from {
        let (b, s) = prev[cur.0].expect("Weyl group is transitive on roots of one length");
        reflections.push(s);
        cur = b;
    }
    reflections.reverse();
    let w = WordExpr::Mul(
        reflections
            .iter()
            .rev()
            .map(|&s| WordExpr::W(s, Rational::ONE))
            .collect(),
    );
    let expr = WordExpr::conj(w, WordExpr::Input(0));
    let map = WordMap { arity: 1, expr };
    let x = map.apply_root(probe, from, &[probe.ring().one()])?;
    let sign = single_coordinate(probe, &x, to).filter(|c| c.abs() == 1).ok_or_else(|| {
        WordError::Unsupported(format!("transport {} -> {} is not a root element", phi.label(from), phi.label(to)))
    })?;
    Ok(Transport {
        from,
        to,
        reflections,
        sign,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::parse_ring;

    fn probe(phi: &str) -> ChevGroup {
        ChevGroup::parse(phi, &parse_ring("Z/101").unwrap()).unwrap()
    }

    #[test]
    fn transport_in_a2() {
        let g = probe("A2");
        let phi = g.root_system().clone();
        let (a13, a23) = (phi.find_label("13").unwrap(), phi.find_label("23").unwrap());
        let t = transport_word(&g, a13, a23).unwrap();
        assert_eq!(t.reflections.len(), 1);
        for s in 0..101 {
            let x = t.map.apply_root(&g, a13, &[Elem(s)]).unwrap();
            assert_eq!(x, g.e(a23, g.ring().mul(g.ring().from_int(t.sign), Elem(s))));
        }
        let same = transport_word(&g, a13, a13).unwrap();
        assert!(same.reflections.is_empty());
        assert_eq!(same.sign, 1);
    }

    #[test]
    fn transport_length_mismatch() {
        let g = probe("G2");
        let phi = g.root_system().clone();
        let err = transport_word(&g, phi.find_label("k").unwrap(), phi.find_label("c").unwrap());
        assert!(matches!(err, Err(WordError::LengthMismatch(..))));
        let t = transport_word(&g, phi.find_label("k").unwrap(), phi.find_label("-3c-2k").unwrap()).unwrap();
        assert_eq!(t.sign.abs(), 1);
    }

    #[test]
    fn the_a2_paper_conjugation() {
        // w12⁻¹ e13(r) w12 = e23(r)
        let g = probe("A2");
        let phi = g.root_system().clone();
        let (a12, a13, a23) = (
            phi.find_label("12").unwrap(),
            phi.find_label("13").unwrap(),
            phi.find_label("23").unwrap(),
        );
        let w = WordExpr::inv(WordExpr::W(a12, Rational::ONE));
        let m = WordMap { arity: 1, expr: WordExpr::conj(w, WordExpr::Input(0)) };
        for r in [0u32, 1, 7, 100] {
            assert_eq!(m.apply_root(&g, a13, &[Elem(r)]).unwrap(), g.e(a23, Elem(r)));
        }
    }

    #[test]
    fn coordinates_of_products() {
        let g = probe("G2");
        let phi = g.root_system().clone();
        let a = phi.find_label("2c+k").unwrap();
        let b = phi.find_label("3c+2k").unwrap();
        let x = g.mul(&g.e(b, g.ring().from_int(-4)), &g.e(a, g.ring().from_int(9)));
        let mut c = root_coordinates(&g, &x).unwrap();
        c.sort();
        let mut want = vec![(a, 9), (b, -4)];
        want.sort();
        assert_eq!(c, want);
    }
}
