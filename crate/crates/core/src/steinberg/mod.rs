//! Steinberg groups St(Φ, S) by generators and relations, coset
//! enumeration, and K2(Φ, S) with its symbols.

mod coset;
mod k2;

pub use coset::CosetTable;
pub use k2::{
    k2_local_product_check, k2_order, steinberg_order, symbol_generation_check, K2Report, LocalProductReport,
    SymbolGenerationReport, DEFAULT_COSET_BUDGET,
};

use crate::chevmatrix::{ChevGroup, GroupElement};
use crate::finring::{Elem, Ring};
use crate::rootsys::{Root, RootSystem};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteinbergError {
    #[error("budget exceeded: more than {0} cosets or relators")]
    BudgetExceeded(u64),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not a long root")]
    NotLongRoot(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("{0}")]
    Group(#[from] crate::chevmatrix::ChevError),
}

/// A generator x̃_α(t) or its inverse.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    #[inline]
    pub fn column(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// The finite presentation of St(Φ, S): generators x̃_α(t) for t ≠ 0 and
/// relators (R1), (R2).
#[derive(Clone, Debug)]
pub struct Presentation {
    phi: RootSystem,
    ring: Ring,
    /// Generator i is x̃_{gens[i].0}(gens[i].1).
    gens: Vec<(Root, Elem)>,
    lookup: Vec<Option<u32>>,
    relators: Vec<Word>,
}

/// Default cap on the number of relators.
pub const DEFAULT_RELATOR_BUDGET: u64 = 200_000;

impl Presentation {
    /// Builds the presentation over the full root system.
    pub fn build(group: &ChevGroup, relator_budget: u64) -> Result<Presentation, SteinbergError> {
        Self::build_restricted(group, relator_budget, |_| true)
    }

    /// Generators for roots satisfying `keep`, and the relators among them.
    pub fn build_restricted(
        group: &ChevGroup,
        relator_budget: u64,
        keep: impl Fn(Root) -> bool,
    ) -> Result<Presentation, SteinbergError> {
        let phi = group.root_system().clone();
        let ring = group.ring().clone();
        let q = ring.card();
        let expected = phi.len() as u64 * phi.len() as u64 * (q - 1) * (q - 1);
        if expected > relator_budget {
            return Err(SteinbergError::BudgetExceeded(relator_budget));
        }
        let nonzero: Vec<Elem> = ring.elements().filter(|&e| e != Elem::ZERO).collect();
        let mut gens = Vec::new();
        let mut lookup = vec![None; phi.len() * q as usize];
        for a in phi.roots().filter(|&a| keep(a)) {
            for &t in &nonzero {
                lookup[a.0 * q as usize + t.index()] = Some(gens.len() as u32);
                gens.push((a, t));
            }
        }
        let mut pres = Presentation {
            phi: phi.clone(),
            ring: ring.clone(),
            gens,
            lookup,
            relators: Vec::new(),
        };
        let consts = group.rep().constants();
        let roots: Vec<Root> = phi.roots().filter(|&a| keep(a)).collect();
        for &a in &roots {
            for &s in &nonzero {
                for &t in &nonzero {
                    let mut w = vec![pres.x(a, s), pres.x(a, t)];
                    w.extend(invert(&pres.x_word(a, ring.add(s, t))));
                    pres.push_relator(w);
                }
            }
        }
        for &a in &roots {
            for &b in &roots {
                if a == b {
                    continue;
                }
                let Some(terms) = consts.commutator(a, b) else {
                    continue;
                };
                if terms.iter().any(|t| !keep(t.root)) {
                    continue;
                }
                for &s in &nonzero {
                    for &t in &nonzero {
                        let (xs, xt) = (pres.x(a, s), pres.x(b, t));
                        let mut w = vec![xs, xt, xs.inv(), xt.inv()];
                        let mut rhs = Vec::new();
                        for term in terms {
                            let c = ring.mul(
                                ring.from_int(term.coeff),
                                ring.mul(ring.pow(s, term.i as u64), ring.pow(t, term.j as u64)),
                            );
                            rhs.extend(pres.x_word(term.root, c));
                        }
                        w.extend(invert(&rhs));
                        pres.push_relator(w);
                    }
                }
            }
        }
        Ok(pres)
    }

    fn push_relator(&mut self, w: Word) {
        let w = free_reduce(&w);
        if !w.is_empty() {
            self.relators.push(w);
        }
    }

    /// The letter x̃_α(t), t ≠ 0.
    pub fn x(&self, a: Root, t: Elem) -> Letter {
        let g = self.lookup[a.0 * self.ring.card() as usize + t.index()]
            .unwrap_or_else(|| panic!("x_{}({}) is not a generator", self.phi.label(a), self.ring.format(t)));
        Letter {
            generator: g,
            inverse: false,
        }
    }

    /// x̃_α(t) as a word; empty for t = 0.
    pub fn x_word(&self, a: Root, t: Elem) -> Word {
        if t == Elem::ZERO {
            Vec::new()
        } else {
            vec![self.x(a, t)]
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.phi
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, i: usize) -> (Root, Elem) {
        self.gens[i]
    }

    pub fn generator_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.gens.len() as u32).map(|g| Letter {
            generator: g,
            inverse: false,
        })
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_name(&self, i: usize) -> String {
        let (a, t) = self.gens[i];
        format!("x[{}]({})", self.phi.label(a), self.ring.format(t))
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        let parts: Vec<String> = w
            .iter()
            .map(|l| {
                let n = self.generator_name(l.generator as usize);
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Text export: a generators line, then one relator per line.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let names: Vec<String> = (0..self.gens.len()).map(|i| self.generator_name(i)).collect();
        writeln!(out, "generators: {}", names.join(", ")).unwrap();
        writeln!(out, "relators: {}", self.relators.len()).unwrap();
        for r in &self.relators {
            writeln!(out, "{}", self.format_word(r)).unwrap();
        }
        out
    }

    pub(crate) fn columns(w: &[Letter]) -> Vec<usize> {
        w.iter().map(|l| l.column()).collect()
    }

    /// Coset enumeration of the subgroup generated by `subgroup`.
    pub fn todd_coxeter(&self, subgroup: &[Word], budget: usize) -> Result<CosetTable, SteinbergError> {
        let rels: Vec<Vec<usize>> = self.relators.iter().map(|r| Self::columns(r)).collect();
        let sub: Vec<Vec<usize>> = subgroup.iter().map(|w| Self::columns(w)).collect();
        coset::enumerate_cosets(self.gens.len(), &rels, &sub, budget)
    }

    /// w̃_α(u) = x̃_α(u) x̃_{−α}(−u⁻¹) x̃_α(u).
    pub fn w_word(&self, a: Root, u: Elem) -> Result<Word, SteinbergError> {
        let r = &self.ring;
        let inv = r.inv(u).ok_or_else(|| SteinbergError::NotAUnit(r.format(u)))?;
        let x = self.x(a, u);
        Ok(vec![x, self.x(self.phi.neg(a), r.neg(inv)), x])
    }

    /// h̃_α(u) = w̃_α(u) w̃_α(−1).
    pub fn h_word(&self, a: Root, u: Elem) -> Result<Word, SteinbergError> {
        let mut w = self.w_word(a, u)?;
        w.extend(self.w_word(a, self.ring.neg(self.ring.one()))?);
        Ok(w)
    }

    /// The Steinberg symbol {u, v}_α = h̃_α(uv) h̃_α(u)⁻¹ h̃_α(v)⁻¹ for a long root α.
    pub fn symbol(&self, a: Root, u: Elem, v: Elem) -> Result<Word, SteinbergError> {
        if !self.phi.is_long(a) {
            return Err(SteinbergError::NotLongRoot(self.phi.label(a)));
        }
        let r = &self.ring;
        for z in [u, v] {
            if !r.is_unit(z) {
                return Err(SteinbergError::NotAUnit(r.format(z)));
            }
        }
        let mut w = self.h_word(a, r.mul(u, v))?;
        w.extend(invert(&self.h_word(a, u)?));
        w.extend(invert(&self.h_word(a, v)?));
        Ok(w)
    }
}

/// π_S: evaluates a word in the matrix realization.
pub fn pi_s(pres: &Presentation, group: &ChevGroup, w: &[Letter]) -> GroupElement {
    let r = group.ring();
    let mut x = group.identity();
    for l in w {
        let (a, t) = pres.generator(l.generator as usize);
        let t = if l.inverse { r.neg(t) } else { t };
        x = group.mul(&x, &group.e(a, t));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::parse_ring;

    fn setup(phi: &str, ring: &str) -> (ChevGroup, Presentation) {
        let g = ChevGroup::parse(phi, &parse_ring(ring).unwrap()).unwrap();
        let p = Presentation::build(&g, DEFAULT_RELATOR_BUDGET).unwrap();
        (g, p)
    }

    #[test]
    fn generator_counts() {
        assert_eq!(setup("A2", "Z/2").1.num_generators(), 6);
        assert_eq!(setup("A2", "Z/3").1.num_generators(), 12);
    }

    #[test]
    fn commuting_pair_relator() {
        let (_, p) = setup("A2", "Z/2");
        let phi = p.root_system();
        let a = phi.find_label("12").unwrap();
        let c = phi.find_label("13").unwrap();
        let one = p.ring().one();
        let (x, y) = (p.x(a, one), p.x(c, one));
        assert!(p.relators().contains(&vec![x, y, x.inv(), y.inv()]));
    }

    #[test]
    fn relators_evaluate_to_identity() {
        for (phi, ring) in [("A2", "Z/4"), ("B2", "Z/3"), ("G2", "Z/5")] {
            let (g, p) = setup(phi, ring);
            for r in p.relators() {
                assert!(g.is_identity(&pi_s(&p, &g, r)), "{phi}/{ring}: {}", p.format_word(r));
            }
        }
    }

    #[test]
    fn pi_is_homomorphic() {
        let (g, p) = setup("A2", "Z/2");
        assert!(g.is_identity(&pi_s(&p, &g, &[])));
        let a = p.root_system().simple_root(0);
        let x = p.x(a, p.ring().one());
        assert!(g.is_identity(&pi_s(&p, &g, &[x, x])));
        let w1 = vec![x, p.x(a.clone(), p.ring().one())];
        let w2 = p.w_word(a, p.ring().one()).unwrap();
        let mut cat = w1.clone();
        cat.extend(&w2);
        assert_eq!(pi_s(&p, &g, &cat), g.mul(&pi_s(&p, &g, &w1), &pi_s(&p, &g, &w2)));
    }

    #[test]
    fn symbols_are_in_the_kernel() {
        let (g, p) = setup("A2", "Z/5");
        let a = p.root_system().simple_root(0);
        let r = p.ring().clone();
        for u in r.elements().skip(1) {
            for v in r.elements().skip(1) {
                let s = p.symbol(a, u, v).unwrap();
                assert!(g.is_identity(&pi_s(&p, &g, &s)));
            }
        }
        assert!(matches!(p.symbol(a, Elem::ZERO, r.one()), Err(SteinbergError::NotAUnit(_))));
        let (_, b2) = setup("B2", "Z/3");
        let short = b2.root_system().find_label("e2").unwrap();
        assert!(matches!(b2.symbol(short, Elem(1), Elem(1)), Err(SteinbergError::NotLongRoot(_))));
    }

    #[test]
    fn trivial_subgroup_enumeration() {
        let (_, p) = setup("A2", "Z/2");
        let t = p.todd_coxeter(&[], 100_000).unwrap();
        assert_eq!(t.index(), 168);
        assert!(t.is_closed());
        let all: Vec<Word> = p.generator_letters().map(|l| vec![l]).collect();
        assert_eq!(p.todd_coxeter(&all, 1000).unwrap().index(), 1);
    }
}
