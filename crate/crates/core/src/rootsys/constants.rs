//! Chevalley structure constants N_{α,β} and commutator coefficients.
//!
//! Signs follow the extraspecial-pair convention: for each non-simple
//! positive root ξ, the pair (α, ξ − α) with α the first simple root such
//! that ξ − α is a root gets N = +(p + 1). All other constants follow from
//! the standard identities between structure constants. Commutator
//! coefficients N^{i,j}_{α,β} are read off symbolically from the integral
//! adjoint representation over Z[s, t], with [x, y] = x y x⁻¹ y⁻¹.

use super::lie::{IntMat, LieAlgebra};
use super::{Root, RootSystem};
use serde::Serialize;
use std::collections::BTreeMap;

/// One factor x_{iα+jβ}(coeff · s^i t^j) of a commutator.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub root: Root,
    pub coeff: i64,
}

#[derive(Clone, Debug)]
pub struct StructureConstants {
    len: usize,
    pair: Vec<i64>,
    commutators: BTreeMap<(Root, Root), Vec<CommutatorTerm>>,
    lie: LieAlgebra,
}

impl StructureConstants {
    /// N_{α,β}, zero when α + β is not a root.
    pub fn n(&self, a: Root, b: Root) -> i64 {
        self.pair[a.0 * self.len + b.0]
    }

    /// Factors of [x_α(s), x_β(t)] in the fixed order; empty when α and β
    /// commute. `None` for β = −α.
    pub fn commutator(&self, a: Root, b: Root) -> Option<&[CommutatorTerm]> {
        self.commutators.get(&(a, b)).map(|v| v.as_slice())
    }

    pub fn commutators(&self) -> impl Iterator<Item = (&(Root, Root), &Vec<CommutatorTerm>)> {
        self.commutators.iter()
    }

    pub fn lie_algebra(&self) -> &LieAlgebra {
        &self.lie
    }

    /// All nonzero N_{α,β}, keyed by root labels, for export.
    pub fn export(&self, phi: &RootSystem) -> Vec<ExportedConstant> {
        let mut out = Vec::new();
        for a in phi.roots() {
            for b in phi.roots() {
                let n = self.n(a, b);
                if n != 0 {
                    out.push(ExportedConstant {
                        alpha: phi.coords(a).to_vec(),
                        beta: phi.coords(b).to_vec(),
                        alpha_label: phi.label(a),
                        beta_label: phi.label(b),
                        n,
                    });
                }
            }
        }
        out
    }

    /// All commutator coefficients for export.
    pub fn export_commutators(&self, phi: &RootSystem) -> Vec<ExportedCommutator> {
        self.commutators
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(&(a, b), terms)| ExportedCommutator {
                alpha: phi.label(a),
                beta: phi.label(b),
                factors: terms
                    .iter()
                    .map(|t| (t.i, t.j, phi.label(t.root), t.coeff))
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportedConstant {
    pub alpha: Vec<i32>,
    pub beta: Vec<i32>,
    pub alpha_label: String,
    pub beta_label: String,
    pub n: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportedCommutator {
    pub alpha: String,
    pub beta: String,
    pub factors: Vec<(u32, u32, String, i64)>,
}

struct Table<'a> {
    phi: &'a RootSystem,
    len: usize,
    pair: Vec<i64>,
    set: Vec<bool>,
}

impl Table<'_> {
    fn put(&mut self, a: Root, b: Root, v: i64) {
        self.pair[a.0 * self.len + b.0] = v;
        self.set[a.0 * self.len + b.0] = true;
        self.pair[b.0 * self.len + a.0] = -v;
        self.set[b.0 * self.len + a.0] = true;
    }

    fn positive(&self, a: Root, b: Root) -> i64 {
        assert!(self.set[a.0 * self.len + b.0], "positive pair constant not yet known");
        self.pair[a.0 * self.len + b.0]
    }

    fn get(&self, a: Root, b: Root) -> i64 {
        let phi = self.phi;
        let Some(c) = phi.sum(a, b) else { return 0 };
        match (phi.is_positive(a), phi.is_positive(b)) {
            (true, true) => self.positive(a, b),
            (false, false) => -self.get(phi.neg(a), phi.neg(b)),
            (false, true) => -self.get(b, a),
            (true, false) => {
                if phi.is_positive(c) {
                    exact(-phi.norm(c) * self.get(phi.neg(b), c), phi.norm(a))
                } else {
                    exact(phi.norm(c) * self.get(phi.neg(c), a), phi.norm(b))
                }
            }
        }
    }
}

fn exact(num: i64, den: i64) -> i64 {
    assert_eq!(num % den, 0, "structure constant identity gave a non-integer");
    num / den
}

fn pair_constants(phi: &RootSystem) -> Vec<i64> {
    let len = phi.len();
    let mut t = Table {
        phi,
        len,
        pair: vec![0; len * len],
        set: vec![false; len * len],
    };
    for z in phi.positive_roots().skip(phi.rank()) {
        let alpha = (0..phi.rank())
            .map(|i| phi.simple_root(i))
            .find(|&a| phi.combination(1, z, -1, a).is_some_and(|r| phi.is_positive(r)))
            .expect("every non-simple positive root has a simple predecessor");
        let beta = phi.combination(1, z, -1, alpha).unwrap();
        let nab = phi.string_down(alpha, beta) as i64 + 1;
        t.put(alpha, beta, nab);
        for xi in phi.positive_roots() {
            let Some(eta) = phi.combination(1, z, -1, xi) else { continue };
            if !phi.is_positive(eta) || xi >= eta || xi == alpha {
                continue;
            }
            let term = |p: Root, q: Root, r: Root, s: Root, diff: Option<Root>| -> (i64, i64) {
                match diff {
                    Some(d) => (t.get(p, q) * t.get(r, s), phi.norm(d)),
                    None => (0, 1),
                }
            };
            let (n1, d1) = term(beta, phi.neg(xi), alpha, phi.neg(eta), phi.combination(1, beta, -1, xi));
            let (n2, d2) = term(phi.neg(xi), alpha, beta, phi.neg(eta), phi.combination(1, alpha, -1, xi));
            let v = exact(phi.norm(z) * (n1 * d2 + n2 * d1), nab * d1 * d2);
            t.put(xi, eta, v);
        }
    }
    let mut pair = vec![0; len * len];
    for a in phi.roots() {
        for b in phi.roots() {
            pair[a.0 * len + b.0] = t.get(a, b);
        }
    }
    pair
}

/// Polynomial in s, t with matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
struct PolyMat {
    n: usize,
    terms: BTreeMap<(u32, u32), IntMat>,
}

impl PolyMat {
    fn identity(n: usize) -> PolyMat {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), IntMat::identity(n));
        PolyMat { n, terms }
    }

    /// exp(c·s^i t^j·X) from the divided powers of X.
    fn exp(powers: &[IntMat], c: i64, i: u32, j: u32) -> PolyMat {
        let n = powers[0].dim();
        let mut terms = BTreeMap::new();
        let mut ck = 1i64;
        for (k, p) in powers.iter().enumerate() {
            let k = k as u32;
            terms.insert((i * k, j * k), p.scale(ck));
            ck *= c;
        }
        let mut m = PolyMat { n, terms };
        m.clean();
        m
    }

    fn clean(&mut self) {
        self.terms.retain(|_, m| !m.is_zero());
    }

    fn mul(&self, o: &PolyMat) -> PolyMat {
        let mut terms: BTreeMap<(u32, u32), IntMat> = BTreeMap::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                let p = x.mul(y);
                terms
                    .entry((a + c, b + d))
                    .and_modify(|m| *m = m.add(&p))
                    .or_insert(p);
            }
        }
        let mut m = PolyMat { n: self.n, terms };
        m.clean();
        m
    }

    fn coeff(&self, i: u32, j: u32) -> IntMat {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| IntMat::zero(self.n))
    }
}

fn commutator_coefficients(
    phi: &RootSystem,
    lie: &LieAlgebra,
) -> BTreeMap<(Root, Root), Vec<CommutatorTerm>> {
    let powers: Vec<Vec<IntMat>> = phi
        .roots()
        .map(|r| lie.ad_root(r).divided_powers())
        .collect();
    let mut out = BTreeMap::new();
    for a in phi.roots() {
        for b in phi.roots() {
            if b == phi.neg(a) {
                continue;
            }
            let string = phi.root_string(a, b).unwrap();
            if string.is_empty() {
                out.insert((a, b), Vec::new());
                continue;
            }
            let pa = &powers[a.0];
            let pb = &powers[b.0];
            let c = PolyMat::exp(pa, 1, 1, 0)
                .mul(&PolyMat::exp(pb, 1, 0, 1))
                .mul(&PolyMat::exp(pa, -1, 1, 0))
                .mul(&PolyMat::exp(pb, -1, 0, 1));
            let mut terms: Vec<CommutatorTerm> = string
                .iter()
                .map(|&(i, j)| CommutatorTerm {
                    i,
                    j,
                    root: phi.combination(i as i32, a, j as i32, b).unwrap(),
                    coeff: 0,
                })
                .collect();
            let product = |terms: &[CommutatorTerm], below: u32| {
                terms
                    .iter()
                    .filter(|t| t.i + t.j < below)
                    .fold(PolyMat::identity(lie.dim()), |acc, t| {
                        acc.mul(&PolyMat::exp(&powers[t.root.0], t.coeff, t.i, t.j))
                    })
            };
            let max_deg = terms.iter().map(|t| t.i + t.j).max().unwrap();
            for d in 2..=max_deg {
                let q = product(&terms, d);
                for t in terms.iter_mut().filter(|t| t.i + t.j == d) {
                    let diff = c.coeff(t.i, t.j).sub(&q.coeff(t.i, t.j));
                    t.coeff = diff
                        .ratio(lie.ad_root(t.root))
                        .expect("commutator component is a multiple of the root vector");
                }
            }
            assert_eq!(
                product(&terms, u32::MAX),
                c,
                "commutator factorization does not reproduce the commutator"
            );
            out.insert((a, b), terms);
        }
    }
    out
}

/// Computes all N_{α,β} and N^{i,j}_{α,β}, and checks the resulting Lie
/// algebra satisfies the Jacobi identity.
pub fn chevalley_constants(phi: &RootSystem) -> StructureConstants {
    let len = phi.len();
    let pair = pair_constants(phi);
    let lie = LieAlgebra::new(phi, |a, b| pair[a.0 * len + b.0]);
    if let Err(e) = lie.verify() {
        panic!("structure constants for {phi} are inconsistent: {e}");
    }
    let commutators = commutator_coefficients(phi, &lie);
    StructureConstants {
        len,
        pair,
        commutators,
        lie,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts(s: &str) -> (RootSystem, StructureConstants) {
        let p = RootSystem::parse(s).unwrap();
        let c = chevalley_constants(&p);
        (p, c)
    }

    /// Independent oracle for |N|: walk the β − pα chain by brute force.
    fn chain_len(phi: &RootSystem, a: Root, b: Root) -> i64 {
        let mut p = 0;
        let mut v: Vec<i32> = phi.coords(b).to_vec();
        loop {
            for (x, y) in v.iter_mut().zip(phi.coords(a)) {
                *x -= y;
            }
            if phi.find(&v).is_none() {
                return p;
            }
            p += 1;
        }
    }

    #[test]
    fn magnitudes_and_antisymmetry() {
        for s in ["A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
            let (p, c) = consts(s);
            for a in p.roots() {
                for b in p.roots() {
                    let n = c.n(a, b);
                    assert_eq!(n, -c.n(b, a));
                    if p.sum(a, b).is_some() {
                        assert_eq!(n.abs(), chain_len(&p, a, b) + 1, "{s}");
                    } else {
                        assert_eq!(n, 0);
                    }
                    assert_eq!(c.n(p.neg(a), p.neg(b)), -n);
                }
            }
        }
    }

    #[test]
    fn a2_constants_are_units() {
        let (p, c) = consts("A2");
        for a in p.roots() {
            for b in p.roots() {
                if p.sum(a, b).is_some() {
                    assert_eq!(c.n(a, b).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn b2_has_constant_two() {
        let (p, c) = consts("B2");
        let e2 = p.find_label("e2").unwrap();
        let e12 = p.find_label("e1-e2").unwrap();
        let e1 = p.find_label("e1").unwrap();
        // e1-e2 - e2 is not a root, so this long-short pair has |N| = 1;
        // the value 2 comes from the two short roots.
        assert_eq!(c.n(e2, e12).abs(), 1);
        assert_eq!(c.n(e1, e2).abs(), 2);
        assert!(p.roots().any(|a| p.roots().any(|b| c.n(a, b).abs() == 2)));
        let terms = c.commutator(e1, e2).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].coeff.abs(), 2);
    }

    #[test]
    fn extraspecial_signs_positive() {
        for s in ["A3", "B2", "G2", "C3"] {
            let (p, c) = consts(s);
            for z in p.positive_roots().skip(p.rank()) {
                let a = (0..p.rank())
                    .map(Root)
                    .find(|&a| p.combination(1, z, -1, a).is_some_and(|r| p.is_positive(r)))
                    .unwrap();
                let b = p.combination(1, z, -1, a).unwrap();
                assert!(c.n(a, b) > 0);
            }
        }
    }

    #[test]
    fn g2_commutator_shapes() {
        let (p, c) = consts("G2");
        let l = |s: &str| p.find_label(s).unwrap();
        let t = c.commutator(l("c+k"), l("2c+k")).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].root, l("3c+2k"));
        assert_eq!(t[0].coeff.abs(), 3);
        let t = c.commutator(l("k"), l("c")).unwrap();
        let roots: Vec<String> = t.iter().map(|x| p.label(x.root)).collect();
        assert_eq!(roots, vec!["c+k", "2c+k", "3c+k", "3c+2k"]);
        assert!(t.iter().all(|x| x.coeff.abs() == 1));
        let t = c.commutator(l("3c+k"), l("k")).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].coeff.abs(), 1);
    }

    #[test]
    fn single_term_commutators_match_pair_constants() {
        // When only α + β occurs, N^{1,1} = N_{α,β}.
        for s in ["A3", "B2", "G2"] {
            let (_, c) = consts(s);
            for (&(a, b), terms) in c.commutators() {
                if terms.len() == 1 && terms[0].i == 1 && terms[0].j == 1 {
                    assert_eq!(terms[0].coeff, c.n(a, b));
                }
                for t in terms.iter().filter(|t| t.i == 1 && t.j == 1) {
                    assert_eq!(t.coeff, c.n(a, b), "{s}");
                }
            }
        }
    }

    #[test]
    fn weyl_invariance_up_to_sign() {
        for s in ["A3", "B2", "G2"] {
            let (p, c) = consts(s);
            for i in 0..p.rank() {
                let w = p.simple_root(i);
                for a in p.roots() {
                    for b in p.roots() {
                        let (wa, wb) = (p.weyl_reflect(w, a), p.weyl_reflect(w, b));
                        assert_eq!(c.n(wa, wb).abs(), c.n(a, b).abs());
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let (p, c1) = consts("G2");
        let c2 = chevalley_constants(&p);
        for a in p.roots() {
            for b in p.roots() {
                assert_eq!(c1.n(a, b), c2.n(a, b));
                assert_eq!(c1.commutator(a, b), c2.commutator(a, b));
            }
        }
    }
}
