//! Matrix realizations of universal Chevalley groups over finite rings.
//!
//! A [`ChevGroup`] pairs a [`Representation`] (integral, ring independent)
//! with a [`Ring`] and produces root elements e_α(t), w_α(u), h_α(u) as
//! matrices over the ring.

mod bigcell;
mod congruence;
mod enumerate;
mod relations;
mod rep;

pub use bigcell::{bigcell_assemble, bigcell_factor, BigCell, BigCellCensus};
pub use congruence::{
    commutator_filtration_check, congruence_subgroup, congruence_subgroup_order, filtration_quotient_check, CommutatorFiltrationReport,
    CongruenceData, FiltrationReport,
};
pub use enumerate::{count_defining_group, enumerate_elementary, root_generators, ElementStore, DEFAULT_BUDGET};
pub use relations::{
    h_multiplicativity_check, transport_sign_check, verify_steinberg_relations, HMultReport, RelationFailure,
    SteinbergReport, TransportReport, TransportSign,
};
pub use rep::Representation;

use crate::finring::{Elem, IdealQuotient, Ring};
use crate::rootsys::{Root, RootSystem};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevError {
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("budget exceeded: more than {0} elements")]
    BudgetExceeded(u64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// A square matrix over a ring, row-major. Ring operations go through the
/// owning [`ChevGroup`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    dim: usize,
    entries: Vec<Elem>,
}

impl GroupElement {
    pub fn from_entries(dim: usize, entries: Vec<Elem>) -> GroupElement {
        assert_eq!(entries.len(), dim * dim);
        GroupElement { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// Canonical byte key for hashing: entries packed at `bits` bits each.
    pub fn key(&self, bits: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity((self.entries.len() * bits as usize).div_ceil(64));
        let mut word = 0u64;
        let mut used = 0u32;
        for e in &self.entries {
            let v = e.0 as u64;
            if used + bits > 64 {
                let lo = 64 - used;
                if lo > 0 {
                    word |= v << used;
                }
                out.push(word);
                word = if lo == 64 { 0 } else { v >> lo };
                used = bits - lo;
            } else {
                word |= v << used;
                used += bits;
            }
        }
        out.push(word);
        out
    }
}

/// A Chevalley group realized over a specific ring.
#[derive(Clone)]
pub struct ChevGroup {
    rep: Arc<Representation>,
    ring: Ring,
    /// Sparse divided powers specialized to the ring: (row, col, power, coeff).
    templates: Vec<Vec<(usize, usize, usize, Elem)>>,
    bits: u32,
}

impl fmt::Debug for ChevGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChevGroup({}, {})", self.rep.root_system(), self.ring)
    }
}

impl ChevGroup {
    pub fn new(rep: Arc<Representation>, ring: Ring) -> ChevGroup {
        let d = rep.dim();
        let templates = rep
            .root_system()
            .roots()
            .map(|a| {
                let mut t = Vec::new();
                for (n, m) in rep.divided_powers(a).iter().enumerate().skip(1) {
                    for i in 0..d {
                        for j in 0..d {
                            let c = m.get(i, j);
                            if c != 0 {
                                let e = ring.from_int(c);
                                if e != Elem::ZERO {
                                    t.push((i, j, n, e));
                                }
                            }
                        }
                    }
                }
                t
            })
            .collect();
        let bits = 64 - (ring.card().max(2) - 1).leading_zeros();
        ChevGroup {
            rep,
            ring,
            templates,
            bits,
        }
    }

    /// Convenience constructor from a type label.
    pub fn parse(phi: &str, ring: &Ring) -> Result<ChevGroup, ChevError> {
        Ok(ChevGroup::new(Representation::parse(phi)?, ring.clone()))
    }

    pub fn rep(&self) -> &Arc<Representation> {
        &self.rep
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rep.root_system()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn key(&self, g: &GroupElement) -> Vec<u64> {
        g.key(self.bits)
    }

    pub fn identity(&self) -> GroupElement {
        let d = self.dim();
        let mut g = GroupElement::from_entries(d, vec![Elem::ZERO; d * d]);
        for i in 0..d {
            g.set(i, i, self.ring.one());
        }
        g
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        let one = self.ring.one();
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| g.get(i, j) == if i == j { one } else { Elem::ZERO }))
    }

    /// e_α(t) = Σ t^n X_α^n / n!.
    pub fn e(&self, a: Root, t: Elem) -> GroupElement {
        let r = &self.ring;
        let mut g = self.identity();
        if t == Elem::ZERO {
            return g;
        }
        let mut pw = vec![r.one(), t];
        for (i, j, n, c) in &self.templates[a.0] {
            while pw.len() <= *n {
                let next = r.mul(*pw.last().unwrap(), t);
                pw.push(next);
            }
            let v = r.add(g.get(*i, *j), r.mul(*c, pw[*n]));
            g.set(*i, *j, v);
        }
        g
    }

    /// w_α(u) = e_α(u) e_{−α}(−u⁻¹) e_α(u).
    pub fn w(&self, a: Root, u: Elem) -> Result<GroupElement, ChevError> {
        let r = &self.ring;
        let inv = r.inv(u).ok_or_else(|| ChevError::NotAUnit(r.format(u)))?;
        let x = self.e(a, u);
        let y = self.e(self.root_system().neg(a), r.neg(inv));
        Ok(self.mul(&self.mul(&x, &y), &x))
    }

    /// h_α(u) = w_α(u) w_α(−1).
    pub fn h(&self, a: Root, u: Elem) -> Result<GroupElement, ChevError> {
        let m1 = self.ring.neg(self.ring.one());
        Ok(self.mul(&self.w(a, u)?, &self.w(a, m1)?))
    }

    /// The diagonal matrix with entries u^{⟨λ_b, α∨⟩}.
    pub fn h_diagonal(&self, a: Root, u: Elem) -> Result<GroupElement, ChevError> {
        let r = &self.ring;
        if !r.is_unit(u) {
            return Err(ChevError::NotAUnit(r.format(u)));
        }
        let mut g = self.identity();
        for b in 0..self.dim() {
            g.set(b, b, r.zpow(u, self.rep.weight_pairing(b, a)).unwrap());
        }
        Ok(g)
    }

    /// ∏ h_{α_i}(t_i) over the simple roots, as a diagonal matrix.
    pub fn torus(&self, t: &[Elem]) -> Result<GroupElement, ChevError> {
        let r = &self.ring;
        let mut g = self.identity();
        for (b, w) in self.rep.weights().iter().enumerate() {
            let mut v = r.one();
            for (&ti, &wi) in t.iter().zip(w) {
                let p = r.zpow(ti, wi).ok_or_else(|| ChevError::NotAUnit(r.format(ti)))?;
                v = r.mul(v, p);
            }
            g.set(b, b, v);
        }
        Ok(g)
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let r = &self.ring;
        let d = a.dim;
        let mut out = vec![Elem::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = a.entries[i * d + k];
                if x == Elem::ZERO {
                    continue;
                }
                let row = &b.entries[k * d..(k + 1) * d];
                let dst = &mut out[i * d..(i + 1) * d];
                for (o, &y) in dst.iter_mut().zip(row) {
                    if y != Elem::ZERO {
                        *o = r.add(*o, r.mul(x, y));
                    }
                }
            }
        }
        GroupElement { dim: d, entries: out }
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        factors
            .into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// Coefficients p_0 = 1, p_1, …, p_n of det(λI − g) = Σ p_k λ^{n−k},
    /// by Berkowitz's division-free algorithm.
    pub fn charpoly(&self, g: &GroupElement) -> Vec<Elem> {
        let r = &self.ring;
        let mut poly = vec![r.one()];
        for i in 0..g.dim {
            // Toeplitz column: 1, −a_ii, −R C, −R M C, …
            let mut t = vec![r.one(), r.neg(g.get(i, i))];
            let mut v: Vec<Elem> = (0..i).map(|k| g.get(k, i)).collect();
            for _ in 0..i {
                let rc = (0..i).fold(Elem::ZERO, |acc, k| r.add(acc, r.mul(g.get(i, k), v[k])));
                t.push(r.neg(rc));
                v = (0..i)
                    .map(|row| (0..i).fold(Elem::ZERO, |acc, k| r.add(acc, r.mul(g.get(row, k), v[k]))))
                    .collect();
            }
            let mut next = vec![Elem::ZERO; poly.len() + 1];
            for (row, slot) in next.iter_mut().enumerate() {
                for (col, &p) in poly.iter().enumerate() {
                    if row >= col {
                        *slot = r.add(*slot, r.mul(t[row - col], p));
                    }
                }
            }
            poly = next;
        }
        poly
    }

    pub fn det(&self, g: &GroupElement) -> Elem {
        let r = &self.ring;
        let p = *self.charpoly(g).last().unwrap();
        if g.dim % 2 == 1 {
            r.neg(p)
        } else {
            p
        }
    }

    /// Inverse through Cayley–Hamilton; `None` if the determinant is not a unit.
    pub fn inverse(&self, g: &GroupElement) -> Option<GroupElement> {
        let r = &self.ring;
        let p = self.charpoly(g);
        let n = g.dim;
        let pn_inv = r.inv(p[n])?;
        let mut b = self.identity();
        for &pk in &p[1..n] {
            b = self.mul(g, &b);
            for i in 0..n {
                b.set(i, i, r.add(b.get(i, i), pk));
            }
        }
        let c = r.neg(pn_inv);
        b.entries.iter_mut().for_each(|x| *x = r.mul(*x, c));
        Some(b)
    }

    /// [g, h] = g h g⁻¹ h⁻¹ given both inverses.
    pub fn commutator(&self, g: &GroupElement, gi: &GroupElement, h: &GroupElement, hi: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, h), &self.mul(gi, hi))
    }

    /// Checks the representation's defining equations: det = 1, and for the
    /// symplectic realization gᵀΩg = Ω.
    pub fn satisfies_equations(&self, g: &GroupElement) -> bool {
        let r = &self.ring;
        if let Some(f) = self.rep.form() {
            let d = self.dim();
            for i in 0..d {
                for j in 0..d {
                    let mut acc = Elem::ZERO;
                    for k in 0..d {
                        let gki = g.get(k, i);
                        if gki == Elem::ZERO {
                            continue;
                        }
                        for l in 0..d {
                            let c = f.get(k, l);
                            if c != 0 {
                                acc = r.add(acc, r.mul(r.mul(gki, r.from_int(c)), g.get(l, j)));
                            }
                        }
                    }
                    if acc != r.from_int(f.get(i, j)) {
                        return false;
                    }
                }
            }
            return true;
        }
        self.det(g) == r.one()
    }

    /// Entrywise reduction to canonical representatives modulo an ideal.
    pub fn reduce(&self, g: &GroupElement, q: &IdealQuotient) -> GroupElement {
        GroupElement {
            dim: g.dim,
            entries: g.entries.iter().map(|&e| q.reduce(e)).collect(),
        }
    }

    /// Rows of formatted entries.
    pub fn format(&self, g: &GroupElement) -> Vec<Vec<String>> {
        (0..g.dim)
            .map(|i| (0..g.dim).map(|j| self.ring.format(g.get(i, j))).collect())
            .collect()
    }

    /// All nonzero ring elements.
    pub(crate) fn nonzero(&self) -> Vec<Elem> {
        self.ring.elements().filter(|&e| e != Elem::ZERO).collect()
    }

    /// Units of the ring, in canonical order.
    pub(crate) fn unit_list(&self) -> Vec<Elem> {
        self.ring.elements().filter(|&e| self.ring.is_unit(e)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{parse_ring, Ring};

    fn group(phi: &str, ring: &str) -> ChevGroup {
        ChevGroup::parse(phi, &parse_ring(ring).unwrap()).unwrap()
    }

    fn ints(r: &Ring, v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&k| r.from_int(k)).collect()
    }

    #[test]
    fn elementary_matrix() {
        let g = group("A2", "Z/5");
        let r = g.ring().clone();
        let a = g.root_system().find_label("12").unwrap();
        let m = g.e(a, Elem(3));
        assert_eq!(m.entries(), &ints(&r, &[1, 3, 0, 0, 1, 0, 0, 0, 1])[..]);
        assert!(g.is_identity(&g.e(a, Elem::ZERO)));
    }

    #[test]
    fn torus_element_a2() {
        let g = group("A2", "Z/5");
        let r = g.ring().clone();
        let a = g.root_system().find_label("12").unwrap();
        let h = g.h(a, Elem(2)).unwrap();
        assert_eq!(h.entries(), &ints(&r, &[2, 0, 0, 0, 3, 0, 0, 0, 1])[..]);
        assert_eq!(h, g.h_diagonal(a, Elem(2)).unwrap());
        assert!(g.is_identity(&g.h(a, r.one()).unwrap()));
        assert!(g.h(a, Elem::ZERO).is_err());
    }

    #[test]
    fn b2_root_elements_are_symplectic() {
        let g = group("B2", "Z/5");
        for a in g.root_system().roots() {
            for t in g.ring().elements() {
                assert!(g.satisfies_equations(&g.e(a, t)));
            }
        }
    }

    #[test]
    fn h_matches_weights_in_all_types() {
        for (phi, ring) in [("A3", "Z/7"), ("B2", "Z/5"), ("G2", "Z/7")] {
            let g = group(phi, ring);
            for a in g.root_system().roots() {
                for u in g.unit_list() {
                    assert_eq!(g.h(a, u).unwrap(), g.h_diagonal(a, u).unwrap(), "{phi} {}", g.root_system().label(a));
                }
            }
        }
    }

    #[test]
    fn inverse_and_det() {
        let g = group("G2", "Z/7");
        let phi = g.root_system().clone();
        let x = g.product(&[
            g.e(Root(0), Elem(3)),
            g.e(phi.neg(Root(1)), Elem(5)),
            g.e(Root(4), Elem(2)),
        ]);
        let xi = g.inverse(&x).unwrap();
        assert!(g.is_identity(&g.mul(&x, &xi)));
        assert_eq!(g.det(&x), Elem(1));
        let z = group("A2", "Z/6");
        let m = GroupElement::from_entries(3, ints(z.ring(), &[2, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert!(z.inverse(&m).is_none());
        assert_eq!(z.det(&m), Elem(2));
    }

    #[test]
    fn keys_are_injective_on_small_sets() {
        let g = group("A2", "Z/5");
        let mut seen = std::collections::HashSet::new();
        for a in g.root_system().roots() {
            for t in g.ring().elements().skip(1) {
                assert!(seen.insert(g.key(&g.e(a, t))));
            }
        }
    }
}
