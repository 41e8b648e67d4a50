use super::{ChevGroup, GroupElement};
use crate::finring::Elem;
use crate::rootsys::Root;
use serde::Serialize;
use std::collections::HashSet;

/// Outcome of the Gauss factorization g = ω⁻(u⁻)·ω(t)·ω⁺(u⁺).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BigCell {
    /// Coordinates indexed by positive roots (u⁻ for −α, u⁺ for α) and by
    /// simple roots (t).
    InCell {
        uminus: Vec<Elem>,
        torus: Vec<Elem>,
        uplus: Vec<Elem>,
    },
    /// The leading principal minor of size `pivot + 1` is `minor`, a nonunit.
    NotInCell { pivot: usize, minor: Elem, reason: String },
}

/// Picks a matrix entry of X_α with least absolute value.
fn marker(g: &ChevGroup, a: Root) -> (usize, usize, i64) {
    let x = g.rep().root_vector(a);
    let d = g.dim();
    let mut best = (0, 0, 0i64);
    for i in 0..d {
        for j in 0..d {
            let v = x.get(i, j);
            if v != 0 && (best.2 == 0 || v.abs() < best.2.abs()) {
                best = (i, j, v);
            }
        }
    }
    best
}

/// Integer inverse of a unimodular matrix, by cofactors.
fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    fn det(m: &[Vec<i64>]) -> i64 {
        match m.len() {
            0 => 1,
            1 => m[0][0],
            n => (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum(),
        }
    }
    let n = m.len();
    let d = det(m);
    if d.abs() != 1 {
        return None;
    }
    let mut inv = vec![vec![0; n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, r)| r.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            *slot = s * det(&minor) * d;
        }
    }
    Some(inv)
}

/// Basis vectors b_1..b_r whose weights form a unimodular matrix, and the
/// inverse of that matrix.
fn torus_chart(g: &ChevGroup) -> (Vec<usize>, Vec<Vec<i64>>) {
    let w = g.rep().weights();
    let r = g.root_system().rank();
    let d = w.len();
    let mut pick = Vec::with_capacity(r);
    fn search(
        w: &[Vec<i64>],
        r: usize,
        start: usize,
        pick: &mut Vec<usize>,
    ) -> Option<(Vec<usize>, Vec<Vec<i64>>)> {
        if pick.len() == r {
            let m: Vec<Vec<i64>> = pick.iter().map(|&b| w[b].clone()).collect();
            return unimodular_inverse(&m).map(|inv| (pick.clone(), inv));
        }
        for b in start..w.len() {
            pick.push(b);
            if let Some(found) = search(w, r, b + 1, pick) {
                return Some(found);
            }
            pick.pop();
        }
        None
    }
    search(w, r, 0, &mut pick).unwrap_or_else(|| panic!("weights of a {d}-dimensional representation do not span the weight lattice"))
}

/// Peels a unitriangular matrix into ∏ e_{±α}(u_α) over positive α in
/// index order.
fn peel(g: &ChevGroup, m: &GroupElement, negative: bool) -> Option<Vec<Elem>> {
    let phi = g.root_system();
    let r = g.ring();
    let mut rest = m.clone();
    let mut coords = Vec::with_capacity(phi.num_positive());
    for a in phi.positive_roots() {
        let a = if negative { phi.neg(a) } else { a };
        let (i, j, c) = marker(g, a);
        let u = r.mul(rest.get(i, j), r.inv(r.from_int(c))?);
        rest = g.mul(&g.e(a, r.neg(u)), &rest);
        coords.push(u);
    }
    g.is_identity(&rest).then_some(coords)
}

/// Factors g through the big cell by Gauss elimination without pivoting.
pub fn bigcell_factor(g: &ChevGroup, x: &GroupElement) -> BigCell {
    let r = g.ring();
    let d = g.dim();
    let mut a = x.clone();
    let mut lower = g.identity();
    let mut minor = r.one();
    for k in 0..d {
        let pivot = a.get(k, k);
        minor = r.mul(minor, pivot);
        let Some(pinv) = r.inv(pivot) else {
            return BigCell::NotInCell {
                pivot: k,
                minor,
                reason: format!("leading principal minor of size {} is not a unit", k + 1),
            };
        };
        for i in k + 1..d {
            let f = r.mul(a.get(i, k), pinv);
            if f == Elem::ZERO {
                continue;
            }
            lower.set(i, k, f);
            for j in k..d {
                let v = r.sub(a.get(i, j), r.mul(f, a.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    // a = D·U with U unitriangular.
    let mut upper = a.clone();
    let mut diag = g.identity();
    for k in 0..d {
        let dk = a.get(k, k);
        let inv = r.inv(dk).unwrap();
        diag.set(k, k, dk);
        for j in k..d {
            upper.set(k, j, r.mul(inv, a.get(k, j)));
        }
    }
    let not_in = |reason: &str| BigCell::NotInCell {
        pivot: d,
        minor,
        reason: reason.to_string(),
    };
    let Some(uminus) = peel(g, &lower, true) else {
        return not_in("lower factor is not in U⁻");
    };
    let Some(uplus) = peel(g, &upper, false) else {
        return not_in("upper factor is not in U⁺");
    };
    let (basis, inv) = torus_chart(g);
    let torus: Vec<Elem> = (0..g.root_system().rank())
        .map(|i| {
            basis.iter().enumerate().fold(r.one(), |acc, (k, &b)| {
                r.mul(acc, r.zpow(diag.get(b, b), inv[i][k]).unwrap())
            })
        })
        .collect();
    match g.torus(&torus) {
        Ok(t) if t == diag => BigCell::InCell { uminus, torus, uplus },
        _ => not_in("diagonal factor is not in the torus"),
    }
}

/// Multiplies coordinates back into a group element.
pub fn bigcell_assemble(g: &ChevGroup, uminus: &[Elem], torus: &[Elem], uplus: &[Elem]) -> GroupElement {
    let phi = g.root_system();
    let mut x = g.identity();
    for (a, &u) in phi.positive_roots().zip(uminus) {
        x = g.mul(&x, &g.e(phi.neg(a), u));
    }
    x = g.mul(&x, &g.torus(torus).expect("torus coordinates are units"));
    for (a, &u) in phi.positive_roots().zip(uplus) {
        x = g.mul(&x, &g.e(a, u));
    }
    x
}

/// Factorization statistics over a set of elements.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BigCellCensus {
    pub total: u64,
    pub in_cell: u64,
    pub round_trip_failures: u64,
    pub duplicate_coordinates: u64,
    /// |U⁻|·|T|·|U⁺| = |S|^{2N}·|S^×|^r.
    pub expected_cell_size: u64,
}

impl BigCellCensus {
    pub fn pass(&self) -> bool {
        self.round_trip_failures == 0 && self.duplicate_coordinates == 0 && self.in_cell == self.expected_cell_size
    }
}

impl BigCell {
    pub fn census<'a>(g: &ChevGroup, elements: impl IntoIterator<Item = &'a GroupElement>) -> BigCellCensus {
        let phi = g.root_system();
        let n = phi.num_positive() as u32;
        let card = g.ring().card();
        let units = g.unit_list().len() as u64;
        let mut census = BigCellCensus {
            total: 0,
            in_cell: 0,
            round_trip_failures: 0,
            duplicate_coordinates: 0,
            expected_cell_size: card.pow(2 * n) * units.pow(phi.rank() as u32),
        };
        let mut seen = HashSet::new();
        for x in elements {
            census.total += 1;
            if let BigCell::InCell { uminus, torus, uplus } = bigcell_factor(g, x) {
                census.in_cell += 1;
                if &bigcell_assemble(g, &uminus, &torus, &uplus) != x {
                    census.round_trip_failures += 1;
                }
                if !seen.insert((uminus, torus, uplus)) {
                    census.duplicate_coordinates += 1;
                }
            }
        }
        census
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::parse_ring;

    fn group(phi: &str, ring: &str) -> ChevGroup {
        ChevGroup::parse(phi, &parse_ring(ring).unwrap()).unwrap()
    }

    #[test]
    fn identity_factors_trivially() {
        let g = group("A2", "Z/5");
        match bigcell_factor(&g, &g.identity()) {
            BigCell::InCell { uminus, torus, uplus } => {
                assert!(uminus.iter().chain(&uplus).all(|&u| u == Elem::ZERO));
                assert!(torus.iter().all(|&t| t == g.ring().one()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn weyl_element_is_outside() {
        let g = group("A2", "Z/2");
        let a = g.root_system().find_label("12").unwrap();
        let w = g.w(a, g.ring().one()).unwrap();
        assert!(matches!(bigcell_factor(&g, &w), BigCell::NotInCell { pivot: 0, .. }));
    }

    #[test]
    fn round_trip_random_products() {
        use rand::{Rng, SeedableRng};
        for (phi, ring) in [("A3", "Z/9"), ("B2", "Z/7"), ("G2", "Z/5")] {
            let g = group(phi, ring);
            let p = g.root_system().clone();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
            let card = g.ring().card() as u32;
            for _ in 0..20 {
                let um: Vec<Elem> = p.positive_roots().map(|_| Elem(rng.gen_range(0..card))).collect();
                let up: Vec<Elem> = p.positive_roots().map(|_| Elem(rng.gen_range(0..card))).collect();
                let units = g.unit_list();
                let t: Vec<Elem> = (0..p.rank()).map(|_| units[rng.gen_range(0..units.len())]).collect();
                let x = bigcell_assemble(&g, &um, &t, &up);
                assert_eq!(
                    bigcell_factor(&g, &x),
                    BigCell::InCell { uminus: um, torus: t, uplus: up },
                    "{phi}/{ring}"
                );
            }
        }
    }
}
