use super::{ChevError, ChevGroup, GroupElement};
use crate::finring::Elem;
use crate::rootsys::CartanType;
use std::collections::HashMap;

/// Default element budget for closures.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A finite matrix group held explicitly, in BFS discovery order.
#[derive(Clone, Debug)]
pub struct ElementStore {
    elements: Vec<GroupElement>,
    index: HashMap<Vec<u64>, usize>,
}

impl ElementStore {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &ChevGroup, x: &GroupElement) -> bool {
        self.index.contains_key(&g.key(x))
    }

    /// Closure of `gens` under right multiplication, starting at the identity.
    pub fn closure(g: &ChevGroup, gens: &[GroupElement], budget: u64) -> Result<ElementStore, ChevError> {
        let id = g.identity();
        let mut index = HashMap::new();
        index.insert(g.key(&id), 0);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            for s in gens {
                let y = g.mul(&x, s);
                let k = g.key(&y);
                if !index.contains_key(&k) {
                    if elements.len() as u64 >= budget {
                        return Err(ChevError::BudgetExceeded(budget));
                    }
                    index.insert(k, elements.len());
                    elements.push(y);
                }
            }
            head += 1;
        }
        Ok(ElementStore { elements, index })
    }
}

/// All e_α(t) with t ≠ 0.
pub fn root_generators(g: &ChevGroup) -> Vec<GroupElement> {
    let nonzero = g.nonzero();
    g.root_system()
        .roots()
        .flat_map(|a| nonzero.iter().map(move |&t| (a, t)))
        .map(|(a, t)| g.e(a, t))
        .collect()
}

/// The elementary subgroup ⟨e_α(t)⟩.
pub fn enumerate_elementary(g: &ChevGroup, budget: u64) -> Result<ElementStore, ChevError> {
    ElementStore::closure(g, &root_generators(g), budget)
}

/// Counts the matrices satisfying the representation's defining equations
/// directly, without reference to root elements: det = 1 for the natural
/// realization, gᵀΩg = Ω for the symplectic one. `None` when no such
/// description is implemented or the search exceeds `budget` candidates.
pub fn count_defining_group(g: &ChevGroup, budget: u64) -> Option<u64> {
    match g.root_system().cartan_type() {
        CartanType::A(_) => count_special_linear(g, budget),
        CartanType::B(2) => count_symplectic(g, budget),
        _ => None,
    }
}

fn count_special_linear(g: &ChevGroup, budget: u64) -> Option<u64> {
    let r = g.ring();
    let d = g.dim();
    let q = r.card();
    let total = (q as f64).powi((d * d) as i32);
    if total > budget as f64 {
        return None;
    }
    let elems: Vec<Elem> = r.elements().collect();
    let mut m = vec![Elem::ZERO; d * d];
    let mut count = 0u64;
    // Odometer over the first d−1 rows; the last row is then summed against
    // the cofactor vector.
    let head = d * (d - 1);
    let mut digits = vec![0usize; head];
    loop {
        for (k, &dg) in digits.iter().enumerate() {
            m[k] = elems[dg];
        }
        let cof: Vec<Elem> = (0..d).map(|j| cofactor(g, &m, d, j)).collect();
        let mut last = vec![0usize; d];
        loop {
            let det = (0..d).fold(Elem::ZERO, |acc, j| r.add(acc, r.mul(cof[j], elems[last[j]])));
            if det == r.one() {
                count += 1;
            }
            if !advance(&mut last, elems.len()) {
                break;
            }
        }
        if !advance(&mut digits, elems.len()) {
            break;
        }
    }
    Some(count)
}

/// Cofactor of entry (d−1, j), from the first d−1 rows of `m`.
fn cofactor(g: &ChevGroup, m: &[Elem], d: usize, j: usize) -> Elem {
    let r = g.ring();
    let cols: Vec<usize> = (0..d).filter(|&c| c != j).collect();
    let sub: Vec<Elem> = (0..d - 1)
        .flat_map(|i| cols.iter().map(move |&c| m[i * d + c]))
        .collect();
    let minor = g.det_small(&sub, d - 1);
    if (d - 1 + j) % 2 == 0 {
        minor
    } else {
        r.neg(minor)
    }
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for dg in digits.iter_mut() {
        *dg += 1;
        if *dg < base {
            return true;
        }
        *dg = 0;
    }
    false
}

fn count_symplectic(g: &ChevGroup, budget: u64) -> Option<u64> {
    let r = g.ring();
    let form = g.rep().form()?;
    let d = g.dim();
    let vectors: Vec<Vec<Elem>> = {
        let elems: Vec<Elem> = r.elements().collect();
        let mut out = Vec::new();
        let mut digits = vec![0usize; d];
        loop {
            out.push(digits.iter().map(|&k| elems[k]).collect());
            if !advance(&mut digits, elems.len()) {
                break;
            }
        }
        out
    };
    let omega = |x: &[Elem], y: &[Elem]| {
        let mut acc = Elem::ZERO;
        for i in 0..d {
            for j in 0..d {
                let c = form.get(i, j);
                if c != 0 {
                    acc = r.add(acc, r.mul(r.from_int(c), r.mul(x[i], y[j])));
                }
            }
        }
        acc
    };
    let target = |i: usize, j: usize| r.from_int(form.get(i, j));
    let mut work = 0u64;
    let mut count = 0u64;
    let mut cols: Vec<usize> = Vec::with_capacity(d);
    fn rec(
        cols: &mut Vec<usize>,
        d: usize,
        vectors: &[Vec<Elem>],
        ok: &dyn Fn(&[usize], usize) -> bool,
        count: &mut u64,
        work: &mut u64,
        budget: u64,
    ) -> bool {
        if cols.len() == d {
            *count += 1;
            return true;
        }
        for v in 0..vectors.len() {
            *work += 1;
            if *work > budget {
                return false;
            }
            if ok(cols, v) {
                cols.push(v);
                let cont = rec(cols, d, vectors, ok, count, work, budget);
                cols.pop();
                if !cont {
                    return false;
                }
            }
        }
        true
    }
    let ok = |cols: &[usize], v: usize| {
        let k = cols.len();
        cols.iter().enumerate().all(|(i, &c)| omega(&vectors[c], &vectors[v]) == target(i, k))
    };
    rec(&mut cols, d, &vectors, &ok, &mut count, &mut work, budget).then_some(count)
}

impl ChevGroup {
    /// Determinant of a small row-major matrix by cofactor expansion.
    pub(crate) fn det_small(&self, m: &[Elem], n: usize) -> Elem {
        let r = self.ring();
        match n {
            0 => r.one(),
            1 => m[0],
            2 => r.sub(r.mul(m[0], m[3]), r.mul(m[1], m[2])),
            _ => {
                let mut acc = Elem::ZERO;
                for j in 0..n {
                    if m[j] == Elem::ZERO {
                        continue;
                    }
                    let sub: Vec<Elem> = (1..n)
                        .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| m[i * n + c]))
                        .collect();
                    let term = r.mul(m[j], self.det_small(&sub, n - 1));
                    acc = if j % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
                }
                acc
            }
        }
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
    fn special_linear_orders() {
        // |SL_n(F_q)| = q^{n(n-1)/2} ∏_{k=2}^n (q^k − 1)
        let sl = |n: u32, q: u64| -> u64 {
            q.pow(n * (n - 1) / 2) * (2..=n).map(|k| q.pow(k) - 1).product::<u64>()
        };
        for (phi, ring, n, q) in [("A2", "Z/3", 3, 3), ("A3", "Z/2", 4, 2), ("A2", "Z/2", 3, 2), ("A2", "F4", 3, 4)] {
            let g = group(phi, ring);
            assert_eq!(enumerate_elementary(&g, DEFAULT_BUDGET).unwrap().order(), sl(n, q), "{phi} {ring}");
        }
    }

    #[test]
    fn defining_counts() {
        let g = group("A2", "Z/2");
        assert_eq!(count_defining_group(&g, DEFAULT_BUDGET), Some(168));
        let b = group("B2", "Z/3");
        // |Sp4(F3)| = 3^4 (3^2−1)(3^4−1)
        assert_eq!(count_defining_group(&b, DEFAULT_BUDGET), Some(51840));
        assert_eq!(enumerate_elementary(&b, DEFAULT_BUDGET).unwrap().order(), 51840);
        assert_eq!(count_defining_group(&group("G2", "Z/5"), DEFAULT_BUDGET), None);
        assert_eq!(count_defining_group(&group("A2", "Z/7"), 1000), None);
    }

    #[test]
    fn budget_is_enforced() {
        let g = group("A2", "Z/3");
        assert_eq!(enumerate_elementary(&g, 100).unwrap_err(), ChevError::BudgetExceeded(100));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = group("A2", "Z/3");
        let a = enumerate_elementary(&g, DEFAULT_BUDGET).unwrap();
        let b = enumerate_elementary(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert!(a.elements().iter().all(|x| g.satisfies_equations(x)));
    }
}
