//! Root systems of types A, B, C, D and G2 in simple-root coordinates.
//!
//! Roots are indexed so that the positive roots come first, ordered by
//! height and then by descending coefficient vector (so the simple roots
//! occupy indices `0..rank` in Bourbaki order), followed by the negative
//! roots in the same order. The inner product is an integer Gram matrix on
//! the simple roots.

mod constants;
mod lie;

pub use constants::{chevalley_constants, CommutatorTerm, StructureConstants};
pub use lie::{IntMat, LieAlgebra, LieBasis};

use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),
    #[error("rank {0} is too small (rank >= 2 required)")]
    RankTooSmall(usize),
    #[error("roots are opposite")]
    OppositeRoots,
    #[error("roots have different lengths")]
    LengthMismatch,
    #[error("unknown root label {0:?}")]
    UnknownRoot(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let bad = || RootError::UnsupportedType(s.to_string());
        let (head, rest) = t.split_at(t.chars().next().map_or(0, |c| c.len_utf8()));
        let n: usize = rest.parse().map_err(|_| bad())?;
        let ty = match head {
            "A" => CartanType::A(n),
            "B" => CartanType::B(n),
            "C" => CartanType::C(n),
            "D" => CartanType::D(n),
            "G" if n == 2 => CartanType::G2,
            _ => return Err(bad()),
        };
        ty.validate()?;
        Ok(ty)
    }
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::G2 => 2,
        }
    }

    fn validate(self) -> Result<(), RootError> {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) if n < 2 => {
                Err(RootError::RankTooSmall(n))
            }
            CartanType::D(n) if n < 2 => Err(RootError::RankTooSmall(n)),
            CartanType::D(n) if n < 4 => Err(RootError::UnsupportedType(format!(
                "D{n} is not irreducible or coincides with a type A system"
            ))),
            _ => Ok(()),
        }
    }

    /// Simple roots in an orthonormal ε-basis, for the classical types.
    fn epsilon_simple_roots(self) -> Option<Vec<Vec<i64>>> {
        let unit = |dim: usize, i: usize| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        };
        let diff = |dim: usize, i: usize, j: usize, sign: i64| {
            let mut v = unit(dim, i);
            v[j] += sign;
            v
        };
        match self {
            CartanType::A(n) => Some((0..n).map(|i| diff(n + 1, i, i + 1, -1)).collect()),
            CartanType::B(n) => {
                let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, -1)).collect();
                s.push(unit(n, n - 1));
                Some(s)
            }
            CartanType::C(n) => {
                let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, -1)).collect();
                let mut last = vec![0; n];
                last[n - 1] = 2;
                s.push(last);
                Some(s)
            }
            CartanType::D(n) => {
                let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, -1)).collect();
                s.push(diff(n, n - 2, n - 1, 1));
                Some(s)
            }
            CartanType::G2 => None,
        }
    }
}

/// Index of a root in its [`RootSystem`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LengthClass {
    Long,
    Short,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    gram: Vec<Vec<i64>>,
    coords: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    norms: Vec<i64>,
    num_positive: usize,
    epsilon: Option<Vec<Vec<i64>>>,
}

/// Builds the root system of the given type and rank.
pub fn build_root_system(ty: CartanType) -> Result<RootSystem, RootError> {
    ty.validate()?;
    let rank = ty.rank();
    let eps_simple = ty.epsilon_simple_roots();
    let gram: Vec<Vec<i64>> = match &eps_simple {
        Some(s) => (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| s[i].iter().zip(&s[j]).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect(),
        // c short, k long: (c,c) = 2, (k,k) = 6, (c,k) = -3.
        None => vec![vec![2, -3], vec![-3, 6]],
    };
    let inner = |a: &[i32], b: &[i32]| -> i64 {
        let mut s = 0;
        for i in 0..rank {
            for j in 0..rank {
                s += a[i] as i64 * b[j] as i64 * gram[i][j];
            }
        }
        s
    };
    let simple: Vec<Vec<i32>> = (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        })
        .collect();
    // Grow positive roots level by level through simple-root strings.
    let mut positive: Vec<Vec<i32>> = simple.clone();
    let mut known: std::collections::HashSet<Vec<i32>> = positive.iter().cloned().collect();
    let mut level = simple.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for (i, a) in simple.iter().enumerate() {
                let pairing = 2 * inner(beta, a) / gram[i][i];
                let mut r = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let q = r - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up.clone());
                        positive.push(up);
                    }
                }
            }
        }
        level = next;
    }
    positive.sort_by(|a, b| {
        let ha: i32 = a.iter().sum();
        let hb: i32 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let num_positive = positive.len();
    let mut coords = positive.clone();
    coords.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<i32>>()));
    let index = coords.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let norms = coords.iter().map(|v| inner(v, v)).collect();
    let epsilon = eps_simple.map(|s| {
        coords
            .iter()
            .map(|v| {
                let mut e = vec![0i64; s[0].len()];
                for (k, &c) in v.iter().enumerate() {
                    for (x, y) in e.iter_mut().zip(&s[k]) {
                        *x += c as i64 * y;
                    }
                }
                e
            })
            .collect()
    });
    Ok(RootSystem {
        cartan_type: ty,
        rank,
        gram,
        coords,
        index,
        norms,
        num_positive,
        epsilon,
    })
}

impl RootSystem {
    pub fn parse(label: &str) -> Result<RootSystem, RootError> {
        build_root_system(label.parse()?)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + Clone {
        (0..self.len()).map(Root)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + Clone {
        (0..self.num_positive).map(Root)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        assert!(i < self.rank);
        Root(i)
    }

    pub fn coords(&self, a: Root) -> &[i32] {
        &self.coords[a.0]
    }

    /// Coordinates in the orthonormal ε-basis (classical types only).
    pub fn epsilon_coords(&self, a: Root) -> Option<&[i64]> {
        self.epsilon.as_ref().map(|e| e[a.0].as_slice())
    }

    pub fn find(&self, coords: &[i32]) -> Option<Root> {
        self.index.get(coords).copied().map(Root)
    }

    pub fn neg(&self, a: Root) -> Root {
        if a.0 < self.num_positive {
            Root(a.0 + self.num_positive)
        } else {
            Root(a.0 - self.num_positive)
        }
    }

    pub fn is_positive(&self, a: Root) -> bool {
        a.0 < self.num_positive
    }

    pub fn height(&self, a: Root) -> i32 {
        self.coords[a.0].iter().sum()
    }

    pub fn norm(&self, a: Root) -> i64 {
        self.norms[a.0]
    }

    pub fn inner_coords(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] as i64 * b[j] as i64 * self.gram[i][j];
            }
        }
        s
    }

    pub fn inner(&self, a: Root, b: Root) -> i64 {
        self.inner_coords(self.coords(a), self.coords(b))
    }

    /// ⟨β, α∨⟩ = 2(β, α)/(α, α).
    pub fn pairing(&self, beta: Root, alpha: Root) -> i64 {
        2 * self.inner(beta, alpha) / self.norm(alpha)
    }

    /// ⟨v, α∨⟩ for an arbitrary coordinate vector v.
    pub fn pairing_coords(&self, v: &[i32], alpha: Root) -> i64 {
        2 * self.inner_coords(v, self.coords(alpha)) / self.norm(alpha)
    }

    pub fn max_norm(&self) -> i64 {
        *self.norms.iter().max().unwrap()
    }

    pub fn length_class(&self, a: Root) -> LengthClass {
        if self.norm(a) == self.max_norm() {
            LengthClass::Long
        } else {
            LengthClass::Short
        }
    }

    pub fn is_long(&self, a: Root) -> bool {
        self.length_class(a) == LengthClass::Long
    }

    pub fn is_simply_laced(&self) -> bool {
        self.norms.iter().all(|&n| n == self.norms[0])
    }

    /// The root `i·a + j·b`, if it is one.
    pub fn combination(&self, i: i32, a: Root, j: i32, b: Root) -> Option<Root> {
        let v: Vec<i32> = self
            .coords(a)
            .iter()
            .zip(self.coords(b))
            .map(|(x, y)| i * x + j * y)
            .collect();
        self.find(&v)
    }

    pub fn sum(&self, a: Root, b: Root) -> Option<Root> {
        self.combination(1, a, 1, b)
    }

    /// Coefficients of α∨ in the basis of simple coroots.
    pub fn coroot_coeffs(&self, a: Root) -> Vec<i64> {
        self.coords(a)
            .iter()
            .enumerate()
            .map(|(i, &c)| c as i64 * self.gram[i][i] / self.norm(a))
            .collect()
    }

    /// s_α(β) = β − ⟨β, α∨⟩α.
    pub fn weyl_reflect(&self, alpha: Root, beta: Root) -> Root {
        let p = self.pairing(beta, alpha) as i32;
        self.combination(1, beta, -p, alpha)
            .expect("root systems are closed under reflections")
    }

    /// Largest p with β − pα ∈ Φ.
    pub fn string_down(&self, alpha: Root, beta: Root) -> u32 {
        let mut p = 0;
        while self.combination(-(p as i32 + 1), alpha, 1, beta).is_some() {
            p += 1;
        }
        p
    }

    /// All (i, j) with i, j ≥ 1 and iα + jβ ∈ Φ, in the fixed factor
    /// order: increasing height of iα + jβ, ties by (i, j).
    pub fn root_string(&self, alpha: Root, beta: Root) -> Result<Vec<(u32, u32)>, RootError> {
        if beta == self.neg(alpha) {
            return Err(RootError::OppositeRoots);
        }
        if alpha == beta {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                if let Some(g) = self.combination(i, alpha, j, beta) {
                    out.push((self.height(g), i as u32, j as u32));
                }
            }
        }
        out.sort();
        Ok(out.into_iter().map(|(_, i, j)| (i, j)).collect())
    }

    pub fn is_g2(&self) -> bool {
        self.cartan_type == CartanType::G2
    }

    /// Whether two roots span a subsystem of type B2: norm ratio 2 with
    /// α + β a root.
    pub fn has_b2_subsystem(&self) -> bool {
        self.roots().any(|a| {
            self.roots().any(|b| {
                self.norm(a) == 2 * self.norm(b)
                    && self.pairing(a, b) == -2
                    && self.pairing(b, a) == -1
            })
        })
    }

    /// Readable name: `ij` for ε_i − ε_j in type A, ε-expressions such as
    /// `e1+e2` for B/C/D and c/k combinations for G2.
    pub fn label(&self, a: Root) -> String {
        match self.cartan_type {
            CartanType::A(n) => {
                let e = self.epsilon_coords(a).unwrap();
                let i = e.iter().position(|&x| x == 1).unwrap() + 1;
                let j = e.iter().position(|&x| x == -1).unwrap() + 1;
                if n >= 9 {
                    format!("{i},{j}")
                } else {
                    format!("{i}{j}")
                }
            }
            CartanType::G2 => {
                let v = self.coords(a);
                linear_label(&[(v[0] as i64, "c"), (v[1] as i64, "k")])
            }
            _ => {
                let e = self.epsilon_coords(a).unwrap();
                let names: Vec<String> = (1..=e.len()).map(|i| format!("e{i}")).collect();
                let terms: Vec<(i64, &str)> =
                    e.iter().zip(&names).map(|(&c, n)| (c, n.as_str())).collect();
                linear_label(&terms)
            }
        }
    }

    /// Inverse of [`RootSystem::label`]; also accepts simple-root
    /// coordinates such as `[1,1]`.
    pub fn find_label(&self, label: &str) -> Result<Root, RootError> {
        let l = label.trim();
        if let Some(inner) = l.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let v: Result<Vec<i32>, _> = inner.split(',').map(|x| x.trim().parse()).collect();
            if let Ok(v) = v {
                if let Some(r) = self.find(&v) {
                    return Ok(r);
                }
            }
        }
        let norm = |s: &str| s.replace(' ', "").replace('ε', "e");
        self.roots()
            .find(|&r| norm(&self.label(r)) == norm(l))
            .ok_or_else(|| RootError::UnknownRoot(label.to_string()))
    }
}

fn linear_label(terms: &[(i64, &str)]) -> String {
    let mut s = String::new();
    for &(c, name) in terms {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(name);
    }
    s
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cartan_type)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("A2", 6), ("A3", 12), ("A4", 20), ("B2", 8), ("B3", 18), ("C3", 18), ("D4", 24), ("G2", 12)] {
            let p = phi(s);
            assert_eq!(p.len(), n, "{s}");
            assert_eq!(p.num_positive() * 2, n);
        }
        let g2 = phi("G2");
        assert_eq!(g2.roots().filter(|&r| g2.is_long(r)).count(), 6);
    }

    #[test]
    fn rejects_bad_types() {
        assert_eq!("A1".parse::<CartanType>(), Err(RootError::RankTooSmall(1)));
        assert!(matches!("E6".parse::<CartanType>(), Err(RootError::UnsupportedType(_))));
        assert!(matches!("G3".parse::<CartanType>(), Err(RootError::UnsupportedType(_))));
        assert_eq!("g2".parse::<CartanType>(), Ok(CartanType::G2));
    }

    #[test]
    fn b2_roots_in_epsilon_coordinates() {
        let p = phi("B2");
        let mut labels: Vec<String> = p.roots().map(|r| p.label(r)).collect();
        labels.sort();
        assert_eq!(
            labels,
            vec!["-e1", "-e1+e2", "-e1-e2", "-e2", "e1", "e1+e2", "e1-e2", "e2"]
        );
        let e1 = p.find_label("e1").unwrap();
        let e2 = p.find_label("e2").unwrap();
        assert_eq!(p.weyl_reflect(e1, e2), e2);
        assert!(!p.is_long(e1));
        assert!(p.is_long(p.find_label("e1+e2").unwrap()));
    }

    #[test]
    fn g2_long_roots() {
        let p = phi("G2");
        let mut long: Vec<String> = p.roots().filter(|&r| p.is_long(r)).map(|r| p.label(r)).collect();
        long.sort();
        assert_eq!(long, vec!["-3c-2k", "-3c-k", "-k", "3c+2k", "3c+k", "k"]);
        let c = p.find_label("c").unwrap();
        let k = p.find_label("k").unwrap();
        assert_eq!(p.pairing(k, c), -3);
        assert_eq!(p.label(p.weyl_reflect(c, k)), "3c+k");
        // Long roots are closed under addition.
        for a in p.roots().filter(|&r| p.is_long(r)) {
            for b in p.roots().filter(|&r| p.is_long(r)) {
                if let Some(s) = p.sum(a, b) {
                    assert!(p.is_long(s));
                }
            }
        }
    }

    #[test]
    fn ordering_puts_simple_roots_first() {
        let p = phi("A3");
        assert_eq!(p.label(Root(0)), "12");
        assert_eq!(p.label(Root(1)), "23");
        assert_eq!(p.label(Root(2)), "34");
        assert_eq!(p.label(Root(p.num_positive() - 1)), "14");
        for r in p.positive_roots() {
            assert_eq!(p.neg(p.neg(r)), r);
            assert!(!p.is_positive(p.neg(r)));
        }
    }

    #[test]
    fn root_strings() {
        let a2 = phi("A2");
        let (a, b) = (a2.find_label("12").unwrap(), a2.find_label("23").unwrap());
        assert_eq!(a2.root_string(a, b).unwrap(), vec![(1, 1)]);
        assert_eq!(a2.root_string(a, a2.neg(a)), Err(RootError::OppositeRoots));
        let b2 = phi("B2");
        let (e1, e2) = (b2.find_label("e1").unwrap(), b2.find_label("e2").unwrap());
        assert_eq!(b2.root_string(e1, e2).unwrap(), vec![(1, 1)]);
        let g2 = phi("G2");
        let (k, c) = (g2.find_label("k").unwrap(), g2.find_label("c").unwrap());
        assert_eq!(g2.root_string(k, c).unwrap(), vec![(1, 1), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn b2_detection() {
        assert!(!phi("A3").has_b2_subsystem());
        assert!(phi("B2").has_b2_subsystem());
        assert!(phi("C3").has_b2_subsystem());
        assert!(!phi("G2").has_b2_subsystem());
        assert!(!phi("D4").has_b2_subsystem());
        assert!(phi("G2").is_g2());
    }

    #[test]
    fn reflections_preserve_length_and_closure() {
        for s in ["A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
            let p = phi(s);
            for a in p.roots() {
                for b in p.roots() {
                    let r = p.weyl_reflect(a, b);
                    assert_eq!(p.norm(r), p.norm(b));
                }
            }
        }
    }
}
