use super::{Root, RootSystem};
use std::fmt;

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    n: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            writeln!(f, "{:?}", &self.data[r * self.n..(r + 1) * self.n])?;
        }
        Ok(())
    }
}

impl IntMat {
    pub fn zero(n: usize) -> IntMat {
        IntMat {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The matrix unit E_ij.
    pub fn unit(n: usize, i: usize, j: usize) -> IntMat {
        let mut m = IntMat::zero(n);
        m.data[i * n + j] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &IntMat) -> IntMat {
        IntMat {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &IntMat) -> IntMat {
        IntMat {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> IntMat {
        IntMat {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division of every entry; `None` if some entry is not divisible.
    pub fn div_exact(&self, c: i64) -> Option<IntMat> {
        let data = self
            .data
            .iter()
            .map(|&a| (a % c == 0).then_some(a / c))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMat { n: self.n, data })
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &o.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        IntMat { n, data: out }
    }

    /// AB − BA.
    pub fn bracket(&self, o: &IntMat) -> IntMat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> IntMat {
        let n = self.n;
        let mut m = IntMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j];
            }
        }
        m
    }

    /// Divided powers X^k / k! for k = 0.. until the power vanishes.
    /// Panics if a division is inexact, which cannot happen for the
    /// nilpotent elements of a Chevalley basis in an admissible lattice.
    pub fn divided_powers(&self) -> Vec<IntMat> {
        let mut out = vec![IntMat::identity(self.n)];
        let mut k = 1;
        loop {
            let next = out[k - 1]
                .mul(self)
                .div_exact(k as i64)
                .expect("divided powers of a Chevalley basis element are integral");
            if next.is_zero() {
                break;
            }
            out.push(next);
            k += 1;
            assert!(k <= 2 * self.n + 2, "matrix is not nilpotent");
        }
        out
    }

    /// Coefficient c with self = c·other, if one exists.
    pub fn ratio(&self, other: &IntMat) -> Option<i64> {
        let pos = other.data.iter().position(|&x| x != 0)?;
        let b = other.data[pos];
        let a = self.data[pos];
        if a % b != 0 {
            return None;
        }
        let c = a / b;
        (self == &other.scale(c)).then_some(c)
    }
}

/// A basis element of the Lie algebra: a root vector or a simple coroot.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LieBasis {
    Root(Root),
    Cartan(usize),
}

/// The Chevalley-basis Lie algebra over Z with its adjoint representation.
///
/// The basis is ordered by decreasing height: positive root vectors, then
/// the simple coroots h_1..h_r, then negative root vectors. In this order
/// ad X_α is strictly upper triangular for positive α.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    basis: Vec<LieBasis>,
    root_pos: Vec<usize>,
    ad: Vec<IntMat>,
}

impl LieAlgebra {
    /// Builds the algebra from structure constants `n(α, β)`.
    pub fn new(phi: &RootSystem, n: impl Fn(Root, Root) -> i64) -> LieAlgebra {
        let np = phi.num_positive();
        let rank = phi.rank();
        let mut basis = Vec::with_capacity(phi.len() + rank);
        for i in (0..np).rev() {
            basis.push(LieBasis::Root(Root(i)));
        }
        for i in 0..rank {
            basis.push(LieBasis::Cartan(i));
        }
        for i in 0..np {
            basis.push(LieBasis::Root(Root(i + np)));
        }
        let mut root_pos = vec![0; phi.len()];
        for (k, b) in basis.iter().enumerate() {
            if let LieBasis::Root(r) = b {
                root_pos[r.0] = k;
            }
        }
        let dim = basis.len();
        let cartan_pos = |i: usize| np + i;
        // Column j of ad x holds the coordinates of [x, b_j].
        let bracket = |x: LieBasis, y: LieBasis| -> Vec<(usize, i64)> {
            match (x, y) {
                (LieBasis::Cartan(_), LieBasis::Cartan(_)) => Vec::new(),
                (LieBasis::Cartan(i), LieBasis::Root(b)) => {
                    vec![(root_pos[b.0], phi.pairing(b, phi.simple_root(i)))]
                }
                (LieBasis::Root(a), LieBasis::Cartan(i)) => {
                    vec![(root_pos[a.0], -phi.pairing(a, phi.simple_root(i)))]
                }
                (LieBasis::Root(a), LieBasis::Root(b)) => {
                    if b == phi.neg(a) {
                        phi.coroot_coeffs(a)
                            .into_iter()
                            .enumerate()
                            .map(|(i, c)| (cartan_pos(i), c))
                            .collect()
                    } else if let Some(s) = phi.sum(a, b) {
                        vec![(root_pos[s.0], n(a, b))]
                    } else {
                        Vec::new()
                    }
                }
            }
        };
        let ad = basis
            .iter()
            .map(|&x| {
                let mut m = IntMat::zero(dim);
                for (j, &y) in basis.iter().enumerate() {
                    for (i, c) in bracket(x, y) {
                        m.set(i, j, m.get(i, j) + c);
                    }
                }
                m
            })
            .collect();
        LieAlgebra {
            basis,
            root_pos,
            ad,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LieBasis] {
        &self.basis
    }

    pub fn root_position(&self, a: Root) -> usize {
        self.root_pos[a.0]
    }

    /// ad of the k-th basis element.
    pub fn ad_basis(&self, k: usize) -> &IntMat {
        &self.ad[k]
    }

    pub fn ad_root(&self, a: Root) -> &IntMat {
        &self.ad[self.root_pos[a.0]]
    }

    /// Coordinates of [b_i, b_j].
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<i64> {
        (0..self.dim()).map(|k| self.ad[i].get(k, j)).collect()
    }

    /// Checks antisymmetry and the Jacobi identity on all basis triples;
    /// returns a description of the first failure.
    pub fn verify(&self) -> Result<(), String> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let a = self.bracket_basis(i, j);
                let b = self.bracket_basis(j, i);
                if a.iter().zip(&b).any(|(x, y)| x + y != 0) {
                    return Err(format!("antisymmetry fails for {:?}, {:?}", self.basis[i], self.basis[j]));
                }
            }
        }
        // ad is a Lie homomorphism iff Jacobi holds: ad[x,y] = [ad x, ad y].
        for i in 0..d {
            for j in i + 1..d {
                let xy = self.bracket_basis(i, j);
                let mut lhs = IntMat::zero(d);
                for (k, &c) in xy.iter().enumerate() {
                    if c != 0 {
                        lhs = lhs.add(&self.ad[k].scale(c));
                    }
                }
                if lhs != self.ad[i].bracket(&self.ad[j]) {
                    return Err(format!("Jacobi fails for {:?}, {:?}", self.basis[i], self.basis[j]));
                }
            }
        }
        Ok(())
    }
}
