use crate::rootsys::{chevalley_constants, CartanType, IntMat, LieBasis, Root, RootSystem, StructureConstants};
use std::sync::Arc;

use super::ChevError;

/// An integral faithful representation of the universal Chevalley group,
/// given by root vectors X_α in a weight basis.
///
/// Root vectors are normalized to satisfy [X_α, X_β] = N_{α,β} X_{α+β}
/// with the constants of [`StructureConstants`]; this is checked at
/// construction.
#[derive(Debug)]
pub struct Representation {
    phi: RootSystem,
    consts: StructureConstants,
    name: &'static str,
    dim: usize,
    /// Divided powers X_α^n / n! for each root.
    powers: Vec<Vec<IntMat>>,
    /// ⟨λ_b, α_i∨⟩ for each basis vector b and simple root α_i.
    weights: Vec<Vec<i64>>,
    /// Invariant alternating form, when the representation is symplectic.
    form: Option<IntMat>,
}

impl Representation {
    /// The default faithful representation for the type: natural for A_n,
    /// 4-dimensional symplectic for B2, adjoint for G2.
    pub fn for_root_system(phi: &RootSystem) -> Result<Arc<Representation>, ChevError> {
        match phi.cartan_type() {
            CartanType::A(_) => Ok(Arc::new(Self::natural(phi))),
            CartanType::B(2) => Ok(Arc::new(Self::symplectic_b2(phi))),
            CartanType::G2 => Ok(Arc::new(Self::adjoint(phi))),
            t => Err(ChevError::UnsupportedType(format!(
                "no matrix realization of the universal group of type {t}"
            ))),
        }
    }

    pub fn parse(label: &str) -> Result<Arc<Representation>, ChevError> {
        let phi = RootSystem::parse(label).map_err(|e| ChevError::UnsupportedType(e.to_string()))?;
        Self::for_root_system(&phi)
    }

    fn natural(phi: &RootSystem) -> Representation {
        let n = phi.rank() + 1;
        let simple = |i: usize| (IntMat::unit(n, i, i + 1), IntMat::unit(n, i + 1, i));
        let weights = (0..n)
            .map(|b| {
                (0..phi.rank())
                    .map(|i| (b == i) as i64 - (b == i + 1) as i64)
                    .collect()
            })
            .collect();
        Self::from_simple(phi, "natural", n, simple, weights, None)
    }

    fn symplectic_b2(phi: &RootSystem) -> Representation {
        // Basis b1..b4 with weights (1/2,1/2), (1/2,-1/2), (-1/2,1/2), (-1/2,-1/2).
        let e = |i: usize, j: usize| IntMat::unit(4, i, j);
        let simple = |i: usize| match i {
            0 => (e(1, 2), e(2, 1)),
            _ => (e(0, 1).sub(&e(2, 3)), e(1, 0).sub(&e(3, 2))),
        };
        let weights = vec![vec![0, 1], vec![1, -1], vec![-1, 1], vec![0, -1]];
        let form = e(0, 3).sub(&e(3, 0)).add(&e(1, 2)).sub(&e(2, 1));
        Self::from_simple(phi, "symplectic", 4, simple, weights, Some(form))
    }

    /// The adjoint representation on the Chevalley lattice.
    pub fn adjoint(phi: &RootSystem) -> Representation {
        let consts = chevalley_constants(phi);
        let lie = consts.lie_algebra();
        let dim = lie.dim();
        let powers = phi
            .roots()
            .map(|r| lie.ad_root(r).divided_powers())
            .collect();
        let weights = lie
            .basis()
            .iter()
            .map(|b| match b {
                LieBasis::Root(r) => (0..phi.rank())
                    .map(|i| phi.pairing(*r, phi.simple_root(i)))
                    .collect(),
                LieBasis::Cartan(_) => vec![0; phi.rank()],
            })
            .collect();
        let rep = Representation {
            phi: phi.clone(),
            consts,
            name: "adjoint",
            dim,
            powers,
            weights,
            form: None,
        };
        rep.validate().expect("adjoint representation is consistent");
        rep
    }

    /// Builds all root vectors from simple ones: X_ξ = [X_α, X_β] / N_{α,β}
    /// along extraspecial decompositions, for positive and negative roots.
    fn from_simple(
        phi: &RootSystem,
        name: &'static str,
        dim: usize,
        simple: impl Fn(usize) -> (IntMat, IntMat),
        weights: Vec<Vec<i64>>,
        form: Option<IntMat>,
    ) -> Representation {
        let consts = chevalley_constants(phi);
        let np = phi.num_positive();
        let mut x: Vec<Option<IntMat>> = vec![None; phi.len()];
        for i in 0..phi.rank() {
            let (pos, neg) = simple(i);
            x[i] = Some(pos);
            x[i + np] = Some(neg);
        }
        for z in phi.positive_roots().skip(phi.rank()) {
            let a = (0..phi.rank())
                .map(Root)
                .find(|&a| phi.combination(1, z, -1, a).is_some_and(|r| phi.is_positive(r)))
                .unwrap();
            let b = phi.combination(1, z, -1, a).unwrap();
            for (a, b, z) in [(a, b, z), (phi.neg(a), phi.neg(b), phi.neg(z))] {
                let br = x[a.0].as_ref().unwrap().bracket(x[b.0].as_ref().unwrap());
                x[z.0] = Some(
                    br.div_exact(consts.n(a, b))
                        .expect("bracket is divisible by the structure constant"),
                );
            }
        }
        let powers = x
            .into_iter()
            .map(|m| m.unwrap().divided_powers())
            .collect();
        let rep = Representation {
            phi: phi.clone(),
            consts,
            name,
            dim,
            powers,
            weights,
            form,
        };
        if let Err(e) = rep.validate() {
            panic!("{name} representation of {phi} is inconsistent: {e}");
        }
        rep
    }

    /// Checks the Chevalley relations between root vectors and the
    /// diagonal action of coroots, and invariance of the form.
    pub fn validate(&self) -> Result<(), String> {
        let phi = &self.phi;
        for a in phi.roots() {
            let xa = self.root_vector(a);
            for b in phi.roots() {
                let xb = self.root_vector(b);
                let br = xa.bracket(xb);
                let expected = if b == phi.neg(a) {
                    self.coroot_matrix(a)
                } else if let Some(s) = phi.sum(a, b) {
                    self.root_vector(s).scale(self.consts.n(a, b))
                } else {
                    IntMat::zero(self.dim)
                };
                if br != expected {
                    return Err(format!("[X_{}, X_{}] is wrong", phi.label(a), phi.label(b)));
                }
            }
            // Weight compatibility: X_α maps weight λ to λ + α.
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if xa.get(i, j) != 0 {
                        for s in 0..phi.rank() {
                            let sr = phi.simple_root(s);
                            if self.weights[i][s] - self.weights[j][s] != phi.pairing(a, sr) {
                                return Err(format!("X_{} does not shift weights by the root", phi.label(a)));
                            }
                        }
                    }
                }
            }
            if let Some(f) = &self.form {
                if xa.transpose().mul(f).add(&f.mul(xa)) != IntMat::zero(self.dim) {
                    return Err(format!("X_{} does not preserve the form", phi.label(a)));
                }
            }
        }
        Ok(())
    }

    /// Diagonal matrix of h_α = [X_α, X_{−α}] in the weight basis.
    pub fn coroot_matrix(&self, a: Root) -> IntMat {
        let mut m = IntMat::zero(self.dim);
        for b in 0..self.dim {
            m.set(b, b, self.weight_pairing(b, a));
        }
        m
    }

    /// ⟨λ_b, α∨⟩.
    pub fn weight_pairing(&self, b: usize, a: Root) -> i64 {
        self.phi
            .coroot_coeffs(a)
            .iter()
            .zip(&self.weights[b])
            .map(|(c, w)| c * w)
            .sum()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.phi
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.consts
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn root_vector(&self, a: Root) -> &IntMat {
        &self.powers[a.0][1]
    }

    pub fn divided_powers(&self, a: Root) -> &[IntMat] {
        &self.powers[a.0]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn form(&self) -> Option<&IntMat> {
        self.form.as_ref()
    }

    /// Whether exp(tX) needs denominators beyond what the lattice provides;
    /// for the adjoint G2 lattice the divided powers are integral but the
    /// construction of the group over a ring is only used for nice pairs.
    pub fn max_power(&self) -> usize {
        self.powers.iter().map(|p| p.len() - 1).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representations_validate() {
        for s in ["A2", "A3", "A4", "B2", "G2"] {
            let rep = Representation::parse(s).unwrap();
            rep.validate().unwrap();
        }
        assert!(Representation::parse("C3").is_err());
    }

    #[test]
    fn natural_a2_root_vectors_are_matrix_units() {
        let rep = Representation::parse("A2").unwrap();
        let phi = rep.root_system();
        for r in phi.roots() {
            let l = phi.label(r);
            let (i, j) = (l.as_bytes()[0] - b'1', l.as_bytes()[1] - b'1');
            assert_eq!(
                rep.root_vector(r).ratio(&IntMat::unit(3, i as usize, j as usize)).map(i64::abs),
                Some(1)
            );
        }
        let e13 = phi.find_label("13").unwrap();
        assert_eq!(rep.root_vector(e13), &IntMat::unit(3, 0, 2));
    }

    #[test]
    fn dimensions() {
        assert_eq!(Representation::parse("A3").unwrap().dim(), 4);
        assert_eq!(Representation::parse("B2").unwrap().dim(), 4);
        let g2 = Representation::parse("G2").unwrap();
        assert_eq!(g2.dim(), 14);
        assert_eq!(g2.max_power(), 3);
    }
}
