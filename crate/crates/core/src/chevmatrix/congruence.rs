use super::{ChevError, ChevGroup, ElementStore, GroupElement, Representation};
use crate::finring::{radical_filtration, Elem, Ideal, IdealQuotient, RadicalFiltration};
use crate::rootsys::{LieBasis, Root};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use std::sync::Arc;

/// The level-k congruence subgroup G(S, J^k) of a local ring.
#[derive(Clone, Debug)]
pub struct CongruenceData {
    pub level: usize,
    pub ideal: Ideal,
}

impl CongruenceData {
    /// g ≡ 1 mod J^k entrywise.
    pub fn contains(&self, g: &ChevGroup, x: &GroupElement) -> bool {
        let r = g.ring();
        let d = g.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let v = if i == j { r.sub(x.get(i, j), r.one()) } else { x.get(i, j) };
                self.ideal.contains(v)
            })
        })
    }
}

fn filtration(g: &ChevGroup) -> Result<RadicalFiltration, ChevError> {
    radical_filtration(g.ring()).map_err(|e| ChevError::PreconditionFailed(e.to_string()))
}

/// Generators e_α(j), j ∈ J^k, and h_{α_i}(1 + j) of G(S, J^k), each
/// paired with its inverse.
fn level_generators(g: &ChevGroup, ideal: &Ideal) -> Vec<(GroupElement, GroupElement)> {
    let r = g.ring();
    let phi = g.root_system();
    let members: Vec<Elem> = ideal
        .elements()
        .expect("ideal of a small ring is materialized")
        .iter()
        .copied()
        .filter(|&j| j != Elem::ZERO)
        .collect();
    let mut gens = Vec::new();
    for a in phi.roots() {
        for &j in &members {
            gens.push((g.e(a, j), g.e(a, r.neg(j))));
        }
    }
    for i in 0..phi.rank() {
        let a = phi.simple_root(i);
        for &j in &members {
            let u = r.add(r.one(), j);
            let ui = r.inv(u).expect("1 + radical is a unit");
            gens.push((g.h_diagonal(a, u).unwrap(), g.h_diagonal(a, ui).unwrap()));
        }
    }
    gens
}

/// Enumerates G(S, J^k) as the closure of its root and torus generators.
pub fn congruence_subgroup(
    g: &ChevGroup,
    level: usize,
    budget: u64,
) -> Result<(CongruenceData, ElementStore), ChevError> {
    let filt = filtration(g)?;
    let ideal = filt.power(g.ring(), level);
    let gens: Vec<GroupElement> = level_generators(g, &ideal).into_iter().map(|p| p.0).collect();
    let store = ElementStore::closure(g, &gens, budget)?;
    Ok((CongruenceData { level, ideal }, store))
}

pub fn congruence_subgroup_order(g: &ChevGroup, level: usize, budget: u64) -> Result<u64, ChevError> {
    Ok(congruence_subgroup(g, level, budget)?.1.order())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FiltrationReport {
    pub phi: String,
    pub ring: String,
    pub level: usize,
    pub residue_order: u64,
    pub s_k: u32,
    pub subgroup_order: u64,
    pub quotient_order: u64,
    pub expected_order: u64,
    pub all_in_congruence_subgroup: bool,
    pub abelian: bool,
    pub exponent_divides_p: bool,
    pub lie_map_injective: bool,
    pub lie_map_onto: bool,
    pub lie_map_homomorphism: bool,
    pub adjoint_samples: u64,
    pub adjoint_failures: u64,
}

impl FiltrationReport {
    pub fn pass(&self) -> bool {
        self.quotient_order == self.expected_order
            && self.all_in_congruence_subgroup
            && self.abelian
            && self.exponent_divides_p
            && self.lie_map_injective
            && self.lie_map_onto
            && self.lie_map_homomorphism
            && self.adjoint_failures == 0
    }
}

/// The Chevalley basis of 𝔤 inside the representation, in the order of
/// the adjoint Lie algebra basis.
fn chevalley_basis(g: &ChevGroup) -> Vec<GroupElement> {
    let r = g.ring();
    let rep = g.rep();
    let phi = g.root_system();
    let lie = rep.constants().lie_algebra();
    lie.basis()
        .iter()
        .map(|b| {
            let m = match b {
                LieBasis::Root(a) => rep.root_vector(*a).clone(),
                LieBasis::Cartan(i) => rep.coroot_matrix(phi.simple_root(*i)),
            };
            GroupElement::from_entries(g.dim(), m.entries().iter().map(|&c| r.from_int(c)).collect())
        })
        .collect()
}

/// I + Σ c_b X_b.
fn lie_point(g: &ChevGroup, basis: &[GroupElement], coeffs: &[Elem]) -> GroupElement {
    let r = g.ring();
    let mut x = g.identity();
    for (c, m) in coeffs.iter().zip(basis) {
        if *c == Elem::ZERO {
            continue;
        }
        for (dst, &e) in x.entries.iter_mut().zip(&m.entries) {
            if e != Elem::ZERO {
                *dst = r.add(*dst, r.mul(*c, e));
            }
        }
    }
    x
}

/// Verifies that G(S,J^k)/G(S,J^{k+1}) is elementary abelian of order
/// q^{dim 𝔤 · s_k}, that c ↦ I + Σ c_b X_b is an isomorphism from
/// (J^k/J^{k+1}) ⊗ 𝔤 onto it, and that conjugation matches the adjoint
/// action on sampled pairs.
pub fn filtration_quotient_check(
    g: &ChevGroup,
    level: usize,
    seed: u64,
    samples: u64,
    budget: u64,
) -> Result<FiltrationReport, ChevError> {
    if level == 0 {
        return Err(ChevError::PreconditionFailed("level must be at least 1".to_string()));
    }
    let r = g.ring();
    let phi = g.root_system();
    let filt = filtration(g)?;
    let next = filt.power(r, level + 1);
    let quot = IdealQuotient::new(r, &next);
    let (data, store) = congruence_subgroup(g, level, budget)?;
    let gens = level_generators(g, &data.ideal);
    let reduce = |x: &GroupElement| g.reduce(x, &quot);

    let mut report = FiltrationReport {
        phi: phi.to_string(),
        ring: r.label().to_string(),
        level,
        residue_order: filt.residue_order,
        s_k: filt.s(level),
        subgroup_order: store.order(),
        quotient_order: 0,
        expected_order: filt.residue_order.pow(filt.s(level) * (phi.len() + phi.rank()) as u32),
        all_in_congruence_subgroup: store.elements().iter().all(|x| data.contains(g, x)),
        abelian: true,
        exponent_divides_p: true,
        lie_map_injective: true,
        lie_map_onto: true,
        lie_map_homomorphism: true,
        adjoint_samples: 0,
        adjoint_failures: 0,
    };

    let classes: HashSet<GroupElement> = store.elements().iter().map(reduce).collect();
    report.quotient_order = classes.len() as u64;

    // Every element commutes with every generator modulo J^{k+1}.
    let p = crate::finring::smallest_prime_factor(filt.residue_order);
    'outer: for x in store.elements() {
        let xi = g.inverse(x).expect("group element");
        for (y, yi) in &gens {
            if !g.is_identity(&reduce(&g.commutator(x, &xi, y, yi))) {
                report.abelian = false;
                break 'outer;
            }
        }
    }
    for x in store.elements() {
        let mut pw = g.identity();
        for _ in 0..p {
            pw = g.mul(&pw, x);
        }
        if !g.is_identity(&reduce(&pw)) {
            report.exponent_divides_p = false;
            break;
        }
    }

    // The Lie map on all coefficient tuples.
    let basis = chevalley_basis(g);
    let reps: Vec<Elem> = {
        let mut v: Vec<Elem> = data
            .ideal
            .elements()
            .unwrap()
            .iter()
            .map(|&j| quot.reduce(j))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let dim = basis.len();
    let tuples = (reps.len() as f64).powi(dim as i32);
    let mut image = HashSet::new();
    if tuples <= budget as f64 {
        let mut digits = vec![0usize; dim];
        loop {
            let c: Vec<Elem> = digits.iter().map(|&k| reps[k]).collect();
            let x = reduce(&lie_point(g, &basis, &c));
            if !classes.contains(&x) {
                report.lie_map_onto = false;
            }
            if !image.insert(x) {
                report.lie_map_injective = false;
            }
            if !advance(&mut digits, reps.len()) {
                break;
            }
        }
        report.lie_map_onto &= image.len() == classes.len();
    } else {
        report.lie_map_onto = false;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_coeffs = |rng: &mut ChaCha8Rng| -> Vec<Elem> {
        (0..dim).map(|_| reps[rng.gen_range(0..reps.len())]).collect()
    };
    for _ in 0..samples {
        let a = random_coeffs(&mut rng);
        let b = random_coeffs(&mut rng);
        let sum: Vec<Elem> = a.iter().zip(&b).map(|(&x, &y)| quot.reduce(r.add(x, y))).collect();
        let lhs = reduce(&g.mul(&lie_point(g, &basis, &a), &lie_point(g, &basis, &b)));
        if lhs != reduce(&lie_point(g, &basis, &sum)) {
            report.lie_map_homomorphism = false;
        }
    }

    // Adjoint equivariance: g (I + vX) g⁻¹ = I + v·Ad(g)X modulo J^{k+1}.
    let adj = ChevGroup::new(Arc::new(Representation::adjoint(phi)), r.clone());
    let nonzero_reps: Vec<Elem> = reps.iter().copied().filter(|&v| v != Elem::ZERO).collect();
    if !nonzero_reps.is_empty() {
        let mut words: Vec<(Vec<(Root, Elem)>, usize, Elem)> = Vec::new();
        // h_{α_1}(2) acting on the lowest basis vector's root, when 2 is a unit.
        let two = r.from_int(2);
        if let Some(two_inv) = r.inv(two) {
            let a = phi.simple_root(0);
            let na = phi.neg(a);
            let m1 = r.neg(r.one());
            let word = vec![(a, two), (na, r.neg(two_inv)), (a, two), (a, m1), (na, r.one()), (a, m1)];
            let pos = g.rep().constants().lie_algebra().root_position(a);
            words.push((word, pos, nonzero_reps[0]));
        }
        while (words.len() as u64) < samples {
            let len = rng.gen_range(1..=4);
            let word = (0..len)
                .map(|_| {
                    let a = Root(rng.gen_range(0..phi.len()));
                    (a, Elem(rng.gen_range(0..r.card() as u32)))
                })
                .collect();
            let b = rng.gen_range(0..dim);
            let v = nonzero_reps[rng.gen_range(0..nonzero_reps.len())];
            words.push((word, b, v));
        }
        for (word, b, v) in words {
            let x = g.product(word.iter().map(|&(a, t)| g.e(a, t)).collect::<Vec<_>>().iter());
            let xi = g.product(word.iter().rev().map(|&(a, t)| g.e(a, r.neg(t))).collect::<Vec<_>>().iter());
            let mut c = vec![Elem::ZERO; dim];
            c[b] = v;
            let lhs = reduce(&g.mul(&g.mul(&x, &lie_point(g, &basis, &c)), &xi));
            let ad = adj.product(word.iter().map(|&(a, t)| adj.e(a, t)).collect::<Vec<_>>().iter());
            let coeffs: Vec<Elem> = (0..dim).map(|k| r.mul(v, ad.get(k, b))).collect();
            let rhs = reduce(&lie_point(g, &basis, &coeffs));
            report.adjoint_samples += 1;
            if lhs != rhs {
                report.adjoint_failures += 1;
            }
        }
    }
    Ok(report)
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

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CommutatorFiltrationReport {
    pub ring: String,
    pub s: usize,
    pub t: usize,
    pub samples: u64,
    pub failures: u64,
}

impl CommutatorFiltrationReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// Samples g ∈ G(S,J^s), h ∈ G(S,J^t) as random generator words and checks
/// [g, h] ∈ G(S, J^{s+t}).
pub fn commutator_filtration_check(
    g: &ChevGroup,
    s: usize,
    t: usize,
    samples: u64,
    seed: u64,
) -> Result<CommutatorFiltrationReport, ChevError> {
    let r = g.ring();
    let filt = filtration(g)?;
    let gs = level_generators(g, &filt.power(r, s));
    let gt = level_generators(g, &filt.power(r, t));
    let target = CongruenceData {
        level: s + t,
        ideal: filt.power(r, s + t),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CommutatorFiltrationReport {
        ring: r.label().to_string(),
        s,
        t,
        samples,
        failures: 0,
    };
    let sample = |rng: &mut ChaCha8Rng, gens: &[(GroupElement, GroupElement)]| {
        let mut x = g.identity();
        let mut xi = g.identity();
        if gens.is_empty() {
            return (x, xi);
        }
        for _ in 0..rng.gen_range(1..=6) {
            let (y, yi) = &gens[rng.gen_range(0..gens.len())];
            x = g.mul(&x, y);
            xi = g.mul(yi, &xi);
        }
        (x, xi)
    };
    for _ in 0..samples {
        let (x, xi) = sample(&mut rng, &gs);
        let (y, yi) = sample(&mut rng, &gt);
        if !target.contains(g, &g.commutator(&x, &xi, &y, &yi)) {
            report.failures += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::parse_ring;

    fn group(phi: &str, ring: &str) -> ChevGroup {
        ChevGroup::parse(phi, &parse_ring(ring).unwrap()).unwrap()
    }

    #[test]
    fn congruence_orders() {
        let g = group("A2", "Z/4");
        assert_eq!(congruence_subgroup_order(&g, 1, 1 << 20).unwrap(), 256);
        assert_eq!(congruence_subgroup_order(&g, 2, 1 << 20).unwrap(), 1);
        let b = group("B2", "Z/9");
        assert_eq!(congruence_subgroup_order(&b, 1, 1 << 20).unwrap(), 3u64.pow(10));
        assert!(congruence_subgroup_order(&group("A2", "Z/6"), 1, 100).is_err());
    }

    #[test]
    fn filtration_layers() {
        let g = group("A2", "F2[x]/(x^3)");
        let rep = filtration_quotient_check(&g, 2, 1, 50, 1 << 22).unwrap();
        assert_eq!(rep.quotient_order, 256);
        assert!(rep.pass(), "{rep:?}");
        let g = group("A2", "Z/4");
        let rep = filtration_quotient_check(&g, 1, 1, 50, 1 << 22).unwrap();
        assert_eq!(rep.expected_order, 256);
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn commutators_deepen() {
        let g = group("A2", "Z/8");
        let rep = commutator_filtration_check(&g, 1, 2, 200, 5).unwrap();
        assert!(rep.pass());
        let g = group("A2", "Z/3[x]/(x^3)");
        assert!(commutator_filtration_check(&g, 1, 1, 200, 5).unwrap().pass());
        // Level 1 against level 0 need not land in level 1 + 0 + 1.
        let bad = CongruenceData {
            level: 2,
            ideal: radical_filtration(g.ring()).unwrap().power(g.ring(), 2),
        };
        let a = g.root_system().simple_root(0);
        let x = g.identity();
        assert!(bad.contains(&g, &x));
        assert!(!bad.contains(&g, &g.e(a, g.ring().one())));
    }
}
