//! Ideals, units, radical, local decomposition and related structure of
//! finite commutative rings, all computed by exhaustion.

use super::{Elem, Ring, RingError};
use crate::rootsys::RootSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Ideals are materialized as element sets up to this ring size.
pub const MATERIALIZE_LIMIT: u64 = 1 << 16;

/// Structure computations that scan every element refuse rings above this.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

fn require_exhaustive(ring: &Ring, what: &'static str) -> Result<(), RingError> {
    if ring.card() > EXHAUSTIVE_LIMIT {
        Err(RingError::TooLarge {
            what,
            card: ring.card(),
        })
    } else {
        Ok(())
    }
}

/// An ideal, with its element set materialized for small rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<Elem>,
    elements: Option<Vec<Elem>>,
}

impl Ideal {
    /// The ideal generated by `generators`.
    pub fn generated_by(ring: &Ring, generators: Vec<Elem>) -> Ideal {
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        generators.retain(|&g| g != Elem::ZERO);
        let elements = (ring.card() <= MATERIALIZE_LIMIT).then(|| {
            let multiples = generators
                .iter()
                .flat_map(|&g| ring.elements().map(move |r| ring.mul(r, g)));
            additive_span(ring, multiples)
        });
        Ideal {
            generators,
            elements,
        }
    }

    /// Wraps a known-closed element set.
    fn from_elements(mut elements: Vec<Elem>) -> Ideal {
        elements.sort();
        elements.dedup();
        let generators = elements.iter().copied().filter(|&e| e != Elem::ZERO).collect();
        Ideal {
            generators,
            elements: Some(elements),
        }
    }

    pub fn zero() -> Ideal {
        Ideal {
            generators: Vec::new(),
            elements: Some(vec![Elem::ZERO]),
        }
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Sorted elements, when materialized.
    pub fn elements(&self) -> Option<&[Elem]> {
        self.elements.as_deref()
    }

    fn elems(&self) -> &[Elem] {
        self.elements
            .as_deref()
            .expect("ideal elements are materialized for exhaustive rings")
    }

    pub fn len(&self) -> usize {
        self.elems().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elems().binary_search(&e).is_ok()
    }

    /// Exhaustive closure check under addition and ring multiplication.
    pub fn is_closed(&self, ring: &Ring) -> bool {
        let els = self.elems();
        els.iter().all(|&a| {
            els.iter().all(|&b| self.contains(ring.add(a, b)))
                && ring.elements().all(|r| self.contains(ring.mul(r, a)))
        })
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let els: Vec<Elem> = self
            .elems()
            .iter()
            .copied()
            .filter(|&e| other.contains(e))
            .collect();
        Ideal::from_elements(els)
    }

    /// The product ideal: additive span of all pairwise products.
    pub fn product(&self, ring: &Ring, other: &Ideal) -> Ideal {
        let prods = self
            .elems()
            .iter()
            .flat_map(|&a| other.elems().iter().map(move |&b| ring.mul(a, b)));
        Ideal::from_elements(additive_span(ring, prods))
    }

    pub fn format(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let gens = minimal_generators(ring, self);
        let parts: Vec<String> = gens.iter().map(|&g| ring.format(g)).collect();
        format!("({})", parts.join(", "))
    }
}

/// A small generating set, found greedily in element order.
fn minimal_generators(ring: &Ring, ideal: &Ideal) -> Vec<Elem> {
    let target = ideal.len();
    let mut gens = Vec::new();
    let mut current = Ideal::zero();
    for &e in ideal.elems() {
        if current.len() == target {
            break;
        }
        if !current.contains(e) {
            gens.push(e);
            current = Ideal::generated_by(ring, gens.clone());
        }
    }
    gens
}

/// Additive subgroup generated by `gens`, returned sorted.
pub fn additive_span(ring: &Ring, gens: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    let card = ring.card() as usize;
    let mut member = vec![false; card];
    member[0] = true;
    let mut elems = vec![Elem::ZERO];
    for g in gens {
        if member[g.index()] {
            continue;
        }
        let base = elems.clone();
        let mut m = g;
        while !member[m.index()] {
            for &h in &base {
                let x = ring.add(h, m);
                member[x.index()] = true;
                elems.push(x);
            }
            m = ring.add(m, g);
        }
    }
    elems.sort();
    elems
}

/// The unit group, each unit paired with its inverse.
pub fn units(ring: &Ring) -> Vec<(Elem, Elem)> {
    ring.elements()
        .filter_map(|a| ring.inv(a).map(|i| (a, i)))
        .collect()
}

/// Decomposition of a ring into local factors via primitive idempotents.
#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub idempotents: Vec<Elem>,
    pub factors: Vec<Ring>,
    /// `members[i][k]` is the element of the original ring represented by
    /// element `k` of factor `i`.
    members: Vec<Vec<Elem>>,
}

impl LocalDecomposition {
    /// a -> e_i a, as an element of factor `i`.
    pub fn project(&self, i: usize, a: Elem, ring: &Ring) -> Elem {
        let x = ring.mul(self.idempotents[i], a);
        Elem(self.members[i].binary_search(&x).expect("e_i a lies in e_i R") as u32)
    }

    pub fn embed(&self, i: usize, b: Elem) -> Elem {
        self.members[i][b.index()]
    }

    /// Reassembles an element from its factor components.
    pub fn assemble(&self, parts: &[Elem], ring: &Ring) -> Elem {
        parts
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (i, &p)| ring.add(acc, self.embed(i, p)))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

pub fn local_decomposition(ring: &Ring) -> Result<LocalDecomposition, RingError> {
    require_exhaustive(ring, "local decomposition")?;
    let idem: Vec<Elem> = ring
        .elements()
        .filter(|&e| e != Elem::ZERO && ring.mul(e, e) == e)
        .collect();
    let primitive: Vec<Elem> = idem
        .iter()
        .copied()
        .filter(|&e| {
            idem.iter()
                .all(|&f| f == e || ring.mul(e, f) != f)
        })
        .collect();
    let mut parts = Vec::new();
    for &e in &primitive {
        let members: Vec<Elem> = {
            let mut m: Vec<Elem> = ring.elements().map(|a| ring.mul(e, a)).collect();
            m.sort();
            m.dedup();
            m
        };
        let label = if primitive.len() == 1 {
            ring.label().to_string()
        } else {
            format!("{}*({})", ring.format(e), ring.label())
        };
        let factor = if primitive.len() == 1 {
            ring.clone()
        } else {
            Ring::from_subset(ring, members.clone(), e, label)?
        };
        let max = local_maximal_ideal(&factor).ok_or_else(|| {
            RingError::InvalidSpec(format!("factor {} is not local", factor.label()))
        })?;
        let q = factor.card() / max.len() as u64;
        let p = smallest_prime_factor(q);
        parts.push((p, e, factor, members));
    }
    parts.sort_by_key(|(p, e, _, _)| (*p, *e));
    Ok(LocalDecomposition {
        idempotents: parts.iter().map(|t| t.1).collect(),
        factors: parts.iter().map(|t| t.2.clone()).collect(),
        members: parts.into_iter().map(|t| t.3).collect(),
    })
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    (2..=n).find(|d| n % d == 0).unwrap_or(n)
}

/// The nonunits of a local ring, or `None` if they do not form an ideal.
fn local_maximal_ideal(ring: &Ring) -> Option<Ideal> {
    let nonunits: Vec<Elem> = ring.elements().filter(|&a| !ring.is_unit(a)).collect();
    let is_member = |x: Elem| nonunits.binary_search(&x).is_ok();
    let closed = nonunits
        .iter()
        .all(|&a| nonunits.iter().all(|&b| is_member(ring.add(a, b))));
    closed.then(|| Ideal::from_elements(nonunits))
}

/// All maximal ideals, computed factor-wise through the local decomposition.
pub fn maximal_ideals(ring: &Ring) -> Result<Vec<Ideal>, RingError> {
    let dec = local_decomposition(ring)?;
    let mut out = Vec::new();
    for (i, factor) in dec.factors.iter().enumerate() {
        let m = local_maximal_ideal(factor).expect("decomposition factors are local");
        let els: Vec<Elem> = ring
            .elements()
            .filter(|&a| m.contains(dec.project(i, a, ring)))
            .collect();
        out.push(Ideal::from_elements(els));
    }
    Ok(out)
}

/// Jacobson radical as the intersection of all maximal ideals.
pub fn jacobson_radical(ring: &Ring) -> Result<Ideal, RingError> {
    let maxes = maximal_ideals(ring)?;
    let mut j = maxes[0].clone();
    for m in &maxes[1..] {
        j = j.intersect(m);
    }
    Ok(j)
}

pub fn is_local(ring: &Ring) -> Result<bool, RingError> {
    Ok(maximal_ideals(ring)?.len() == 1)
}

/// The radical chain J ⊃ J² ⊃ … ⊃ J^d = 0 of a local ring.
#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    /// Order of the residue field.
    pub residue_order: u64,
    /// `(J^k, s_k)` for k = 1..d-1, with |J^k / J^{k+1}| = q^{s_k}.
    pub layers: Vec<(Ideal, u32)>,
    /// Least d with J^d = 0.
    pub nilpotency_degree: usize,
}

impl RadicalFiltration {
    /// J^k for any k >= 0 (J^0 is the whole ring).
    pub fn power(&self, ring: &Ring, k: usize) -> Ideal {
        match k {
            0 => Ideal::from_elements(ring.elements().collect()),
            k if k >= self.nilpotency_degree => Ideal::zero(),
            k => self.layers[k - 1].0.clone(),
        }
    }

    pub fn s(&self, k: usize) -> u32 {
        if k == 0 || k >= self.nilpotency_degree {
            0
        } else {
            self.layers[k - 1].1
        }
    }
}

pub fn radical_filtration(ring: &Ring) -> Result<RadicalFiltration, RingError> {
    let maxes = maximal_ideals(ring)?;
    if maxes.len() != 1 {
        return Err(RingError::NotLocal(maxes.len()));
    }
    let j = maxes.into_iter().next().unwrap();
    let q = ring.card() / j.len() as u64;
    let mut layers = Vec::new();
    let mut current = j.clone();
    let mut degree = 1;
    while !current.is_zero() {
        let next = current.product(ring, &j);
        let ratio = (current.len() / next.len()) as u64;
        let s = exact_log(ratio, q).ok_or_else(|| {
            RingError::InvalidSpec(format!(
                "layer of size {ratio} is not a power of the residue order {q}"
            ))
        })?;
        layers.push((current, s));
        current = next;
        degree += 1;
    }
    Ok(RadicalFiltration {
        residue_order: q,
        layers,
        nilpotency_degree: degree,
    })
}

fn exact_log(mut n: u64, base: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if n % base != 0 {
            return None;
        }
        n /= base;
        k += 1;
    }
    Some(k)
}

/// Residue classes a + I with a canonical (least) representative.
#[derive(Clone, Debug)]
pub struct IdealQuotient {
    rep: Vec<Elem>,
}

impl IdealQuotient {
    pub fn new(ring: &Ring, ideal: &Ideal) -> IdealQuotient {
        let card = ring.card() as usize;
        let mut rep = vec![Elem(u32::MAX); card];
        for a in ring.elements() {
            if rep[a.index()].0 != u32::MAX {
                continue;
            }
            for &i in ideal.elems() {
                rep[ring.add(a, i).index()] = a;
            }
        }
        IdealQuotient { rep }
    }

    #[inline]
    pub fn reduce(&self, a: Elem) -> Elem {
        self.rep[a.index()]
    }

    /// Sorted canonical representatives.
    pub fn representatives(&self) -> Vec<Elem> {
        let mut r: Vec<Elem> = self.rep.clone();
        r.sort();
        r.dedup();
        r
    }
}

/// A subfield section of the residue map of a local ring.
#[derive(Clone, Debug)]
pub enum Wedderburn {
    Split { section: Vec<Elem>, method: &'static str },
    Unsplittable { reason: String },
}

/// Searches for a coefficient field B̄ with ring = B̄ ⊕ J.
pub fn wedderburn_splitting(ring: &Ring) -> Result<Wedderburn, RingError> {
    let filt = radical_filtration(ring)?;
    let j = filt.power(ring, 1);
    let q = filt.residue_order;
    let p = smallest_prime_factor(q);
    let quotient = IdealQuotient::new(ring, &j);
    let is_section = |cand: &[Elem]| -> bool {
        if cand.len() as u64 != q {
            return false;
        }
        let mut classes: Vec<Elem> = cand.iter().map(|&c| quotient.reduce(c)).collect();
        classes.sort();
        classes.dedup();
        if classes.len() as u64 != q {
            return false;
        }
        let member = |x: Elem| cand.binary_search(&x).is_ok();
        cand.iter().all(|&a| {
            cand.iter()
                .all(|&b| member(ring.add(a, b)) && member(ring.mul(a, b)))
        }) && member(ring.one())
    };
    if j.is_zero() {
        return Ok(Wedderburn::Split {
            section: ring.elements().collect(),
            method: "field",
        });
    }
    if ring.characteristic() == p {
        // Teichmüller map a -> a^(q^m) with q^m >= nilpotency degree.
        let mut exp_steps = 1;
        let mut qm = q;
        while qm < filt.nilpotency_degree as u64 {
            qm = qm.saturating_mul(q);
            exp_steps += 1;
        }
        let mut image: Vec<Elem> = ring
            .elements()
            .map(|a| (0..exp_steps).fold(a, |x, _| ring.pow(x, q)))
            .collect();
        image.sort();
        image.dedup();
        if is_section(&image) {
            return Ok(Wedderburn::Split {
                section: image,
                method: "teichmuller",
            });
        }
    }
    if ring.card() > 256 {
        return Ok(Wedderburn::Unsplittable {
            reason: format!(
                "characteristic {} differs from residue characteristic {p}; exhaustive search skipped above 256 elements",
                ring.characteristic()
            ),
        });
    }
    // A section is a copy of F_q, hence generated by one element over the
    // prime subring; try the subring generated by every single element.
    for a in ring.elements() {
        let sub = subring_generated(ring, &[a]);
        if is_section(&sub) {
            return Ok(Wedderburn::Split {
                section: sub,
                method: "exhaustive",
            });
        }
    }
    Ok(Wedderburn::Unsplittable {
        reason: format!(
            "no subring maps isomorphically onto the residue field F_{q} (characteristic {} vs {p})",
            ring.characteristic()
        ),
    })
}

/// Smallest unital subring containing `gens`, sorted.
pub fn subring_generated(ring: &Ring, gens: &[Elem]) -> Vec<Elem> {
    let card = ring.card() as usize;
    let mut member = vec![false; card];
    let mut elems = Vec::new();
    let mut frontier = vec![Elem::ZERO, ring.one()];
    frontier.extend_from_slice(gens);
    while let Some(x) = frontier.pop() {
        if member[x.index()] {
            continue;
        }
        member[x.index()] = true;
        elems.push(x);
        let snapshot = elems.clone();
        for &y in &snapshot {
            for z in [ring.add(x, y), ring.mul(x, y), ring.neg(x)] {
                if !member[z.index()] {
                    frontier.push(z);
                }
            }
        }
    }
    elems.sort();
    elems
}

/// The subring generated by all units, and whether it is the whole ring.
#[derive(Clone, Debug)]
pub struct UnitSubring {
    pub elements: Vec<Elem>,
    pub equals_whole: bool,
}

pub fn unit_generated_subring(ring: &Ring) -> Result<UnitSubring, RingError> {
    require_exhaustive(ring, "unit-generated subring")?;
    // Products of units are units, so the subring is the additive span.
    let elements = additive_span(ring, units(ring).into_iter().map(|(u, _)| u));
    let equals_whole = elements.len() as u64 == ring.card();
    Ok(UnitSubring {
        elements,
        equals_whole,
    })
}

/// Invertibility conditions a root system imposes on a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NicePair {
    pub nice: bool,
    pub reason: String,
}

pub fn is_nice_pair(phi: &RootSystem, ring: &Ring) -> NicePair {
    let two = ring.is_unit(ring.from_int(2));
    let three = ring.is_unit(ring.from_int(3));
    if phi.is_g2() {
        if !two || !three {
            let mut missing = Vec::new();
            if !two {
                missing.push("2");
            }
            if !three {
                missing.push("3");
            }
            return NicePair {
                nice: false,
                reason: format!("G2 needs 2 and 3 invertible; not invertible: {}", missing.join(", ")),
            };
        }
        return NicePair {
            nice: true,
            reason: "G2 with 2 and 3 invertible".to_string(),
        };
    }
    if phi.has_b2_subsystem() {
        return if two {
            NicePair {
                nice: true,
                reason: "B2 subsystem present and 2 is invertible".to_string(),
            }
        } else {
            NicePair {
                nice: false,
                reason: "B2 subsystem present but 2 is not invertible".to_string(),
            }
        };
    }
    NicePair {
        nice: true,
        reason: "no invertibility condition for this type".to_string(),
    }
}

/// Outcome of the ring-axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub exhaustive: bool,
    pub triples_checked: u64,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Commutativity, associativity, distributivity and unitality, exhaustive
/// when |ring|³ ≤ 10⁶ and sampled (seeded) otherwise.
pub fn verify_axioms(ring: &Ring, seed: u64, samples: u64) -> AxiomReport {
    let n = ring.card();
    let exhaustive = n.saturating_mul(n).saturating_mul(n) <= 1_000_000;
    let mut failures = Vec::new();
    let check = |a: Elem, b: Elem, c: Elem, failures: &mut Vec<String>| {
        let fa = |s: &str| format!("{s} fails at ({}, {}, {})", ring.format(a), ring.format(b), ring.format(c));
        if ring.add(a, b) != ring.add(b, a) || ring.mul(a, b) != ring.mul(b, a) {
            failures.push(fa("commutativity"));
        }
        if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c))
            || ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c))
        {
            failures.push(fa("associativity"));
        }
        if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c)) {
            failures.push(fa("distributivity"));
        }
        if ring.mul(ring.one(), a) != a || ring.add(Elem::ZERO, a) != a || ring.add(a, ring.neg(a)) != Elem::ZERO {
            failures.push(fa("identity/inverse"));
        }
    };
    let mut count = 0;
    if exhaustive {
        for a in ring.elements() {
            for b in ring.elements() {
                for c in ring.elements() {
                    check(a, b, c, &mut failures);
                    count += 1;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let pick = |rng: &mut ChaCha8Rng| Elem(rng.gen_range(0..n) as u32);
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            check(a, b, c, &mut failures);
            count += 1;
        }
    }
    failures.truncate(20);
    AxiomReport {
        exhaustive,
        triples_checked: count,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::parse_ring;

    fn ring(s: &str) -> Ring {
        parse_ring(s).unwrap()
    }

    /// Brute-force oracle: all ideals by checking every additive span of
    /// element subsets is infeasible, so enumerate ideals generated by at
    /// most two elements (enough for the small rings below).
    fn all_ideals(r: &Ring) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = Vec::new();
        for a in r.elements() {
            for b in r.elements() {
                let i = Ideal::generated_by(r, vec![a, b]);
                let e = i.elements().unwrap().to_vec();
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    #[test]
    fn units_by_exhaustion() {
        let u: Vec<u32> = units(&ring("Z/12")).iter().map(|(a, _)| a.0).collect();
        assert_eq!(u, vec![1, 5, 7, 11]);
        assert_eq!(units(&ring("Z/3[x]/(x^2)")).len(), 6);
        assert_eq!(units(&ring("Z/5")).len(), 4);
        for (a, b) in units(&ring("Z/3[x]/(x^3)")) {
            assert_eq!(ring("Z/3[x]/(x^3)").mul(a, b), Elem(1));
        }
    }

    #[test]
    fn maximal_ideals_match_brute_force() {
        for s in ["Z/12", "Z/3[x]/(x^2)", "Z/5", "Z/4 x Z/3", "Z/2 x Z/2", "Z/8"] {
            let r = ring(s);
            let ideals = all_ideals(&r);
            let proper: Vec<&Vec<Elem>> =
                ideals.iter().filter(|i| i.len() as u64 != r.card()).collect();
            let brute: Vec<Vec<Elem>> = proper
                .iter()
                .filter(|i| {
                    !proper
                        .iter()
                        .any(|k| k.len() > i.len() && i.iter().all(|e| k.contains(e)))
                })
                .map(|i| (*i).clone())
                .collect();
            let mut ours: Vec<Vec<Elem>> = maximal_ideals(&r)
                .unwrap()
                .iter()
                .map(|m| m.elements().unwrap().to_vec())
                .collect();
            let mut brute = brute;
            ours.sort();
            brute.sort();
            assert_eq!(ours, brute, "maximal ideals of {s}");
        }
        let z12 = ring("Z/12");
        let m = maximal_ideals(&z12).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].format(&z12), "(2)");
        assert_eq!(m[1].format(&z12), "(3)");
    }

    #[test]
    fn units_are_complement_of_maximal_ideals() {
        for s in ["Z/12", "Z/3[x]/(x^2)", "Z/4 x Z/3", "Z/2[x]/(x^2+x)", "Z/9"] {
            let r = ring(s);
            let maxes = maximal_ideals(&r).unwrap();
            for a in r.elements() {
                let in_some = maxes.iter().any(|m| m.contains(a));
                assert_eq!(r.is_unit(a), !in_some, "{s}: {}", r.format(a));
            }
        }
    }

    #[test]
    fn radical_examples() {
        let z4 = ring("Z/4");
        let j = jacobson_radical(&z4).unwrap();
        assert_eq!(j.elements().unwrap(), &[Elem(0), Elem(2)]);
        assert_eq!(radical_filtration(&z4).unwrap().nilpotency_degree, 2);
        let f = radical_filtration(&ring("Z/3[x]/(x^3)")).unwrap();
        assert_eq!(f.nilpotency_degree, 3);
        assert_eq!(f.layers.iter().map(|l| l.1).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(f.layers[0].0.len(), 9);
        assert_eq!(f.layers[1].0.len(), 3);
        assert!(jacobson_radical(&ring("Z/6")).unwrap().is_zero());
    }

    #[test]
    fn filtration_examples() {
        let z8 = radical_filtration(&ring("Z/8")).unwrap();
        assert_eq!(z8.residue_order, 2);
        assert_eq!(z8.layers.iter().map(|l| l.1).collect::<Vec<_>>(), vec![1, 1]);
        let z5 = radical_filtration(&ring("Z/5")).unwrap();
        assert!(z5.layers.is_empty());
        assert_eq!(z5.nilpotency_degree, 1);
        assert_eq!(
            radical_filtration(&ring("Z/6")).unwrap_err(),
            RingError::NotLocal(2)
        );
    }

    #[test]
    fn local_ring_cardinality_formula() {
        for s in ["Z/8", "Z/9", "Z/3[x]/(x^3)", "Z/2[x]/(x^2+x+1)", "Z/4[x]/(x^2)", "Z/25"] {
            let r = ring(s);
            let f = radical_filtration(&r).unwrap();
            let total: u32 = 1 + f.layers.iter().map(|l| l.1).sum::<u32>();
            assert_eq!(f.residue_order.pow(total), r.card(), "{s}");
            // J^d = 0 and J^(d-1) != 0
            let d = f.nilpotency_degree;
            assert!(f.power(&r, d).is_zero());
            if d > 1 {
                assert!(!f.power(&r, d - 1).is_zero());
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let z12 = ring("Z/12");
        let d = local_decomposition(&z12).unwrap();
        assert_eq!(d.idempotents, vec![Elem(9), Elem(4)]);
        assert_eq!(d.factors[0].card(), 4);
        assert_eq!(d.factors[1].card(), 3);
        let z5 = local_decomposition(&ring("Z/5")).unwrap();
        assert_eq!(z5.idempotents, vec![Elem(1)]);
        let p = ring("Z/4 x Z/3");
        let d = local_decomposition(&p).unwrap();
        let labels: Vec<String> = d.idempotents.iter().map(|&e| p.format(e)).collect();
        assert_eq!(labels, vec!["(1,0)", "(0,1)"]);
    }

    #[test]
    fn decomposition_is_a_ring_isomorphism() {
        for s in ["Z/12", "Z/30", "Z/2 x Z/2 x Z/3", "Z/6[x]/(x^2)"] {
            let r = ring(s);
            let d = local_decomposition(&r).unwrap();
            let sum = d.idempotents.iter().fold(Elem::ZERO, |a, &e| r.add(a, e));
            assert_eq!(sum, r.one());
            for (i, &e) in d.idempotents.iter().enumerate() {
                for (k, &f) in d.idempotents.iter().enumerate() {
                    if i != k {
                        assert_eq!(r.mul(e, f), Elem::ZERO);
                    }
                }
            }
            let mut seen = std::collections::HashSet::new();
            for a in r.elements() {
                let parts: Vec<Elem> = (0..d.len()).map(|i| d.project(i, a, &r)).collect();
                assert_eq!(d.assemble(&parts, &r), a);
                assert!(seen.insert(parts));
            }
            for a in r.elements() {
                for b in r.elements() {
                    for i in 0..d.len() {
                        let f = &d.factors[i];
                        assert_eq!(
                            d.project(i, r.mul(a, b), &r),
                            f.mul(d.project(i, a, &r), d.project(i, b, &r))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn unit_generated() {
        assert!(unit_generated_subring(&ring("Z/4")).unwrap().equals_whole);
        assert!(unit_generated_subring(&ring("Z/3[x]/(x^2)")).unwrap().equals_whole);
        for n in 2..20 {
            assert!(unit_generated_subring(&ring(&format!("Z/{n}"))).unwrap().equals_whole);
        }
        let f2f2 = unit_generated_subring(&ring("Z/2 x Z/2")).unwrap();
        assert!(!f2f2.equals_whole);
        assert_eq!(f2f2.elements.len(), 2);
    }

    #[test]
    fn wedderburn_examples() {
        let r = ring("Z/3[x]/(x^2)");
        match wedderburn_splitting(&r).unwrap() {
            Wedderburn::Split { section, .. } => {
                assert_eq!(section, vec![Elem(0), Elem(1), Elem(2)]);
            }
            w => panic!("expected split, got {w:?}"),
        }
        assert!(matches!(
            wedderburn_splitting(&ring("Z/4")).unwrap(),
            Wedderburn::Unsplittable { .. }
        ));
        match wedderburn_splitting(&ring("Z/5")).unwrap() {
            Wedderburn::Split { section, .. } => assert_eq!(section.len(), 5),
            w => panic!("{w:?}"),
        }
        // F4[y]/(y^2): the section is a copy of F4.
        let r = ring("(Z/2[x]/(x^2+x+1))[x]/(x^2)");
        match wedderburn_splitting(&r).unwrap() {
            Wedderburn::Split { section, .. } => assert_eq!(section.len(), 4),
            w => panic!("{w:?}"),
        }
    }

    #[test]
    fn z4_has_no_two_element_section() {
        // Oracle: every 2-element subset containing 0 and 1.
        let r = ring("Z/4");
        let sections = (0..4u32)
            .flat_map(|a| (0..4u32).map(move |b| (a, b)))
            .filter(|&(a, b)| a < b)
            .filter(|&(a, b)| {
                let s = [Elem(a), Elem(b)];
                let m = |x: Elem| s.contains(&x);
                m(Elem(0))
                    && m(Elem(1))
                    && s.iter().all(|&x| s.iter().all(|&y| m(r.add(x, y)) && m(r.mul(x, y))))
            })
            .count();
        assert_eq!(sections, 0);
    }

    #[test]
    fn axioms_hold() {
        for s in ["Z/12", "Z/3[x]/(x^2)", "Z/4 x Z/3", "Z/7[x]/(x^4+1)"] {
            let rep = verify_axioms(&ring(s), 0, 2000);
            assert!(rep.pass(), "{s}: {:?}", rep.failures);
        }
    }

    #[test]
    fn ideals_are_closed() {
        let r = ring("Z/2[x]/(x^3)");
        for m in maximal_ideals(&r).unwrap() {
            assert!(m.is_closed(&r));
        }
        let i = Ideal::generated_by(&r, vec![r.poly_from_coeffs(&[Elem(0), Elem(0), Elem(1)]).unwrap()]);
        assert_eq!(i.len(), 2);
        assert!(i.is_closed(&r));
    }
}
