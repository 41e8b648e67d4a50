use super::constructions::{b2_mult_word, b2_nu, b2_pi, g2_kappa, g2_short_mult_word, g2_theta};
use super::constructions::compose_product;
use super::{carrier_root, mult_word, transport_word, SignTable, WordError, WordMap};
use crate::chevmatrix::{bigcell_factor, BigCell, ChevGroup, GroupElement, Representation};
use crate::finring::{is_nice_pair, parse_elem, parse_ring, Elem, Ring, RingHom};
use crate::rootsys::{Root, RootSystem};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// Tables are included in reports up to this carrier size.
pub const TABLE_REPORT_LIMIT: usize = 12;

/// A group of type Φ over B, viewed through a ring homomorphism f: R → B.
#[derive(Clone, Debug)]
pub struct ReconstructionHarness {
    pub rep: Arc<Representation>,
    pub hom: RingHom,
}

impl ReconstructionHarness {
    /// Builds the harness from ring labels and generator images.
    pub fn new(phi: &str, source: &str, target: &str, images: &[String]) -> Result<ReconstructionHarness, WordError> {
        let rep = Representation::parse(phi)?;
        let bad = |e: crate::finring::RingError| WordError::NotAHomomorphism(e.to_string());
        let s = parse_ring(source).map_err(bad)?;
        let t = parse_ring(target).map_err(bad)?;
        let hom = if images.is_empty() {
            RingHom::canonical(&s, &t).map_err(bad)?
        } else {
            let imgs = images
                .iter()
                .map(|x| parse_elem(&t, x))
                .collect::<Result<Vec<_>, _>>()
                .map_err(bad)?;
            RingHom::from_generator_images(&s, &t, &imgs).map_err(bad)?
        };
        Ok(ReconstructionHarness { rep, hom })
    }

    pub fn identity(rep: Arc<Representation>, ring: &Ring) -> ReconstructionHarness {
        ReconstructionHarness {
            rep,
            hom: RingHom::identity(ring),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CarrierTables {
    /// Carrier elements by their e_α-coordinate in B.
    pub elements: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub phi: String,
    pub source: String,
    pub target: String,
    pub carrier_root: String,
    pub mult_word: String,
    pub signs: SignTable,
    pub carrier_size: usize,
    pub image_size: usize,
    pub f_injective: bool,
    pub closed_under_add: bool,
    pub closed_under_mul: bool,
    pub ring_axioms: bool,
    pub unit_is_f_one: bool,
    pub homomorphism: bool,
    pub onto_carrier: bool,
    pub isomorphic_to_image: bool,
    pub tables: Option<CarrierTables>,
}

impl ReconstructionReport {
    /// Injectivity of f is reported, not required.
    pub fn pass(&self) -> bool {
        self.closed_under_add
            && self.closed_under_mul
            && self.ring_axioms
            && self.unit_is_f_one
            && self.homomorphism
            && self.onto_carrier
            && self.isomorphic_to_image
    }
}

fn check_nice(phi: &RootSystem, ring: &Ring) -> Result<(), WordError> {
    let n = is_nice_pair(phi, ring);
    if n.nice {
        Ok(())
    } else {
        Err(WordError::NicePairViolation(n.reason))
    }
}

/// The e_α-coordinate of an element of U⁺, α positive.
fn coordinate(g: &ChevGroup, x: &GroupElement, a: Root) -> Option<Elem> {
    let BigCell::InCell { uminus, torus, uplus } = bigcell_factor(g, x) else {
        return None;
    };
    let r = g.ring();
    let clean = torus.iter().all(|&t| t == r.one())
        && uminus.iter().all(|&t| t == Elem::ZERO)
        && uplus.iter().enumerate().all(|(i, &t)| i == a.0 || t == Elem::ZERO);
    clean.then(|| uplus[a.0])
}

fn root_pair(g: &ChevGroup, a: Root, t: Elem) -> (GroupElement, GroupElement) {
    (g.e(a, t), g.e(a, g.ring().neg(t)))
}

/// Recovers (f(R), +, ·) from the images F(e_α(r)) using only group
/// operations, and checks it against the target ring.
pub fn reconstruct_ring(h: &ReconstructionHarness) -> Result<ReconstructionReport, WordError> {
    let (src, tgt) = (h.hom.source(), h.hom.target());
    let phi = h.rep.root_system();
    check_nice(phi, tgt)?;
    h.hom.verify().map_err(|e| WordError::NotAHomomorphism(e.to_string()))?;
    let g = ChevGroup::new(h.rep.clone(), tgt.clone());
    let a = carrier_root(phi)?;
    let (m, signs) = mult_word(&h.rep)?;

    // Materialize the carrier.
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut carrier: Vec<(GroupElement, GroupElement)> = Vec::new();
    let mut phi_of: Vec<usize> = Vec::with_capacity(src.card() as usize);
    for r in src.elements() {
        let p = root_pair(&g, a, h.hom.apply(r));
        let k = g.key(&p.0);
        let i = *index.entry(k).or_insert_with(|| {
            carrier.push(p);
            carrier.len() - 1
        });
        phi_of.push(i);
    }
    let n = carrier.len();
    let lookup = |x: &GroupElement| index.get(&g.key(x)).copied();

    let mut add = vec![vec![usize::MAX; n]; n];
    let mut mul = vec![vec![usize::MAX; n]; n];
    let (mut closed_add, mut closed_mul) = (true, true);
    for i in 0..n {
        for j in 0..n {
            match lookup(&g.mul(&carrier[i].0, &carrier[j].0)) {
                Some(k) => add[i][j] = k,
                None => closed_add = false,
            }
            match lookup(&m.apply(&g, &[carrier[i].clone(), carrier[j].clone()])?) {
                Some(k) => mul[i][j] = k,
                None => closed_mul = false,
            }
        }
    }

    let zero = lookup(&g.identity());
    let one = phi_of[src.one().index()];
    let mut axioms = closed_add && closed_mul && zero.is_some();
    if axioms {
        let z = zero.unwrap();
        for x in 0..n {
            axioms &= add[z][x] == x && mul[one][x] == x && (0..n).any(|y| add[x][y] == z);
            for y in 0..n {
                axioms &= add[x][y] == add[y][x] && mul[x][y] == mul[y][x];
                for w in 0..n {
                    axioms &= add[add[x][y]][w] == add[x][add[y][w]];
                    axioms &= mul[mul[x][y]][w] == mul[x][mul[y][w]];
                    axioms &= mul[x][add[y][w]] == add[mul[x][y]][mul[x][w]];
                }
            }
        }
    }

    let mut homomorphism = closed_add && closed_mul;
    if homomorphism {
        for r in src.elements() {
            for s in src.elements() {
                let (i, j) = (phi_of[r.index()], phi_of[s.index()]);
                homomorphism &= phi_of[src.add(r, s).index()] == add[i][j];
                homomorphism &= phi_of[src.mul(r, s).index()] == mul[i][j];
            }
        }
    }
    let mut hit = vec![false; n];
    for &i in &phi_of {
        hit[i] = true;
    }
    let onto_carrier = hit.iter().all(|&b| b);

    // Coordinates identify the carrier with f(R) ⊆ B.
    let coords: Vec<Option<Elem>> = carrier.iter().map(|x| coordinate(&g, &x.0, a)).collect();
    let image = h.hom.image();
    let mut iso = coords.iter().all(Option::is_some) && closed_add && closed_mul;
    if iso {
        let c: Vec<Elem> = coords.iter().map(|x| x.unwrap()).collect();
        let mut sorted = c.clone();
        sorted.sort();
        sorted.dedup();
        iso &= sorted.len() == n && sorted == image;
        for i in 0..n {
            for j in 0..n {
                iso &= c[add[i][j]] == tgt.add(c[i], c[j]) && c[mul[i][j]] == tgt.mul(c[i], c[j]);
            }
        }
    }

    let tables = (n <= TABLE_REPORT_LIMIT && closed_add && closed_mul && iso).then(|| {
        let name = |i: usize| tgt.format(coords[i].unwrap());
        let table = |t: &Vec<Vec<usize>>| t.iter().map(|row| row.iter().map(|&k| name(k)).collect()).collect();
        CarrierTables {
            elements: (0..n).map(name).collect(),
            add: table(&add),
            mul: table(&mul),
        }
    });

    Ok(ReconstructionReport {
        phi: phi.to_string(),
        source: src.label().to_string(),
        target: tgt.label().to_string(),
        carrier_root: phi.label(a),
        mult_word: m.expr.display(phi).to_string(),
        signs,
        carrier_size: n,
        image_size: image.len(),
        f_injective: h.hom.is_injective(),
        closed_under_add: closed_add,
        closed_under_mul: closed_mul,
        ring_axioms: axioms,
        unit_is_f_one: closed_mul && zero.is_some() && (0..n).all(|x| mul[one][x] == x),
        homomorphism,
        onto_carrier,
        isomorphic_to_image: iso,
        tables,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TransportEntry {
    pub from: String,
    pub to: String,
    pub word: Vec<String>,
    pub sign: i64,
    pub sign_constant_in_t: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TransportMapReport {
    pub phi: String,
    pub ring: String,
    pub transports: Vec<TransportEntry>,
    /// Pairs (x, map) checked for the cross-length maps π/ν or κ/θ.
    pub cross_checked: u64,
    pub cross_failures: u64,
    /// Products on the second carrier obtained by transport, checked against the ring.
    pub transported_product_checked: u64,
    pub transported_product_failures: u64,
    pub signs: Vec<(String, SignTable)>,
}

impl TransportMapReport {
    pub fn pass(&self) -> bool {
        self.transports.iter().all(|t| t.sign_constant_in_t) && self.cross_failures == 0 && self.transported_product_failures == 0
    }
}

/// Checks Weyl transports from one root of each length to every root of
/// that length, and the cross-length maps for B2 and G2, exhaustively.
pub fn transport_check(rep: &Arc<Representation>, ring: &Ring) -> Result<TransportMapReport, WordError> {
    let phi = rep.root_system();
    check_nice(phi, ring)?;
    let g = ChevGroup::new(rep.clone(), ring.clone());
    let probe = ChevGroup::new(rep.clone(), parse_ring("Z/101").expect("probe ring"));
    let r = ring;
    let mut transports = Vec::new();
    let mut sources: Vec<Root> = Vec::new();
    for a in phi.positive_roots() {
        if !sources.iter().any(|&b| phi.norm(b) == phi.norm(a)) {
            sources.push(a);
        }
    }
    for &from in &sources {
        for to in phi.roots().filter(|&b| phi.norm(b) == phi.norm(from)) {
            let t = transport_word(&probe, from, to)?;
            let sign = r.from_int(t.sign);
            let mut ok = true;
            for s in r.elements() {
                ok &= t.map.apply(&g, &[root_pair(&g, from, s)])? == g.e(to, r.mul(sign, s));
            }
            transports.push(TransportEntry {
                from: phi.label(from),
                to: phi.label(to),
                word: t.reflections.iter().map(|&x| phi.label(x)).collect(),
                sign: t.sign,
                sign_constant_in_t: ok,
            });
        }
    }

    let mut report = TransportMapReport {
        phi: phi.to_string(),
        ring: ring.label().to_string(),
        transports,
        cross_checked: 0,
        cross_failures: 0,
        transported_product_checked: 0,
        transported_product_failures: 0,
        signs: Vec::new(),
    };
    let cross = match phi.cartan_type() {
        crate::rootsys::CartanType::B(2) => {
            let (pi, s1) = b2_pi(rep)?;
            let (nu, s2) = b2_nu(rep)?;
            let (m, s3) = b2_mult_word(rep)?;
            report.signs.extend([("pi".into(), s1), ("nu".into(), s2), ("mult".into(), s3)]);
            // π(𝔪(ν u, ν v)) on A_{ε1+ε2}.
            let lifted = WordMap {
                arity: 2,
                expr: compose_product(&pi, &m, &nu),
            };
            Some((phi.find_label("e1").unwrap(), phi.find_label("e1+e2").unwrap(), pi, nu, lifted))
        }
        crate::rootsys::CartanType::G2 => {
            let (kappa, s1) = g2_kappa(rep)?;
            let (theta, s2) = g2_theta(rep)?;
            let (short, s3) = g2_short_mult_word(rep)?;
            report.signs.extend([("kappa".into(), s1), ("theta".into(), s2), ("mult".into(), s3)]);
            Some((phi.find_label("k").unwrap(), phi.find_label("2c+k").unwrap(), kappa, theta, short))
        }
        _ => None,
    };
    if let Some((a, b, fwd, back, prod)) = cross {
        for s in r.elements() {
            report.cross_checked += 2;
            let x = fwd.apply(&g, &[root_pair(&g, a, s)])?;
            if x != g.e(b, s) || back.apply(&g, &[(x, g.e(b, r.neg(s)))])? != g.e(a, s) {
                report.cross_failures += 1;
            }
            let y = back.apply(&g, &[root_pair(&g, b, s)])?;
            if y != g.e(a, s) || fwd.apply(&g, &[(y, g.e(a, r.neg(s)))])? != g.e(b, s) {
                report.cross_failures += 1;
            }
            for t in r.elements() {
                report.transported_product_checked += 1;
                let z = prod.apply(&g, &[root_pair(&g, b, s), root_pair(&g, b, t)])?;
                if z != g.e(b, r.mul(s, t)) {
                    report.transported_product_failures += 1;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harness(phi: &str, s: &str, t: &str) -> ReconstructionHarness {
        ReconstructionHarness::new(phi, s, t, &[]).unwrap()
    }

    #[test]
    fn reduction_z10_to_z5() {
        let rep = reconstruct_ring(&harness("A2", "Z/10", "Z/5")).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.carrier_size, 5);
        assert!(!rep.f_injective);
        let tables = rep.tables.unwrap();
        assert_eq!(tables.elements.len(), 5);
    }

    #[test]
    fn reduction_z6_to_z3() {
        let rep = reconstruct_ring(&harness("A2", "Z/6", "Z/3")).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.carrier_size, 3);
        assert_eq!(rep.image_size, 3);
    }

    #[test]
    fn identity_harnesses() {
        for (phi, ring) in [("A2", "Z/4"), ("A3", "Z/3"), ("B2", "Z/5"), ("G2", "Z/7"), ("A2", "F3[x]/(x^2)")] {
            let r = parse_ring(ring).unwrap();
            let h = ReconstructionHarness::identity(Representation::parse(phi).unwrap(), &r);
            let rep = reconstruct_ring(&h).unwrap();
            assert!(rep.pass(), "{phi} {ring}: {rep:?}");
            assert!(rep.f_injective);
            assert_eq!(rep.carrier_size as u64, r.card());
        }
    }

    #[test]
    fn non_nice_pair_is_refused() {
        let h = harness("B2", "Z/4", "Z/4");
        assert!(matches!(reconstruct_ring(&h), Err(WordError::NicePairViolation(_))));
    }

    #[test]
    fn bad_homomorphism_is_refused() {
        let r = ReconstructionHarness::new("A2", "Z/5", "Z/10", &[]);
        assert!(matches!(r, Err(WordError::NotAHomomorphism(_))));
    }

    #[test]
    fn transports_are_sign_consistent() {
        for (phi, ring) in [("A2", "Z/5"), ("B2", "Z/5"), ("G2", "Z/7")] {
            let rep = transport_check(&Representation::parse(phi).unwrap(), &parse_ring(ring).unwrap()).unwrap();
            assert!(rep.pass(), "{rep:?}");
        }
    }
}
