use super::{ChevGroup, GroupElement};
use crate::finring::{is_nice_pair, Elem};
use crate::rootsys::Root;
use serde::Serialize;

const MAX_REPORTED: usize = 8;

/// A relation instance that failed, with both sides verbatim.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: String,
    pub alpha: String,
    pub beta: String,
    pub s: String,
    pub t: String,
    pub lhs: Vec<Vec<String>>,
    pub rhs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SteinbergReport {
    pub phi: String,
    pub ring: String,
    pub nice: bool,
    pub r1_checked: u64,
    pub r2_checked: u64,
    pub failure_count: u64,
    pub failures: Vec<RelationFailure>,
}

impl SteinbergReport {
    pub fn pass(&self) -> bool {
        self.failure_count == 0
    }
}

/// e_α(t) for every root and every ring element.
pub(crate) fn root_element_cache(g: &ChevGroup) -> Vec<Vec<GroupElement>> {
    g.root_system()
        .roots()
        .map(|a| g.ring().elements().map(|t| g.e(a, t)).collect())
        .collect()
}

/// Exhaustive check of additivity and the commutator formula for every
/// root, every non-opposite pair of roots, and every pair of ring elements.
pub fn verify_steinberg_relations(g: &ChevGroup) -> SteinbergReport {
    let phi = g.root_system();
    let r = g.ring();
    let consts = g.rep().constants();
    let cache = root_element_cache(g);
    let e = |a: Root, t: Elem| &cache[a.0][t.index()];
    let mut report = SteinbergReport {
        phi: phi.to_string(),
        ring: r.label().to_string(),
        nice: is_nice_pair(phi, r).nice,
        r1_checked: 0,
        r2_checked: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    let fail = |report: &mut SteinbergReport, rel: &str, a: Root, b: Option<Root>, s: Elem, t: Elem, lhs: &GroupElement, rhs: &GroupElement| {
        report.failure_count += 1;
        if report.failures.len() < MAX_REPORTED {
            report.failures.push(RelationFailure {
                relation: rel.to_string(),
                alpha: phi.label(a),
                beta: b.map(|b| phi.label(b)).unwrap_or_default(),
                s: r.format(s),
                t: r.format(t),
                lhs: g.format(lhs),
                rhs: g.format(rhs),
            });
        }
    };
    for a in phi.roots() {
        for s in r.elements() {
            for t in r.elements() {
                let lhs = g.mul(e(a, s), e(a, t));
                let rhs = e(a, r.add(s, t));
                report.r1_checked += 1;
                if &lhs != rhs {
                    fail(&mut report, "R1", a, None, s, t, &lhs, rhs);
                }
            }
        }
    }
    for a in phi.roots() {
        for b in phi.roots() {
            let Some(terms) = consts.commutator(a, b) else {
                continue;
            };
            for s in r.elements() {
                for t in r.elements() {
                    let lhs = g.mul(&g.mul(e(a, s), e(b, t)), &g.mul(e(a, r.neg(s)), e(b, r.neg(t))));
                    let rhs = g.product(terms.iter().map(|term| {
                        let c = r.mul(
                            r.from_int(term.coeff),
                            r.mul(r.pow(s, term.i as u64), r.pow(t, term.j as u64)),
                        );
                        e(term.root, c)
                    }));
                    report.r2_checked += 1;
                    if lhs != rhs {
                        fail(&mut report, "R2", a, Some(b), s, t, &lhs, &rhs);
                    }
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HMultReport {
    pub checked: u64,
    pub failures: Vec<(String, String, String)>,
}

impl HMultReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// h_α(u) h_α(v) = h_α(uv) for every root and every pair of units, with
/// h_α computed from the w-word.
pub fn h_multiplicativity_check(g: &ChevGroup) -> HMultReport {
    let phi = g.root_system();
    let r = g.ring();
    let units = g.unit_list();
    let mut report = HMultReport {
        checked: 0,
        failures: Vec::new(),
    };
    for a in phi.roots() {
        let mut hs = vec![None; r.card() as usize];
        for &u in &units {
            hs[u.index()] = Some(g.h(a, u).expect("unit"));
        }
        let h = |u: Elem| hs[u.index()].as_ref().unwrap();
        for &u in &units {
            for &v in &units {
                report.checked += 1;
                if &g.mul(h(u), h(v)) != h(r.mul(u, v)) && report.failures.len() < MAX_REPORTED {
                    report.failures.push((phi.label(a), r.format(u), r.format(v)));
                }
            }
        }
    }
    report
}

/// Sign of one Weyl transport w e_α(t) w⁻¹ = e_{wα}(εt).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TransportSign {
    pub word: Vec<String>,
    pub alpha: String,
    pub image: String,
    pub sign: i8,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TransportReport {
    pub words: u64,
    pub checked: u64,
    pub signs: Vec<TransportSign>,
    pub failures: Vec<String>,
}

impl TransportReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For all Weyl words of length one and two in w_β(1), checks that
/// conjugation carries e_α(t) to e_{wα}(εt) with ε independent of t.
pub fn transport_sign_check(g: &ChevGroup) -> TransportReport {
    let phi = g.root_system();
    let r = g.ring();
    let one = r.one();
    let m1 = r.neg(one);
    let cache = root_element_cache(g);
    let w: Vec<(GroupElement, GroupElement)> = phi
        .roots()
        .map(|b| (g.w(b, one).unwrap(), g.w(b, m1).unwrap()))
        .collect();
    let mut words: Vec<Vec<Root>> = phi.roots().map(|b| vec![b]).collect();
    for b in phi.roots() {
        for c in phi.roots() {
            words.push(vec![b, c]);
        }
    }
    let mut report = TransportReport {
        words: words.len() as u64,
        checked: 0,
        signs: Vec::new(),
        failures: Vec::new(),
    };
    for word in &words {
        let x = g.product(word.iter().map(|b| &w[b.0].0));
        let xi = g.product(word.iter().rev().map(|b| &w[b.0].1));
        let labels: Vec<String> = word.iter().map(|&b| phi.label(b)).collect();
        for a in phi.roots() {
            let image = word.iter().rev().fold(a, |acc, &b| phi.weyl_reflect(b, acc));
            let conj = |t: Elem| g.mul(&g.mul(&x, &cache[a.0][t.index()]), &xi);
            let c1 = conj(one);
            let sign = if c1 == cache[image.0][one.index()] {
                1
            } else if c1 == cache[image.0][m1.index()] {
                -1
            } else {
                report
                    .failures
                    .push(format!("{labels:?} {}: not a root element", phi.label(a)));
                continue;
            };
            for t in r.elements() {
                report.checked += 1;
                let st = if sign == 1 { t } else { r.neg(t) };
                if conj(t) != cache[image.0][st.index()] {
                    report.failures.push(format!(
                        "{labels:?} {}: sign changes at t = {}",
                        phi.label(a),
                        r.format(t)
                    ));
                    break;
                }
            }
            report.signs.push(TransportSign {
                word: labels.clone(),
                alpha: phi.label(a),
                image: phi.label(image),
                sign,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::parse_ring;

    fn group(phi: &str, ring: &str) -> ChevGroup {
        ChevGroup::parse(phi, &parse_ring(ring).unwrap()).unwrap()
    }

    #[test]
    fn steinberg_relations_small() {
        for (phi, ring) in [("A2", "Z/3"), ("A3", "Z/2"), ("B2", "Z/3"), ("B2", "Z/4")] {
            let rep = verify_steinberg_relations(&group(phi, ring));
            assert!(rep.pass(), "{phi} over {ring}: {:?}", rep.failures.first());
            assert!(rep.r2_checked > 0);
        }
    }

    #[test]
    fn a2_commutator_is_e13_of_product() {
        let g = group("A2", "Z/5");
        let phi = g.root_system();
        let (a, b, c) = (
            phi.find_label("12").unwrap(),
            phi.find_label("23").unwrap(),
            phi.find_label("13").unwrap(),
        );
        let r = g.ring();
        for s in r.elements() {
            for t in r.elements() {
                let lhs = g.mul(&g.mul(&g.e(a, s), &g.e(b, t)), &g.mul(&g.e(a, r.neg(s)), &g.e(b, r.neg(t))));
                assert_eq!(lhs, g.e(c, r.mul(s, t)));
            }
        }
    }

    #[test]
    fn b2_long_short_commutator_shape() {
        // [e_{e1+e2}(t), e_{-e2}(s)] = e_{e1-e2}(±ts²) e_{e1}(±ts), two commuting factors
        let g = group("B2", "Z/5");
        let phi = g.root_system();
        let a = phi.find_label("e1+e2").unwrap();
        let b = phi.find_label("-e2").unwrap();
        let terms = g.rep().constants().commutator(a, b).unwrap();
        let shape: Vec<_> = terms.iter().map(|t| (t.i, t.j, phi.label(t.root), t.coeff.abs())).collect();
        assert_eq!(shape, vec![(1, 2, "e1-e2".to_string(), 1), (1, 1, "e1".to_string(), 1)]);
    }

    #[test]
    fn h_multiplicative() {
        for (phi, ring) in [("A2", "Z/5"), ("B2", "Z/5"), ("A2", "Z/9")] {
            assert!(h_multiplicativity_check(&group(phi, ring)).pass());
        }
    }

    #[test]
    fn transport_signs_constant() {
        let rep = transport_sign_check(&group("B2", "Z/5"));
        assert!(rep.pass(), "{:?}", rep.failures);
        assert_eq!(rep.signs.len() as u64, rep.words * 8);
        assert!(rep.signs.iter().any(|s| s.sign == -1));
    }
}
