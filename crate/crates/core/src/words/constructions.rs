use super::{root_coordinates, single_coordinate, transport_word, Rational, WordError, WordExpr, WordMap};
use crate::chevmatrix::{ChevGroup, Representation};
use crate::finring::parse_ring;
use crate::rootsys::{CartanType, Root, RootSystem};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use WordExpr::{Input, E, H, W};

/// Constants read off the probe group while building a word.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SignTable {
    pub entries: Vec<(String, i64)>,
}

impl SignTable {
    fn push(&mut self, name: &str, v: i64) {
        self.entries.push((name.to_string(), v));
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.entries.iter().find(|e| e.0 == name).map(|e| e.1)
    }
}

const PROBE_RING: &str = "Z/101";

type Built = (WordMap, SignTable);

fn cache() -> &'static Mutex<HashMap<(String, &'static str), Built>> {
    static CACHE: OnceLock<Mutex<HashMap<(String, &'static str), Built>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(
    rep: &Arc<Representation>,
    key: &'static str,
    build: impl FnOnce(&ChevGroup) -> Result<Built, WordError>,
) -> Result<Built, WordError> {
    let k = (rep.name().to_string(), key);
    if let Some(b) = cache().lock().unwrap().get(&k) {
        return Ok(b.clone());
    }
    let probe = ChevGroup::new(rep.clone(), parse_ring(PROBE_RING).expect("probe ring"));
    let built = build(&probe)?;
    cache().lock().unwrap().insert(k, built.clone());
    Ok(built)
}

fn root(phi: &RootSystem, label: &str) -> Root {
    phi.find_label(label).unwrap_or_else(|_| panic!("{phi} has no root {label}"))
}

fn require(phi: &RootSystem, ok: bool, what: &str) -> Result<(), WordError> {
    if ok {
        Ok(())
    } else {
        Err(WordError::Unsupported(format!("{what} is not defined for {phi}")))
    }
}

/// Replaces placeholders by the given expressions.
fn substitute(e: &WordExpr, args: &[WordExpr]) -> WordExpr {
    match e {
        Input(i) => args[*i].clone(),
        E(..) | W(..) | H(..) => e.clone(),
        WordExpr::Mul(v) => WordExpr::Mul(v.iter().map(|x| substitute(x, args)).collect()),
        WordExpr::Inv(x) => WordExpr::inv(substitute(x, args)),
        WordExpr::Comm(x, y) => WordExpr::comm(substitute(x, args), substitute(y, args)),
        WordExpr::Conj(g, x) => WordExpr::conj(substitute(g, args), substitute(x, args)),
    }
}

/// Evaluates a map on root elements e_{a_i}(c_i) in the probe group and
/// returns the coefficient of the single root element it produces.
fn probe_coeff(probe: &ChevGroup, map: &WordMap, inputs: &[(Root, i64)], target: Root) -> Result<i64, WordError> {
    let r = probe.ring();
    let args: Vec<_> = inputs
        .iter()
        .map(|&(a, c)| (probe.e(a, r.from_int(c)), probe.e(a, r.from_int(-c))))
        .collect();
    let x = map.apply(probe, &args)?;
    single_coordinate(probe, &x, target).ok_or_else(|| {
        WordError::Unsupported(format!(
            "probe value is not a root element of {}",
            probe.root_system().label(target)
        ))
    })
}

fn unary(expr: WordExpr) -> WordMap {
    WordMap { arity: 1, expr }
}

fn binary(expr: WordExpr) -> WordMap {
    WordMap { arity: 2, expr }
}

/// Makes a binary product exact: if it yields e(−ts), inverts it.
fn normalize_product(probe: &ChevGroup, m: WordMap, carrier: Root, signs: &mut SignTable) -> Result<WordMap, WordError> {
    let c = probe_coeff(probe, &m, &[(carrier, 1), (carrier, 1)], carrier)?;
    signs.push("product_sign", c);
    let m = match c {
        1 => m,
        -1 => binary(WordExpr::inv(m.expr)),
        _ => return Err(WordError::Unsupported(format!("product coefficient {c}"))),
    };
    debug_assert_eq!(probe_coeff(probe, &m, &[(carrier, 3), (carrier, 5)], carrier)?, 15);
    Ok(m)
}

/// The product on A_{13}: [w23 a1 w23⁻¹, w12⁻¹ a2 w12].
pub fn a2_mult_word(rep: &Arc<Representation>) -> Result<Built, WordError> {
    let phi = rep.root_system();
    require(phi, matches!(phi.cartan_type(), CartanType::A(n) if n >= 2), "the A2 product")?;
    cached(rep, "a2_mult", |probe| {
        let phi = probe.root_system();
        let (a12, a23, a13) = (root(phi, "12"), root(phi, "23"), root(phi, "13"));
        let m = binary(WordExpr::comm(
            WordExpr::conj(W(a23, Rational::ONE), Input(0)),
            WordExpr::conj(WordExpr::inv(W(a12, Rational::ONE)), Input(1)),
        ));
        let mut signs = SignTable::default();
        let m = normalize_product(probe, m, a13, &mut signs)?;
        Ok((m, signs))
    })
}

fn require_b2(phi: &RootSystem) -> Result<(), WordError> {
    require(phi, phi.cartan_type() == CartanType::B(2), "this B2 word")
}

/// π: A_{ε1} → A_{ε1+ε2}, x ↦ [x, e_{ε2}(1/N)].
pub fn b2_pi(rep: &Arc<Representation>) -> Result<Built, WordError> {
    require_b2(rep.root_system())?;
    cached(rep, "b2_pi", |probe| {
        let phi = probe.root_system();
        let (e1, e2, b) = (root(phi, "e1"), root(phi, "e2"), root(phi, "e1+e2"));
        let raw = unary(WordExpr::comm(Input(0), E(e2, Rational::ONE)));
        let n = probe_coeff(probe, &raw, &[(e1, 1)], b)?;
        let mut signs = SignTable::default();
        signs.push("N(e1,e2)", n);
        let m = unary(WordExpr::comm(Input(0), E(e2, Rational::recip(n))));
        Ok((m, signs))
    })
}

/// ν: A_{ε1+ε2} → A_{ε1}, the e_{ε1} part of [y, e_{−ε2}(1)][y, e_{−ε2}(−1)]⁻¹,
/// rescaled by a torus element of the long root.
pub fn b2_nu(rep: &Arc<Representation>) -> Result<Built, WordError> {
    require_b2(rep.root_system())?;
    cached(rep, "b2_nu", |probe| {
        let phi = probe.root_system();
        let (e1, me2, b) = (root(phi, "e1"), root(phi, "-e2"), root(phi, "e1+e2"));
        let core = WordExpr::Mul(vec![
            WordExpr::comm(Input(0), E(me2, Rational::ONE)),
            WordExpr::inv(WordExpr::comm(Input(0), E(me2, Rational::int(-1)))),
        ]);
        let lambda = probe_coeff(probe, &unary(core.clone()), &[(b, 1)], e1)?;
        let mut signs = SignTable::default();
        signs.push("lambda", lambda);
        let m = unary(WordExpr::conj(H(b, Rational::recip(lambda)), core));
        Ok((m, signs))
    })
}

/// The product on A_{ε1}: ν([u, v'']) with v'' a rescaled transport of v to A_{ε2}.
pub fn b2_mult_word(rep: &Arc<Representation>) -> Result<Built, WordError> {
    require_b2(rep.root_system())?;
    let (nu, nu_signs) = b2_nu(rep)?;
    cached(rep, "b2_mult", |probe| {
        let phi = probe.root_system();
        let (e1, b, s) = (root(phi, "e1"), root(phi, "e1+e2"), root(phi, "-e1+e2"));
        let raw = binary(WordExpr::comm(Input(0), WordExpr::conj(W(s, Rational::ONE), Input(1))));
        let k = probe_coeff(probe, &raw, &[(e1, 1), (e1, 1)], b)?;
        let mut signs = nu_signs;
        signs.push("kappa_m", k);
        let v2 = WordExpr::conj(W(s, Rational::ONE), WordExpr::conj(H(b, Rational::recip(k)), Input(1)));
        let m = binary(substitute(&nu.expr, &[WordExpr::comm(Input(0), v2)]));
        let m = normalize_product(probe, m, e1, &mut signs)?;
        Ok((m, signs))
    })
}

fn require_g2(phi: &RootSystem) -> Result<(), WordError> {
    require(phi, phi.is_g2(), "this G2 word")
}

/// κ: A_k → A_{2c+k}.
pub fn g2_kappa(rep: &Arc<Representation>) -> Result<Built, WordError> {
    require_g2(rep.root_system())?;
    cached(rep, "g2_kappa", |probe| {
        let phi = probe.root_system();
        let (c, k) = (root(phi, "c"), root(phi, "k"));
        let (a3c1, a3c2, a2c1) = (root(phi, "3c+k"), root(phi, "3c+2k"), root(phi, "2c+k"));
        let mut signs = SignTable::default();
        let w1 = unary(WordExpr::conj(W(c, Rational::ONE), Input(0)));
        let eps = probe_coeff(probe, &w1, &[(k, 1)], a3c1)?;
        signs.push("eps", eps);
        let comm = binary(WordExpr::comm(Input(0), Input(1)));
        let eps6 = probe_coeff(probe, &comm, &[(a3c1, 1), (k, 1)], a3c2)?;
        signs.push("eps6", eps6);
        let tail = WordExpr::Mul(vec![
            WordExpr::comm(Input(0), E(c, Rational::ONE)),
            WordExpr::comm(Input(0), E(c, Rational::int(-1))),
        ]);
        let r = probe.ring();
        let x = unary(tail.clone()).apply_root(probe, k, &[r.one()])?;
        let coords = root_coordinates(probe, &x).ok_or_else(|| WordError::Unsupported("κ tail".into()))?;
        let coeff = |a: Root| coords.iter().find(|t| t.0 == a).map_or(0, |t| t.1);
        let (a, bcoef) = (coeff(a3c2), coeff(a2c1));
        if coords.iter().any(|t| t.0 != a3c2 && t.0 != a2c1) || bcoef.abs() != 2 {
            return Err(WordError::Unsupported(format!("unexpected κ tail {coords:?}")));
        }
        signs.push("A", a);
        signs.push("B", bcoef);
        // [e_{3c+k}(εs), e_k(rs)] = e_{3c+2k}(ε ε6 r s²) cancels e_{3c+2k}(A s²).
        let scale = -a * eps * eps6;
        signs.push("r", scale);
        let head = WordExpr::comm(
            WordExpr::conj(W(c, Rational::ONE), Input(0)),
            WordExpr::conj(H(a3c2, Rational::int(scale)), Input(0)),
        );
        let kappa = WordExpr::conj(H(c, Rational::recip(bcoef)), WordExpr::Mul(vec![head, tail]));
        let m = unary(kappa);
        let got = probe_coeff(probe, &m, &[(k, 7)], a2c1)?;
        if got != 7 {
            return Err(WordError::Unsupported(format!("κ(e_k(7)) has coefficient {got}")));
        }
        Ok((m, signs))
    })
}

/// θ: A_{2c+k} → A_k.
pub fn g2_theta(rep: &Arc<Representation>) -> Result<Built, WordError> {
    require_g2(rep.root_system())?;
    cached(rep, "g2_theta", |probe| {
        let phi = probe.root_system();
        let (k, a3c1, a3c2, a2c1, ack) = (
            root(phi, "k"),
            root(phi, "3c+k"),
            root(phi, "3c+2k"),
            root(phi, "2c+k"),
            root(phi, "c+k"),
        );
        let mc = root(phi, "-c");
        let mut signs = SignTable::default();
        let w2 = unary(WordExpr::conj(W(a3c1, Rational::ONE), Input(0)));
        let eps_p = probe_coeff(probe, &w2, &[(a2c1, 1)], mc)?;
        signs.push("eps_prime", eps_p);
        let core = WordExpr::comm(WordExpr::conj(W(a3c1, Rational::ONE), Input(0)), E(ack, Rational::ONE));
        let d = probe_coeff(probe, &unary(core.clone()), &[(a2c1, 1)], k)?;
        signs.push("D", d);
        // ⟨k, (3c+2k)∨⟩ = 1, so h_{3c+2k}(u) scales e_k linearly.
        let m = unary(WordExpr::conj(H(a3c2, Rational::recip(d)), core));
        let got = probe_coeff(probe, &m, &[(a2c1, 5)], k)?;
        if got != 5 {
            return Err(WordError::Unsupported(format!("θ(e_(2c+k)(5)) has coefficient {got}")));
        }
        Ok((m, signs))
    })
}

/// The product on A_k through the long-root subsystem {±k, ±(3c+k), ±(3c+2k)}.
pub fn g2_mult_word(rep: &Arc<Representation>) -> Result<Built, WordError> {
    require_g2(rep.root_system())?;
    cached(rep, "g2_mult", |probe| {
        let phi = probe.root_system();
        let k = root(phi, "k");
        let (b, d) = (root(phi, "3c+2k"), root(phi, "-3c-k"));
        let tb = transport_word(probe, k, b)?;
        let td = transport_word(probe, k, d)?;
        let mut signs = SignTable::default();
        signs.push("transport_to_3c+2k", tb.sign);
        signs.push("transport_to_-3c-k", td.sign);
        let m = binary(WordExpr::comm(
            substitute(&tb.map.expr, &[Input(0)]),
            substitute(&td.map.expr, &[Input(1)]),
        ));
        let m = normalize_product(probe, m, k, &mut signs)?;
        Ok((m, signs))
    })
}

/// The product on A_{2c+k}: κ(𝔪(θ(u), θ(v))).
pub fn g2_short_mult_word(rep: &Arc<Representation>) -> Result<Built, WordError> {
    let (kappa, _) = g2_kappa(rep)?;
    let (theta, _) = g2_theta(rep)?;
    let (m, signs) = g2_mult_word(rep)?;
    Ok((binary(compose_product(&kappa, &m, &theta)), signs))
}

/// out(m(in(u), in(v))) for unary maps `out`, `inn` and a binary product `m`.
pub(crate) fn compose_product(out: &WordMap, m: &WordMap, inn: &WordMap) -> WordExpr {
    let i = |k| substitute(&inn.expr, &[Input(k)]);
    substitute(&out.expr, &[substitute(&m.expr, &[i(0), i(1)])])
}

/// The root whose subgroup carries the reconstructed ring.
pub fn carrier_root(phi: &RootSystem) -> Result<Root, WordError> {
    match phi.cartan_type() {
        CartanType::A(n) if n >= 2 => Ok(root(phi, "13")),
        CartanType::B(2) => Ok(root(phi, "e1")),
        CartanType::G2 => Ok(root(phi, "k")),
        _ => Err(WordError::Unsupported(format!("no product word for {phi}"))),
    }
}

/// The type-appropriate product word on the carrier.
pub fn mult_word(rep: &Arc<Representation>) -> Result<Built, WordError> {
    match rep.root_system().cartan_type() {
        CartanType::A(_) => a2_mult_word(rep),
        CartanType::B(2) => b2_mult_word(rep),
        CartanType::G2 => g2_mult_word(rep),
        _ => Err(WordError::Unsupported(format!("no product word for {}", rep.root_system()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::Elem;

    fn setup(phi: &str, ring: &str) -> (Arc<Representation>, ChevGroup) {
        let rep = Representation::parse(phi).unwrap();
        let g = ChevGroup::new(rep.clone(), parse_ring(ring).unwrap());
        (rep, g)
    }

    fn el(g: &ChevGroup, n: i64) -> Elem {
        g.ring().from_int(n)
    }

    #[test]
    fn a2_product_examples() {
        let (rep, g) = setup("A2", "Z/5");
        let (m, _) = a2_mult_word(&rep).unwrap();
        let a = root(g.root_system(), "13");
        assert_eq!(m.apply_root(&g, a, &[el(&g, 2), el(&g, 3)]).unwrap(), g.e(a, el(&g, 1)));
        for t in 0..5 {
            assert_eq!(m.apply_root(&g, a, &[el(&g, 1), el(&g, t)]).unwrap(), g.e(a, el(&g, t)));
            assert!(g.is_identity(&m.apply_root(&g, a, &[el(&g, 0), el(&g, t)]).unwrap()));
        }
    }

    #[test]
    fn b2_pi_nu_examples() {
        let (rep, g) = setup("B2", "Z/5");
        let phi = g.root_system();
        let (e1, b) = (root(phi, "e1"), root(phi, "e1+e2"));
        let (pi, _) = b2_pi(&rep).unwrap();
        let (nu, _) = b2_nu(&rep).unwrap();
        assert_eq!(pi.apply_root(&g, e1, &[el(&g, 3)]).unwrap(), g.e(b, el(&g, 3)));
        assert!(g.is_identity(&pi.apply_root(&g, e1, &[el(&g, 0)]).unwrap()));
        for t in 0..5 {
            let x = g.e(e1, el(&g, t));
            let p = pi.apply(&g, &[(x.clone(), g.e(e1, el(&g, -t)))]).unwrap();
            let back = nu.apply(&g, &[(p, g.e(b, el(&g, -t)))]).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn b2_product_table() {
        let (rep, g) = setup("B2", "Z/5");
        let e1 = root(g.root_system(), "e1");
        let (m, _) = b2_mult_word(&rep).unwrap();
        assert_eq!(m.apply_root(&g, e1, &[el(&g, 2), el(&g, 4)]).unwrap(), g.e(e1, el(&g, 3)));
        for s in 0..5 {
            for t in 0..5 {
                let got = m.apply_root(&g, e1, &[el(&g, s), el(&g, t)]).unwrap();
                assert_eq!(got, g.e(e1, el(&g, s * t)));
            }
        }
    }

    #[test]
    fn b2_needs_two_invertible() {
        let (rep, g) = setup("B2", "Z/4");
        let e1 = root(g.root_system(), "e1");
        let (m, _) = b2_mult_word(&rep).unwrap();
        let err = m.apply_root(&g, e1, &[el(&g, 1), el(&g, 1)]);
        assert!(matches!(err, Err(WordError::NicePairViolation(_))));
    }

    #[test]
    fn g2_kappa_theta_and_product() {
        let (rep, g) = setup("G2", "Z/7");
        let phi = g.root_system();
        let (k, s) = (root(phi, "k"), root(phi, "2c+k"));
        let (kappa, _) = g2_kappa(&rep).unwrap();
        let (theta, _) = g2_theta(&rep).unwrap();
        assert_eq!(kappa.apply_root(&g, k, &[el(&g, 4)]).unwrap(), g.e(s, el(&g, 4)));
        assert!(g.is_identity(&kappa.apply_root(&g, k, &[el(&g, 0)]).unwrap()));
        for t in 0..7 {
            let y = kappa.apply_root(&g, k, &[el(&g, t)]).unwrap();
            let x = theta.apply(&g, &[(y, g.e(s, el(&g, -t)))]).unwrap();
            assert_eq!(x, g.e(k, el(&g, t)));
        }
        let (m, _) = g2_mult_word(&rep).unwrap();
        assert_eq!(m.apply_root(&g, k, &[el(&g, 3), el(&g, 5)]).unwrap(), g.e(k, el(&g, 1)));
        let (ms, _) = g2_short_mult_word(&rep).unwrap();
        assert_eq!(ms.apply_root(&g, s, &[el(&g, 3), el(&g, 4)]).unwrap(), g.e(s, el(&g, 5)));
    }

    #[test]
    fn wrong_type_is_rejected() {
        let rep = Representation::parse("A2").unwrap();
        assert!(matches!(b2_pi(&rep), Err(WordError::Unsupported(_))));
        assert!(matches!(g2_kappa(&rep), Err(WordError::Unsupported(_))));
    }
}
