//! Text syntax for rings and their elements.
//!
//! ```text
//! ring    := factor ( "x" factor )*
//! factor  := atom ( "[" var "]" "/" "(" poly ")" )*
//! atom    := "Z/" int | "F" int | "(" ring ")"
//! ```
//!
//! `F<q>` is the prime field for prime `q` and, for a prime power, the
//! quotient of `Z/p[x]` by the first monic irreducible polynomial in
//! coefficient order.

use super::{Elem, Ring, RingError, RingSpec};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RingError> {
        Err(RingError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), RingError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<u64, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a ring description such as `Z/12`, `F9`, `Z/3[x]/(x^2)` or
/// `Z/4 x Z/3`.
pub fn parse_ring(s: &str) -> Result<Ring, RingError> {
    Ring::new(&parse_spec(s)?)
}

pub fn parse_spec(s: &str) -> Result<RingSpec, RingError> {
    let mut c = Cursor::new(s);
    let spec = product(&mut c)?;
    if !c.at_end() {
        return c.err("unexpected trailing input");
    }
    Ok(spec)
}

fn product(c: &mut Cursor) -> Result<RingSpec, RingError> {
    let mut parts = vec![factor(c)?];
    while c.eat(b'x') {
        parts.push(factor(c)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        RingSpec::Product(parts)
    })
}

fn factor(c: &mut Cursor) -> Result<RingSpec, RingError> {
    let mut spec = atom(c)?;
    while c.eat(b'[') {
        c.skip_ws();
        let var = match c.src.get(c.pos) {
            Some(v) if v.is_ascii_alphabetic() => *v,
            _ => return c.err("expected a variable name"),
        };
        c.pos += 1;
        c.expect(b']')?;
        c.expect(b'/')?;
        c.expect(b'(')?;
        let modulus = int_poly(c, var)?;
        c.expect(b')')?;
        spec = RingSpec::PolyQuotient {
            base: Box::new(spec),
            modulus,
        };
    }
    Ok(spec)
}

fn atom(c: &mut Cursor) -> Result<RingSpec, RingError> {
    match c.peek() {
        Some(b'Z') => {
            c.pos += 1;
            c.expect(b'/')?;
            let start = c.pos;
            let n = c.int()?;
            if n < 2 {
                c.pos = start;
                return c.err("Z/n needs n >= 2");
            }
            Ok(RingSpec::ZmodN(n))
        }
        Some(b'F') => {
            c.pos += 1;
            c.eat(b'_');
            let start = c.pos;
            let q = c.int()?;
            field_spec(q).or_else(|msg| {
                c.pos = start;
                c.err(msg)
            })
        }
        Some(b'(') => {
            c.pos += 1;
            let inner = product(c)?;
            c.expect(b')')?;
            Ok(inner)
        }
        _ => c.err("expected 'Z/', 'F' or '('"),
    }
}

/// Coefficients (constant term first) of an integer polynomial in `var`.
fn int_poly(c: &mut Cursor, var: u8) -> Result<Vec<i64>, RingError> {
    let mut coeffs: Vec<i64> = Vec::new();
    let mut first = true;
    loop {
        let sign = if c.eat(b'-') {
            -1
        } else if c.eat(b'+') || first {
            1
        } else {
            break;
        };
        first = false;
        let mut coef: i64 = 1;
        let mut has_coef = false;
        if matches!(c.peek(), Some(d) if d.is_ascii_digit()) {
            coef = c.int()? as i64;
            has_coef = true;
            c.eat(b'*');
        }
        let mut deg = 0usize;
        if c.peek() == Some(var) {
            c.pos += 1;
            deg = 1;
            if c.eat(b'^') {
                deg = c.int()? as usize;
            }
        } else if !has_coef {
            return c.err("expected a term");
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * coef;
    }
    Ok(coeffs)
}

fn field_spec(q: u64) -> Result<RingSpec, String> {
    let mut p = 0;
    for d in 2..=q {
        if q % d == 0 {
            p = d;
            break;
        }
    }
    if p == 0 {
        return Err("F<q> needs q >= 2".to_string());
    }
    let mut k = 0u32;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(format!("{q} is not a prime power"));
    }
    if k == 1 {
        return Ok(RingSpec::ZmodN(p));
    }
    if q > super::TABLE_LIMIT {
        return Err(format!("F{q} is larger than supported for prime powers"));
    }
    // Monic polynomials of degree k in increasing coefficient order.
    let total = p.pow(k);
    for idx in 0..total {
        let mut coeffs: Vec<i64> = (0..k)
            .scan(idx, |r, _| {
                let c = (*r % p) as i64;
                *r /= p;
                Some(c)
            })
            .collect();
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        let spec = RingSpec::PolyQuotient {
            base: Box::new(RingSpec::ZmodN(p)),
            modulus: coeffs,
        };
        let ring = Ring::new(&spec).map_err(|e| e.to_string())?;
        if ring.elements().skip(1).all(|a| ring.is_unit(a)) {
            return Ok(spec);
        }
    }
    Err(format!("no irreducible polynomial found for F{q}"))
}

/// Parses an element written in the ring's normal-form syntax: an integer
/// for `Z/n` (negative values allowed), a polynomial in `x` for quotients
/// (coefficients may be parenthesized base elements), and a tuple `(a,b)`
/// for products.
pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem, RingError> {
    let mut c = Cursor::new(s);
    let e = elem(ring, &mut c)?;
    if !c.at_end() {
        return c.err("unexpected trailing input");
    }
    Ok(e)
}

fn signed_int(c: &mut Cursor) -> Result<i64, RingError> {
    let neg = c.eat(b'-');
    let v = c.int()? as i64;
    Ok(if neg { -v } else { v })
}

fn elem(ring: &Ring, c: &mut Cursor) -> Result<Elem, RingError> {
    if let Some(factors) = ring.product_factors() {
        c.expect(b'(')?;
        let mut parts = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            if i > 0 {
                c.expect(b',')?;
            }
            parts.push(elem(f, c)?);
        }
        c.expect(b')')?;
        return Ok(ring.join(&parts));
    }
    if let Some(base) = ring.poly_base() {
        let base = base.clone();
        let mut coeffs: Vec<Elem> = Vec::new();
        let mut first = true;
        loop {
            let negate = if c.eat(b'-') {
                true
            } else if c.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let mut coef = base.one();
            let mut has_coef = false;
            match c.peek() {
                Some(d) if d.is_ascii_digit() => {
                    coef = base.from_int(c.int()? as i64);
                    has_coef = true;
                }
                Some(b'(') => {
                    c.pos += 1;
                    coef = elem(&base, c)?;
                    c.expect(b')')?;
                    has_coef = true;
                }
                _ => {}
            }
            c.eat(b'*');
            let mut deg = 0usize;
            if c.peek() == Some(b'x') {
                c.pos += 1;
                deg = 1;
                if c.eat(b'^') {
                    deg = c.int()? as usize;
                }
            } else if !has_coef {
                return c.err("expected a term");
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, Elem::ZERO);
            }
            let coef = if negate { base.neg(coef) } else { coef };
            coeffs[deg] = base.add(coeffs[deg], coef);
        }
        return Ok(ring.poly_from_coeffs(&coeffs).expect("polynomial ring"));
    }
    if ring.parent_element(Elem::ZERO).is_some() {
        // Table rings: match against the formatted names.
        c.skip_ws();
        let rest = std::str::from_utf8(&c.src[c.pos..]).unwrap().trim();
        if let Some(e) = ring.elements().find(|&e| ring.format(e) == rest) {
            c.pos = c.src.len();
            return Ok(e);
        }
        return c.err("unknown element");
    }
    let v = signed_int(c)?;
    Ok(ring.from_int(v))
}
