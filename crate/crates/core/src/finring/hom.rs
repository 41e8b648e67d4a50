use super::{Elem, Ring, RingError};

/// A unital ring homomorphism between finite rings, stored as a lookup table.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    table: Vec<Elem>,
}

impl RingHom {
    /// The homomorphism sending `source.ring_generators()` to `images`,
    /// extended by closure and then checked exhaustively.
    pub fn from_generator_images(
        source: &Ring,
        target: &Ring,
        images: &[Elem],
    ) -> Result<RingHom, RingError> {
        let gens = source.ring_generators();
        if gens.len() != images.len() {
            return Err(RingError::NotAHomomorphism(format!(
                "{} generator images given, {} expected",
                images.len(),
                gens.len()
            )));
        }
        let n = source.card() as usize;
        let mut table: Vec<Option<Elem>> = vec![None; n];
        let mut known: Vec<Elem> = Vec::new();
        let assign = |a: Elem, b: Elem, table: &mut Vec<Option<Elem>>, known: &mut Vec<Elem>| {
            match table[a.index()] {
                Some(old) if old != b => Err(RingError::NotAHomomorphism(format!(
                    "{} would map to both {} and {}",
                    source.format(a),
                    target.format(old),
                    target.format(b)
                ))),
                Some(_) => Ok(()),
                None => {
                    table[a.index()] = Some(b);
                    known.push(a);
                    Ok(())
                }
            }
        };
        assign(Elem::ZERO, Elem::ZERO, &mut table, &mut known)?;
        assign(source.one(), target.one(), &mut table, &mut known)?;
        for (&g, &img) in gens.iter().zip(images) {
            assign(g, img, &mut table, &mut known)?;
        }
        let mut done = 0;
        while done < known.len() {
            let a = known[done];
            let fa = table[a.index()].unwrap();
            let mut i = 0;
            while i <= done {
                let b = known[i];
                let fb = table[b.index()].unwrap();
                assign(source.add(a, b), target.add(fa, fb), &mut table, &mut known)?;
                assign(source.mul(a, b), target.mul(fa, fb), &mut table, &mut known)?;
                i += 1;
            }
            assign(source.neg(a), target.neg(fa), &mut table, &mut known)?;
            done += 1;
        }
        let table = table
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| RingError::NotAHomomorphism("generators do not generate".to_string()))?;
        let hom = RingHom {
            source: source.clone(),
            target: target.clone(),
            table,
        };
        hom.verify()?;
        Ok(hom)
    }

    /// The canonical map Z/n -> target (or any ring without generators).
    pub fn canonical(source: &Ring, target: &Ring) -> Result<RingHom, RingError> {
        RingHom::from_generator_images(source, target, &[])
    }

    pub fn identity(ring: &Ring) -> RingHom {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            table: ring.elements().collect(),
        }
    }

    /// Exhaustive check of additivity, multiplicativity and unitality.
    pub fn verify(&self) -> Result<(), RingError> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.one()) != t.one() {
            return Err(RingError::NotAHomomorphism("1 is not preserved".to_string()));
        }
        for a in s.elements() {
            for b in s.elements() {
                let (fa, fb) = (self.apply(a), self.apply(b));
                if self.apply(s.add(a, b)) != t.add(fa, fb) || self.apply(s.mul(a, b)) != t.mul(fa, fb) {
                    return Err(RingError::NotAHomomorphism(format!(
                        "fails at ({}, {})",
                        s.format(a),
                        s.format(b)
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a.index()]
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn is_injective(&self) -> bool {
        let mut img = self.table.clone();
        img.sort();
        img.dedup();
        img.len() == self.table.len()
    }

    /// Image of the map, sorted.
    pub fn image(&self) -> Vec<Elem> {
        let mut img = self.table.clone();
        img.sort();
        img.dedup();
        img
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{parse_elem, parse_ring};

    #[test]
    fn reduction_maps() {
        let z10 = parse_ring("Z/10").unwrap();
        let z5 = parse_ring("Z/5").unwrap();
        let f = RingHom::canonical(&z10, &z5).unwrap();
        for a in z10.elements() {
            assert_eq!(f.apply(a).0, a.0 % 5);
        }
        assert!(!f.is_injective());
        assert!(RingHom::canonical(&z5, &z10).is_err());
    }

    #[test]
    fn polynomial_evaluation() {
        // x -> 2 is well defined Z/5[x]/(x^2+1) -> Z/5 since 2^2 + 1 = 0.
        let r = parse_ring("Z/5[x]/(x^2+1)").unwrap();
        let z5 = parse_ring("Z/5").unwrap();
        let f = RingHom::from_generator_images(&r, &z5, &[Elem(2)]).unwrap();
        assert_eq!(f.apply(parse_elem(&r, "1+x").unwrap()), Elem(3));
        assert!(RingHom::from_generator_images(&r, &z5, &[Elem(1)]).is_err());
    }

    #[test]
    fn identity_is_homomorphism() {
        let r = parse_ring("Z/4 x Z/3").unwrap();
        assert!(RingHom::identity(&r).verify().is_ok());
        let gens = r.ring_generators();
        let f = RingHom::from_generator_images(&r, &r, &gens).unwrap();
        assert!(f.is_injective());
    }
}
