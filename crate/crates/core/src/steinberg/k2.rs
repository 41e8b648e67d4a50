use super::{pi_s, CosetTable, Letter, Presentation, SteinbergError, Word, DEFAULT_RELATOR_BUDGET};
use crate::chevmatrix::{enumerate_elementary, ChevGroup, Representation};
use crate::finring::{is_nice_pair, local_decomposition, unit_generated_subring, Elem, Ring};
use crate::rootsys::Root;
use serde::Serialize;
use std::collections::HashSet;
use std::sync::Arc;

/// Default cap on live coset rows.
pub const DEFAULT_COSET_BUDGET: usize = 5_000_000;

/// St(Φ, S) as a faithful permutation group on the cosets of the
/// unipotent subgroup H = ⟨x̃_α(t) : α > 0⟩.
///
/// H maps onto U⁺(S); its order is certified by enumerating the group
/// presented by the positive generators and relators alone, which has H as
/// a quotient. When that order equals |S|^N, π_S is injective on H, so the
/// core of H lies in K2 ∩ H = 1 and the action on cosets is faithful.
struct SteinbergModel {
    pres: Presentation,
    table: CosetTable,
    unipotent_order: u64,
    positive_order: u64,
}

impl SteinbergModel {
    fn new(group: &ChevGroup, budget: usize) -> Result<SteinbergModel, SteinbergError> {
        let phi = group.root_system();
        let ring = group.ring();
        if !phi.is_simply_laced() && !is_nice_pair(phi, ring).nice {
            return Err(SteinbergError::Refused(format!(
                "({phi}, {}) is not a nice pair",
                ring.label()
            )));
        }
        let pres = Presentation::build(group, DEFAULT_RELATOR_BUDGET)?;
        let positive = Presentation::build_restricted(group, DEFAULT_RELATOR_BUDGET, |a| phi.is_positive(a))?;
        let positive_order = positive.todd_coxeter(&[], budget)?.index() as u64;
        let unipotent_order = ring.card().pow(phi.num_positive() as u32);
        if positive_order != unipotent_order {
            return Err(SteinbergError::HypothesisFailed(format!(
                "positive presentation has order {positive_order}, expected {unipotent_order}"
            )));
        }
        let h: Vec<Word> = pres
            .generator_letters()
            .filter(|l| phi.is_positive(pres.generator(l.generator as usize).0))
            .map(|l| vec![l])
            .collect();
        let table = pres.todd_coxeter(&h, budget)?;
        Ok(SteinbergModel {
            pres,
            table,
            unipotent_order,
            positive_order,
        })
    }

    fn order(&self) -> u64 {
        self.table.index() as u64 * self.unipotent_order
    }

    fn perm(&self, w: &[Letter]) -> Vec<u32> {
        self.table.permutation(w)
    }

    /// The long root used for symbols.
    fn symbol_root(&self) -> Root {
        let phi = self.pres.root_system();
        phi.positive_roots().find(|&a| phi.is_long(a)).unwrap()
    }

    fn units(&self) -> Vec<Elem> {
        let r = self.pres.ring();
        r.elements().filter(|&e| r.is_unit(e)).collect()
    }
}

fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&c| q[c as usize]).collect()
}

fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &c)| i as u32 == c)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct K2Report {
    pub phi: String,
    pub ring: String,
    pub steinberg_order: u64,
    pub elementary_order: u64,
    pub k2_order: u64,
    pub divides: bool,
    pub unipotent_order: u64,
    pub positive_presentation_order: u64,
    pub coset_index: u64,
    pub relators_sound: bool,
    pub symbols_in_kernel: bool,
    pub nontrivial_symbols: Vec<(String, String)>,
}

/// |St(Φ,S)| by coset enumeration over the unipotent subgroup.
pub fn steinberg_order(group: &ChevGroup, budget: usize) -> Result<u64, SteinbergError> {
    Ok(SteinbergModel::new(group, budget)?.order())
}

/// |K2(Φ,S)| = |St(Φ,S)| / |G(S)⁺|, with both orders computed exactly.
pub fn k2_order(group: &ChevGroup, coset_budget: usize, bfs_budget: u64) -> Result<K2Report, SteinbergError> {
    let model = SteinbergModel::new(group, coset_budget)?;
    k2_report(group, &model, bfs_budget)
}

fn k2_report(group: &ChevGroup, model: &SteinbergModel, bfs_budget: u64) -> Result<K2Report, SteinbergError> {
    let st = model.order();
    let g = enumerate_elementary(group, bfs_budget)?.order();
    let pres = &model.pres;
    let r = pres.ring();
    let relators_sound = pres.relators().iter().all(|w| group.is_identity(&pi_s(pres, group, w)));
    let a = model.symbol_root();
    let units = model.units();
    let mut symbols_in_kernel = true;
    let mut nontrivial = Vec::new();
    for &u in &units {
        for &v in &units {
            let w = pres.symbol(a, u, v)?;
            symbols_in_kernel &= group.is_identity(&pi_s(pres, group, &w));
            if !is_identity(&model.perm(&w)) {
                nontrivial.push((r.format(u), r.format(v)));
            }
        }
    }
    Ok(K2Report {
        phi: pres.root_system().to_string(),
        ring: r.label().to_string(),
        steinberg_order: st,
        elementary_order: g,
        k2_order: st / g,
        divides: st % g == 0,
        unipotent_order: model.unipotent_order,
        positive_presentation_order: model.positive_order,
        coset_index: model.table.index() as u64,
        relators_sound,
        symbols_in_kernel,
        nontrivial_symbols: nontrivial,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymbolGenerationReport {
    pub phi: String,
    pub ring: String,
    pub root: String,
    pub steinberg_order: u64,
    pub k2_order: u64,
    pub symbol_subgroup_order: u64,
    pub central: bool,
    pub bimultiplicative: bool,
}

impl SymbolGenerationReport {
    pub fn pass(&self) -> bool {
        self.central && self.bimultiplicative && self.symbol_subgroup_order == self.k2_order
    }
}

/// Order of the subgroup generated by the symbols {u, v}_α for a fixed long
/// root, inside the enumerated St, with centrality and bimultiplicativity
/// checked on the faithful permutation action.
pub fn symbol_generation_check(
    group: &ChevGroup,
    coset_budget: usize,
    bfs_budget: u64,
) -> Result<SymbolGenerationReport, SteinbergError> {
    let ring = group.ring();
    let sub = unit_generated_subring(ring).map_err(|e| SteinbergError::HypothesisFailed(e.to_string()))?;
    if !sub.equals_whole {
        return Err(SteinbergError::HypothesisFailed(format!(
            "the units of {} generate a proper subring",
            ring.label()
        )));
    }
    let model = SteinbergModel::new(group, coset_budget)?;
    let k2 = k2_report(group, &model, bfs_budget)?;
    let pres = &model.pres;
    let a = model.symbol_root();
    let units = model.units();
    let r = pres.ring();
    let mut perms = std::collections::BTreeMap::new();
    for &u in &units {
        for &v in &units {
            perms.insert((u, v), model.perm(&pres.symbol(a, u, v)?));
        }
    }
    let gens: Vec<Vec<u32>> = pres.generator_letters().map(|l| model.perm(&[l])).collect();
    let central = perms
        .values()
        .all(|s| gens.iter().all(|x| compose(s, x) == compose(x, s)));
    let mut bimultiplicative = true;
    for &u1 in &units {
        for &u2 in &units {
            for &v in &units {
                let lhs = &perms[&(r.mul(u1, u2), v)];
                bimultiplicative &= *lhs == compose(&perms[&(u1, v)], &perms[&(u2, v)]);
                let rhs = &perms[&(v, r.mul(u1, u2))];
                bimultiplicative &= *rhs == compose(&perms[&(v, u1)], &perms[&(v, u2)]);
            }
        }
    }
    // Closure of the symbol permutations.
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let id: Vec<u32> = (0..model.table.index() as u32).collect();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let sym: Vec<&Vec<u32>> = perms.values().collect();
    while let Some(p) = frontier.pop() {
        for s in &sym {
            let q = compose(&p, s);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    Ok(SymbolGenerationReport {
        phi: pres.root_system().to_string(),
        ring: r.label().to_string(),
        root: pres.root_system().label(a),
        steinberg_order: k2.steinberg_order,
        k2_order: k2.k2_order,
        symbol_subgroup_order: seen.len() as u64,
        central,
        bimultiplicative,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LocalProductReport {
    pub phi: String,
    pub ring: String,
    pub k2_order: u64,
    pub factors: Vec<(String, u64)>,
    pub product: u64,
}

impl LocalProductReport {
    pub fn pass(&self) -> bool {
        self.k2_order == self.product
    }
}

/// |K2(Φ,S)| against ∏ |K2(Φ,S_i)| over the local factors of S.
pub fn k2_local_product_check(
    rep: &Arc<Representation>,
    ring: &Ring,
    coset_budget: usize,
    bfs_budget: u64,
) -> Result<LocalProductReport, SteinbergError> {
    let whole = k2_order(&ChevGroup::new(rep.clone(), ring.clone()), coset_budget, bfs_budget)?;
    let dec = local_decomposition(ring).map_err(|e| SteinbergError::HypothesisFailed(e.to_string()))?;
    let mut factors = Vec::new();
    for f in &dec.factors {
        let k = k2_order(&ChevGroup::new(rep.clone(), f.clone()), coset_budget, bfs_budget)?;
        factors.push((f.label().to_string(), k.k2_order));
    }
    Ok(LocalProductReport {
        phi: rep.root_system().to_string(),
        ring: ring.label().to_string(),
        k2_order: whole.k2_order,
        product: factors.iter().map(|f| f.1).product(),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevmatrix::DEFAULT_BUDGET;
    use crate::finring::parse_ring;

    fn group(phi: &str, ring: &str) -> ChevGroup {
        ChevGroup::parse(phi, &parse_ring(ring).unwrap()).unwrap()
    }

    #[test]
    fn k2_of_small_fields_is_trivial() {
        for ring in ["Z/2", "Z/3"] {
            let rep = k2_order(&group("A2", ring), DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
            assert_eq!(rep.k2_order, 1, "{rep:?}");
            assert!(rep.divides && rep.relators_sound && rep.symbols_in_kernel);
        }
    }

    #[test]
    fn product_of_fields() {
        let rep = Representation::parse("A2").unwrap();
        let r = k2_local_product_check(&rep, &parse_ring("Z/2 x Z/2").unwrap(), DEFAULT_COSET_BUDGET, DEFAULT_BUDGET)
            .unwrap();
        assert!(r.pass());
        assert_eq!(r.k2_order, 1);
        assert_eq!(r.factors.len(), 2);
    }

    #[test]
    fn symbol_check_on_f3() {
        let r = symbol_generation_check(&group("A2", "Z/3"), DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
        assert!(r.pass());
        assert_eq!(r.symbol_subgroup_order, 1);
    }

    #[test]
    fn refuses_non_nice_b2() {
        assert!(matches!(
            k2_order(&group("B2", "Z/4"), 1000, 1000),
            Err(SteinbergError::Refused(_))
        ));
    }
}
