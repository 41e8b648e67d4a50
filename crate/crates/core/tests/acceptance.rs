use chevkit::chevmatrix::{
    bigcell_factor, commutator_filtration_check, count_defining_group, enumerate_elementary,
    filtration_quotient_check, h_multiplicativity_check, transport_sign_check, verify_steinberg_relations, BigCell,
    ChevGroup, Representation, DEFAULT_BUDGET,
};
use chevkit::finring::parse_ring;
use chevkit::steinberg::{k2_local_product_check, k2_order, symbol_generation_check, DEFAULT_COSET_BUDGET};
use chevkit::words::{reconstruct_ring, transport_check, ReconstructionHarness};
use std::time::{Duration, Instant};

const INSTANCES: [(&str, &str); 5] = [("A2", "Z/5"), ("A2", "Z/4"), ("A2", "F3[x]/(x^2)"), ("B2", "Z/5"), ("G2", "Z/7")];

fn group(phi: &str, ring: &str) -> ChevGroup {
    ChevGroup::parse(phi, &parse_ring(ring).unwrap()).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
    /// Exact data for the determinism comparison.
    record: String,
}

fn relations() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut record = String::new();
    for (phi, ring) in INSTANCES {
        let r = verify_steinberg_relations(&group(phi, ring));
        pass &= r.pass() && r.r1_checked > 0 && r.r2_checked > 0;
        detail.push(format!("{phi}/{ring}: {} failures", r.failure_count));
        record += &format!("{r:?}\n");
    }
    Outcome { pass, detail: detail.join(", "), record }
}

fn reconstruction() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut record = String::new();
    for (phi, ring) in INSTANCES {
        let h = ReconstructionHarness::identity(Representation::parse(phi).unwrap(), &parse_ring(ring).unwrap());
        match reconstruct_ring(&h) {
            Ok(r) => {
                let ok = r.pass() && r.carrier_size == r.image_size;
                pass &= ok;
                detail.push(format!("{phi}/{ring}: carrier {} {}", r.carrier_size, if ok { "ok" } else { "bad" }));
                record += &format!("{r:?}\n");
            }
            Err(e) => {
                pass = false;
                detail.push(format!("{phi}/{ring}: {e}"));
            }
        }
    }
    Outcome { pass, detail: detail.join(", "), record }
}

fn cross_transport() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut record = String::new();
    for (phi, ring) in [("B2", "Z/5"), ("G2", "Z/7")] {
        let r = transport_check(&Representation::parse(phi).unwrap(), &parse_ring(ring).unwrap()).unwrap();
        pass &= r.cross_failures == 0 && r.cross_checked > 0;
        detail.push(format!("{phi}/{ring}: {}/{} round trips ok", r.cross_checked - r.cross_failures, r.cross_checked));
        record += &format!("{r:?}\n");
    }
    Outcome { pass, detail: detail.join(", "), record }
}

fn generation() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (ring, want) in [("F2", 168u64), ("F3", 5616), ("Z/4", 43008)] {
        let g = group("A2", ring);
        let bfs = enumerate_elementary(&g, DEFAULT_BUDGET).unwrap().order();
        let full = count_defining_group(&g, DEFAULT_BUDGET);
        pass &= bfs == want && full == Some(want);
        detail.push(format!("{ring}: {bfs} vs {full:?}"));
    }
    let detail = detail.join(", ");
    Outcome { pass, record: detail.clone(), detail }
}

fn big_cell() -> Outcome {
    let g = group("A2", "F2");
    let store = enumerate_elementary(&g, DEFAULT_BUDGET).unwrap();
    let census = BigCell::census(&g, store.elements());
    let w12 = g.w(g.root_system().find_label("12").unwrap(), g.ring().one()).unwrap();
    let w_out = matches!(bigcell_factor(&g, &w12), BigCell::NotInCell { .. });
    let pass = census.pass() && census.in_cell == 64 && census.total == 168 && w_out;
    let detail = format!(
        "{} of {} factor, {} round-trip failures, {} duplicates, w12 outside: {w_out}",
        census.in_cell, census.total, census.round_trip_failures, census.duplicate_coordinates
    );
    Outcome { pass, record: detail.clone(), detail }
}

fn k2() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut record = String::new();
    for (ring, st) in [("F2", 168u64), ("F3", 5616)] {
        let r = k2_order(&group("A2", ring), DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
        pass &= r.steinberg_order == st && r.k2_order == 1 && r.divides && r.relators_sound;
        detail.push(format!("|St(A2,{ring})| = {}", r.steinberg_order));
        record += &format!("{r:?}\n");
    }
    let g = group("A2", "Z/4");
    let r = k2_order(&g, DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
    let s = symbol_generation_check(&g, DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
    pass &= r.steinberg_order % 43008 == 0 && r.elementary_order == 43008;
    pass &= s.symbol_subgroup_order == r.steinberg_order / 43008 && s.central && s.bimultiplicative;
    detail.push(format!(
        "|St(A2,Z/4)| = {} = {} x 43008, symbol subgroup {}, central {}",
        r.steinberg_order,
        r.steinberg_order / 43008,
        s.symbol_subgroup_order,
        s.central
    ));
    record += &format!("{r:?}\n{s:?}\n");
    Outcome { pass, detail: detail.join(", "), record }
}

fn local_product() -> Outcome {
    let rep = Representation::parse("A2").unwrap();
    let r = k2_local_product_check(&rep, &parse_ring("Z/6").unwrap(), DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
    let f2 = k2_order(&group("A2", "F2"), DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
    let f3 = k2_order(&group("A2", "F3"), DEFAULT_COSET_BUDGET, DEFAULT_BUDGET).unwrap();
    let pass = r.pass() && r.k2_order == f2.k2_order * f3.k2_order;
    let detail = format!(
        "|K2(A2,Z/6)| = {}, factors {:?}, |K2(F2)|*|K2(F3)| = {}",
        r.k2_order,
        r.factors,
        f2.k2_order * f3.k2_order
    );
    Outcome { pass, record: detail.clone(), detail }
}

fn filtration() -> Outcome {
    let f = filtration_quotient_check(&group("A2", "F3[x]/(x^2)"), 1, 0, 100, DEFAULT_BUDGET).unwrap();
    let c = commutator_filtration_check(&group("A2", "F3[x]/(x^3)"), 1, 1, 1000, 0).unwrap();
    let pass = f.pass() && f.subgroup_order == 3u64.pow(8) && f.adjoint_samples >= 100 && c.pass() && c.samples == 1000;
    let detail = format!(
        "|G(S,J)| = {}, quotient ok {}, adjoint {}/{} samples, commutator levels {} failures in {}",
        f.subgroup_order,
        f.pass(),
        f.adjoint_samples - f.adjoint_failures,
        f.adjoint_samples,
        c.failures,
        c.samples
    );
    Outcome { pass, detail, record: format!("{f:?}\n{c:?}\n") }
}

fn torus_and_signs() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut record = String::new();
    for (phi, ring) in INSTANCES {
        let g = group(phi, ring);
        let h = h_multiplicativity_check(&g);
        let t = transport_sign_check(&g);
        let w = transport_check(g.rep(), g.ring()).unwrap();
        let ok = h.pass() && t.pass() && w.transports.iter().all(|x| x.sign_constant_in_t);
        pass &= ok;
        detail.push(format!("{phi}/{ring}: {}", if ok { "ok" } else { "bad" }));
        record += &format!("{h:?}\n{t:?}\n{:?}\n", w.transports);
    }
    Outcome { pass, detail: detail.join(", "), record }
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    (1, "Steinberg relations", 60, relations),
    (2, "ring reconstruction from words", 60, reconstruction),
    (3, "B2/G2 cross-length transport", 30, cross_transport),
    (4, "elementary generation counts", 300, generation),
    (5, "big cell of SL3(F2)", 10, big_cell),
    (6, "K2 by coset enumeration", 600, k2),
    (7, "K2 local product for Z/6", 600, local_product),
    (8, "congruence filtration", 300, filtration),
    (9, "h-multiplicativity and transport signs", 30, torus_and_signs),
];

fn suite(print: bool) -> (bool, String) {
    let mut all = true;
    let mut records = String::new();
    for (n, name, limit, f) in CRITERIA {
        let start = Instant::now();
        let out = f();
        let t = start.elapsed();
        let ok = out.pass && t < Duration::from_secs(limit);
        all &= ok;
        records += &format!("[{n}] {}\n{}", out.pass, out.record);
        if print {
            println!(
                "criterion {n:>2} {}: {name} ({:.2} s, limit {limit} s) {}",
                if ok { "PASS" } else { "FAIL" },
                t.as_secs_f64(),
                out.detail
            );
        }
    }
    (all, records)
}

fn main() {
    let (first_ok, first) = suite(true);
    let start = Instant::now();
    let (_, second) = suite(false);
    let same = first == second;
    println!(
        "criterion 10 {}: determinism of two full runs ({:.2} s, {} bytes compared)",
        if same { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        first.len()
    );
    if !(first_ok && same) {
        std::process::exit(1);
    }
}
