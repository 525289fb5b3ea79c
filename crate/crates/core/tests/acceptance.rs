//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;

use ramanujan_audit::building::{self, Ball, NeighborAlphabet};
use ramanujan_audit::expansion::{
    chebyshev_identity_audit, induced_average_degree, kahale_vertex_audit, kahale_walk_bound_audit, moore_audit,
    nb_counts, neighbor_profile,
};
use ramanujan_audit::ff::Field;
use ramanujan_audit::ffpoly::{
    classify_graph_type, inert_test, legendre, mobius_substitute, reciprocity_check, GraphType, LegendreValue,
    Polynomial,
};
use ramanujan_audit::graph::{Bipartition, Subset};
use ramanujan_audit::morgenstern::Instance;
use ramanujan_audit::projgroup::order_statistics;
use ramanujan_audit::spectral::{adjacency_spectrum, ramanujan_audit, verify_af_zero, zero_eigenfunction, Method};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn construction(inst: &Instance, build_secs: f64) -> Outcome {
    let x = &inst.x;
    check(x.n() == 720, format!("|X| = {}", x.n()))?;
    check(x.regular_degree() == Some(4), "X is not 4-regular")?;
    check(x.is_connected(), "X is disconnected")?;
    let sides = match x.bipartition() {
        Bipartition::Coloring(c) => {
            let left = c.iter().filter(|&&v| v == 0).count();
            (left, x.n() - left)
        }
        Bipartition::OddCycle(_) => return Err("X is not bipartite".into()),
    };
    check(sides == (360, 360), format!("sides {sides:?}"))?;
    check(inst.y_in_x.len() == 24, format!("|Y| = {}", inst.y_in_x.len()))?;
    check(build_secs < 10.0, format!("build took {build_secs:.2}s"))?;
    Ok(format!("|X| = 720, 4-regular, connected, sides 360/360, |Y| = 24, built in {build_secs:.2}s"))
}

fn girth(inst: &Instance) -> Outcome {
    let g = inst.x.girth().ok_or("X is a forest")?;
    let bound = (4.0 / 3.0 * (720f64).ln() / 3f64.ln()).ceil() as usize;
    check(bound == 8, format!("bound computed as {bound}"))?;
    check(g >= bound, format!("girth {g} < {bound}"))?;
    Ok(format!("girth(X) = {g} ≥ {bound}"))
}

fn vertex_expansion_failure(inst: &Instance) -> Outcome {
    let y = Subset::new(inst.x.n(), &inst.y_in_x).map_err(|e| e.to_string())?;
    let induced = induced_average_degree(&inst.x, &y).map_err(|e| e.to_string())?;
    check(induced.edges == 0, format!("Y spans {} directed edges", induced.edges))?;
    let p = neighbor_profile(&inst.x, &y).map_err(|e| e.to_string())?;
    check(p.histogram == BTreeMap::from([(2, 48)]), format!("histogram {:?}", p.histogram))?;
    check(p.boundary_size() == 48 && 2 * 48 == 4 * 24, "|N(Y)| ≠ (q+1)/2 |Y|")?;
    check(!p.has_unique_neighbor && !p.has_odd_neighbor, "unique or odd neighbor present")?;
    Ok("Y independent, histogram {2: 48}, |N(Y)| = 48 = 2|Y|, no unique/odd neighbors".into())
}

fn ramanujan(inst: &Instance) -> Outcome {
    let start = Instant::now();
    let rx = adjacency_spectrum(&inst.x, Method::Dense, 1e-9).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let bound = 2.0 * 3f64.sqrt();
    check(rx.trivial.len() == 2, format!("trivial eigenvalues {:?}", rx.trivial))?;
    check(rx.trivial.iter().all(|t| (t.abs() - 4.0).abs() < 1e-9), "trivial eigenvalues are not ±4")?;
    let worst = rx
        .eigenvalues
        .iter()
        .filter(|l| (l.abs() - 4.0).abs() > 1e-6)
        .fold(0.0f64, |m, l| m.max(l.abs()));
    check(worst <= bound + 1e-9, format!("max nontrivial |λ| = {worst}"))?;
    check(rx.eigenvalues.len() == 720, "incomplete spectrum")?;
    check(secs < 60.0, format!("eigensolve took {secs:.1}s"))?;
    let ry = ramanujan_audit(&inst.y, 1e-9).map_err(|e| e.to_string())?;
    check(ry.pass, format!("Y graph max nontrivial |λ| = {}", ry.max_nontrivial_abs))?;
    Ok(format!(
        "X: max nontrivial |λ| = {worst:.6} ≤ {bound:.6} ({secs:.2}s); Y graph: {:.6}",
        ry.max_nontrivial_abs
    ))
}

fn zero_eigenfunction_check(inst: &Instance) -> Outcome {
    let f = zero_eigenfunction(&inst.x, &inst.y_in_x, &inst.y).map_err(|e| e.to_string())?;
    // Independent integer oracle: (Af)(x) summed over neighbor lists.
    for x in 0..inst.x.n() {
        let s: i64 = inst.x.neighbors(x).map(|w| f.values[w]).sum();
        check(s == 0, format!("(Af)({x}) = {s}"))?;
    }
    let (ok, _) = verify_af_zero(&inst.x, &f);
    check(ok, "library verifier disagrees")?;
    check(f.support().len() == 24, format!("support {}", f.support().len()))?;
    check(f.sum() == 0, "f is not balanced")?;
    let ratio = f.sup_norm() as f64 / (f.norm2_squared() as f64).sqrt();
    check((ratio - 24f64.powf(-0.5)).abs() < 1e-12, format!("ratio {ratio}"))?;
    let floor = 720f64.powf(-0.25) / 2.0;
    check(ratio >= floor, "ratio below n^{-1/4}/2")?;
    Ok(format!("Af = 0 at all 720 vertices, support 24, ‖f‖∞/‖f‖₂ = {ratio:.4} ≥ {floor:.4}"))
}

fn subgroup_evidence(inst: &Instance) -> Outcome {
    check(inst.y_group.len() == 24, format!("|⟨δ⟩| = {}", inst.y_group.len()))?;
    let hist = order_statistics(&inst.y_group);
    check(hist == BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)]), format!("orders {hist:?}"))?;
    let side = match inst.y.bipartition() {
        Bipartition::Coloring(c) => c.iter().filter(|&&v| v == c[0]).count(),
        Bipartition::OddCycle(_) => return Err("Y graph is not bipartite".into()),
    };
    check(inst.y_group.element(0).is_identity(), "vertex 0 is not the identity")?;
    check(side == 12, format!("identity side has {side} vertices"))?;
    Ok("|⟨δ⟩| = 24, orders {1:1, 2:9, 3:8, 4:6} (S₄ fingerprint), Y graph bipartite 12/12".into())
}

fn moore_chebyshev(inst: &Instance) -> Outcome {
    let r = moore_audit(&inst.x, 10).map_err(|e| e.to_string())?;
    check(r.pass && r.regular && !r.strict, "Moore audit failed on X")?;
    let counts = nb_counts(&inst.x, 10, &[]).map_err(|e| e.to_string())?;
    for l in 1..=10u32 {
        let exact = num_bigint::BigUint::from(720u64 * 4) * num_bigint::BigUint::from(3u64).pow(l - 1);
        check(counts.total_at(l as usize) == &exact, format!("M_{l}(X) ≠ 720·4·3^{}", l - 1))?;
    }
    let c = chebyshev_identity_audit(&inst.x, 7, 1e-8, 200).map_err(|e| e.to_string())?;
    check(c.pass, format!("identities failed on X: {:?}", c.checks.iter().find(|k| !k.pass)))?;

    let mut rng = common::rng(2024);
    let mut closed_worst = 0.0f64;
    let mut graphs = 0;
    for i in 0..20 {
        let g = if i % 2 == 0 {
            let n = rng.gen_range(40..=300);
            let p = rng.gen_range(2.5..6.0) / n as f64;
            common::gnp(n, p, &mut rng).peel().0
        } else {
            let n = rng.gen_range(20..=200);
            common::permutation_graph(n, rng.gen_range(2..=3), &mut rng)
        };
        if g.edge_count() == 0 {
            continue;
        }
        graphs += 1;
        check(g.n() <= 300 && (0..g.n()).all(|v| g.degree(v) >= 2), "peeling left a low-degree vertex")?;
        let m = moore_audit(&g, 10).map_err(|e| e.to_string())?;
        check(m.pass, format!("Moore audit failed on random graph {i}"))?;
        check(m.strict != m.regular, format!("d̃ = d̄ mismatch with regularity on graph {i}"))?;
        let c = chebyshev_identity_audit(&g, 7, 1e-8, 200).map_err(|e| e.to_string())?;
        check(c.pass, format!("identities failed on random graph {i}"))?;
        if let Some(err) = c.closed_form_error {
            closed_worst = closed_worst.max(err);
        }
    }
    check(graphs == 20, format!("only {graphs} nonempty random graphs"))?;
    Ok(format!(
        "X: M_l = 720·4·3^(l-1) for l ≤ 10, identities exact for l ≤ 6; 20 random graphs pass; closed form error ≤ {closed_worst:.1e}"
    ))
}

fn kahale(inst: &Instance) -> Outcome {
    let cert = ramanujan_audit(&inst.x, 1e-9).map_err(|e| e.to_string())?;
    let y = Subset::new(inst.x.n(), &inst.y_in_x).map_err(|e| e.to_string())?;
    let mut detail = vec![];
    for l in 1..=6usize {
        check(24.0 * 3f64.powf(l as f64 / 2.0) <= 720.0, format!("precondition fails at l = {l}"))?;
        let r = kahale_walk_bound_audit(&inst.x, &y, l, &cert).map_err(|e| e.to_string())?;
        check(r.pass, format!("M_{l}(Y,X) = {} > {}", r.observed, r.bound))?;
        detail.push(format!("{}", r.observed));
    }
    check(
        kahale_walk_bound_audit(&inst.x, &y, 7, &cert).is_err(),
        "l = 7 should violate the precondition",
    )?;
    let v = kahale_vertex_audit(&inst.x, &y, 3, &cert).map_err(|e| e.to_string())?;
    check(v.pass && v.extremal && v.boundary_size == 48, format!("vertex audit {v:?}"))?;
    Ok(format!("M_l(Y,X) for l = 1..6: [{}]; |N(Y)| = d/2·|Y| = 48", detail.join(", ")))
}

fn buildings() -> Outcome {
    for q in [2u64, 3] {
        let alphabet = NeighborAlphabet::new(2, q).map_err(|e| e.to_string())?;
        let ball = Ball::new(&alphabet, 5).map_err(|e| e.to_string())?;
        let sizes = ball.sphere_sizes();
        for r in 0..=5usize {
            let within: usize = sizes[..=r].iter().sum();
            let expected = 1 + (q + 1) * (q.pow(r as u32) - 1) / (q - 1);
            check(within as u64 == expected, format!("q = {q}, r = {r}: {within} vs {expected}"))?;
        }
        let ram = building::ramified_audit(2, q, 4).map_err(|e| e.to_string())?;
        check(ram.pass && ram.histogram.keys().all(|&k| k == 2), format!("ramified q = {q}: {ram:?}"))?;
        let unr = building::unramified_audit(q, 3).map_err(|e| e.to_string())?;
        check(unr.pass && unr.histogram.keys().all(|&k| k as u64 == q + 1), format!("unramified q = {q}: {unr:?}"))?;
    }
    let n3 = NeighborAlphabet::new(3, 2).map_err(|e| e.to_string())?;
    check(n3.len() == 14, format!("n = 3 alphabet has {}", n3.len()))?;
    let r = building::ramified_audit(3, 2, 2).map_err(|e| e.to_string())?;
    check(r.pass, format!("n = 3 audit {r:?}"))?;
    Ok("tree ball counts r ≤ 5; ramified exactly-2 (radius 4); unramified degree q+1 (radius 3); n=3 alphabet 14, no unique neighbors".into())
}

fn arithmetic() -> Outcome {
    let mut rng = common::rng(10);
    let mut pairs = 0;
    let mut failures = 0;
    while pairs < 200 {
        let q = if rng.gen_bool(0.5) { 3 } else { 5 };
        let field = Field::prime(q).unwrap();
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let d = rng.gen_range(1..=4usize);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..q as i64)).collect();
            c.push(1);
            let p = Polynomial::from_ints(&field, &c);
            if p.is_irreducible().unwrap() {
                return p;
            }
        };
        let (f, g) = (draw(&mut rng), draw(&mut rng));
        if f == g {
            continue;
        }
        pairs += 1;
        if !reciprocity_check(&f, &g).map_err(|e| e.to_string())? {
            failures += 1;
        }
    }
    check(failures == 0, format!("{failures} reciprocity failures"))?;
    let mut inert_checked = 0;
    for q in [3u64, 5, 7] {
        let field = Field::prime(q).unwrap();
        for d in 1..=3 {
            for h in Polynomial::monic_of_degree(&field, d) {
                if !h.is_irreducible().unwrap() {
                    continue;
                }
                inert_checked += 1;
                let oracle = h.inflate(2).is_irreducible().unwrap();
                check(inert_test(&h).unwrap() == oracle, format!("inert_test disagrees on {h} over F_{q}"))?;
            }
        }
    }
    let f3 = Field::prime(3).unwrap();
    let e = |v| f3.from_int(v);
    let h = Polynomial::from_ints(&f3, &[1, 0, 1]);
    let g = mobius_substitute(&h, &e(1), &e(0), &e(2), &e(2)).map_err(|e| e.to_string())?;
    check(g == Polynomial::from_ints(&f3, &[2, 1, 1]), format!("g(u) = {g}"))?;
    check(legendre(&Polynomial::x(&f3), &g).unwrap() == LegendreValue::MinusOne, "(u/g) ≠ -1")?;
    check(
        classify_graph_type(&Polynomial::from_ints(&f3, &[1, 1])).unwrap() == GraphType::PglBipartite,
        "s+1 is not classified PGL",
    )?;
    Ok(format!(
        "reciprocity on 200 pairs; inert ⇔ h̃(t²) irreducible on {inert_checked} polynomials; g(u) = u²+u+2 with (u/g) = -1"
    ))
}

fn main() {
    let start = Instant::now();
    let inst = common::q3_instance();
    let build_secs = start.elapsed().as_secs_f64();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("construction", Box::new(|| construction(&inst, build_secs))),
        ("girth", Box::new(|| girth(&inst))),
        ("vertex expansion failure", Box::new(|| vertex_expansion_failure(&inst))),
        ("Ramanujan certification", Box::new(|| ramanujan(&inst))),
        ("zero eigenfunction", Box::new(|| zero_eigenfunction_check(&inst))),
        ("subgroup identification", Box::new(|| subgroup_evidence(&inst))),
        ("Moore/Chebyshev suite", Box::new(|| moore_chebyshev(&inst))),
        ("Kahale walk and vertex bounds", Box::new(|| kahale(&inst))),
        ("tree/building audits", Box::new(buildings)),
        ("arithmetic suite", Box::new(arithmetic)),
    ];
    let mut failed = HashSet::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {why}", i + 1);
                failed.insert(i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
