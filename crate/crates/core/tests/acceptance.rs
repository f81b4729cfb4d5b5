//! One line per acceptance criterion. Time limits and sample counts are
//! pinned below; a criterion that cannot be met as stated is listed in
//! `KNOWN_SHORTFALLS`, printed as FAIL, and excluded from the final assert.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use itertools::Itertools;
use sethom::casesolver::{index_sets, labels, realization_table, realized_labels, s_labels, solve_cover, table_differences, CaseAssignment};
use sethom::census::{census_orbit_unions, example52, fano_plane};
use sethom::edges::{complement, derive_edges, is_balanced, m3_edges, m4_edges, n4_edges, Carrier, Family, HypergraphDoc, KHypergraph};
use sethom::groups::{close_group, orbits_on_subsets, Permutation, MAX_ORDER};
use sethom::homtest::{
    automorphism_group, canonical_form, find_isomorphism, homogeneity_report, key_lemma_trial, tournament_forcing_search, RelKind,
    StructuredSet,
};
use sethom::reconstruct::{closed_m3_ambient, recover_c, recover_d_n4, recover_order_m3, recover_r_n3, sample_ambient_core, validate, ValidationReport};
use sethom::relstruct::{check_c_axioms, check_d_axioms, CAxiom, DAxiom, QuaternaryRel, TernaryRel};
use sethom::treelike::{build_circle_config, c_of_leaves, d_of_leaves, random_rooted, random_unrooted};

const LIMIT_TABLES: Duration = Duration::from_secs(1);
const LIMIT_SOLVE: Duration = Duration::from_secs(1);
const LIMIT_ORACLE: Duration = Duration::from_secs(5);
const LIMIT_EXAMPLE52: Duration = Duration::from_secs(60);
const LIMIT_FANO: Duration = Duration::from_secs(60);
const LIMIT_TOURNAMENT: Duration = Duration::from_secs(10);
const LIMIT_CENSUS: Duration = Duration::from_secs(600);

const M3_FRAGMENTS: u64 = 50;
const N3_CONFIGS: u64 = 100;
const KEY_LEMMA_TRIALS: usize = 200;
const RECONSTRUCT_RUNS: u64 = 50;
const MIN_AMBIENT: usize = 12;
const AXIOM_SEEDS: u64 = 12;

/// Criteria that fail as stated, with the reason printed next to them.
const KNOWN_SHORTFALLS: &[(usize, &str)] = &[(
    11,
    "the search closes right after 5->2 (3-cycle 145 inside 2-), so arcs 2->7 7->3 7->6 5->7 6->5 never enter a sound trace",
)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    match r {
        Ok(msg) if took <= limit => Ok(format!("{msg} [{:.2?} <= {:?}]", took, limit)),
        Ok(msg) => Err(format!("{msg}; took {:.2?}, limit {:?}", took, limit)),
        Err(e) => Err(e),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn c1_tables() -> Outcome {
    timed(LIMIT_TABLES, || {
        let t3 = realization_table(3).map_err(e)?;
        let t4 = realization_table(4).map_err(e)?;
        ensure(t3.rows.len() == 14 && t4.rows.len() == 30, || format!("row counts {} / {}", t3.rows.len(), t4.rows.len()))?;
        let d3 = table_differences(&t3, &common::fixture("table1.csv")).map_err(e)?;
        let d4 = table_differences(&t4, &common::fixture("table2.csv")).map_err(e)?;
        ensure(d3.is_empty() && d4.is_empty(), || format!("cell differences {d3:?} {d4:?}"))?;
        Ok("14 and 30 rows equal to fixtures cell-for-cell".into())
    })
}

fn c2_solve() -> Outcome {
    timed(LIMIT_SOLVE, || {
        let s3 = solve_cover(3, &s_labels(3).into_iter().collect()).map_err(e)?;
        let expected = [
            CaseAssignment { choices: vec![Some(vec![1, 2, 3]), Some(vec![3, 4]), Some(vec![1])] },
            CaseAssignment { choices: vec![Some(vec![2, 3, 4]), Some(vec![1, 2]), Some(vec![4])] },
        ];
        let got: BTreeSet<_> = s3.iter().cloned().collect();
        ensure(got == expected.iter().cloned().collect(), || format!("k=3 gave {:?}", s3.iter().map(|a| a.to_string()).collect::<Vec<_>>()))?;
        let s4 = solve_cover(4, &labels(4).into_iter().collect()).map_err(e)?;
        ensure(s4.is_empty(), || format!("k=4 gave {} assignments", s4.len()))?;
        Ok(format!("k=3: {}; k=4: none", s3.iter().map(|a| a.to_string()).join(" | ")))
    })
}

fn c3_oracle() -> Outcome {
    timed(LIMIT_ORACLE, || {
        let mut rows = 0;
        for k in 3..=5 {
            for i in 1..=k {
                for j in index_sets(k, i) {
                    let ours = realized_labels(i, &j, k).map_err(e)?;
                    let oracle = common::realized_oracle(i, &j, k);
                    ensure(ours == oracle, || format!("k={k} i={i} J={j:?}: {ours:?} vs {oracle:?}"))?;
                    rows += 1;
                }
            }
        }
        Ok(format!("{rows}/{rows} rows agree for k = 3, 4, 5"))
    })
}

fn c4_example52() -> Outcome {
    timed(LIMIT_EXAMPLE52, || {
        let gens = [
            Permutation::from_fn(7, |x| (x + 1) % 7).map_err(e)?,
            Permutation::from_fn(7, |x| (3 * x) % 7).map_err(e)?,
        ];
        let g = close_group(7, &gens, MAX_ORDER).map_err(e)?;
        ensure(g.order() == 42, || format!("order {}", g.order()))?;
        let orbits = orbits_on_subsets(&g, 3).map_err(e)?;
        let sizes: BTreeSet<usize> = orbits.iter().map(Vec::len).collect();
        ensure(sizes == BTreeSet::from([14, 21]), || format!("orbit sizes {sizes:?}"))?;
        let small = orbits.iter().find(|o| o.len() == 14).unwrap();
        let h = KHypergraph::from_masks(7, 3, small.iter().copied()).map_err(e)?;
        for t in [[0, 1, 3], [0, 2, 6], [0, 2, 3], [0, 4, 5]] {
            ensure(h.contains(&t), || format!("{t:?} missing from the 14-orbit"))?;
        }
        let fixture: HypergraphDoc = serde_json::from_str(&common::fixture("example52.json")).map_err(e)?;
        ensure(KHypergraph::from_doc(&fixture).map_err(e)? == h, || "fixture edge list differs".into())?;
        ensure(example52().map_err(e)? == h, || "library construction differs".into())?;
        let r = homogeneity_report(&h).map_err(e)?;
        let cert = r.certificate.clone().ok_or("no certificate")?;
        ensure(r.set_homogeneous && !r.homogeneous && cert.verify(&h, None), || format!("flags {} {}", r.set_homogeneous, r.homogeneous))?;
        let (a, b) = ([2, 4, 5, 6], [3, 4, 5, 6]);
        let (ha, hb) = (h.induced(&a), h.induced(&b));
        let iso = find_isomorphism(&StructuredSet::new(ha.clone()), &StructuredSet::new(hb.clone()), &[RelKind::Edges]).map_err(e)?;
        ensure(ha.edge_count() == 1 && hb.edge_count() == 2 && iso.is_none() && !common::brute_isomorphic(&ha, &hb), || "4-sets".into())?;
        Ok(format!("|G|=42, orbits 14/21, set-homogeneous, not homogeneous ({cert:?} verified), |Aut|={}", r.group_order))
    })
}

fn c5_fano() -> Outcome {
    timed(LIMIT_FANO, || {
        let h = fano_plane().map_err(e)?;
        let g = automorphism_group(&StructuredSet::new(h.clone()), &[RelKind::Edges]).map_err(e)?;
        let r = homogeneity_report(&h).map_err(e)?;
        ensure(g.order() == 168 && r.homogeneous, || format!("order {} homogeneous {}", g.order(), r.homogeneous))?;
        Ok("automorphism group of order 168, homogeneous".into())
    })
}

fn c6_m3_patterns() -> Outcome {
    let mut counts = BTreeMap::new();
    let mut checked = 0;
    for seed in 0..M3_FRAGMENTS {
        let n = 8 + (seed as usize % 9);
        let t = random_rooted(n, 2, false, seed).map_err(e)?;
        let (c, _) = c_of_leaves(&t);
        let h = m3_edges(&c);
        for q in (0..n).combinations(4) {
            let (k, ok) = common::m3_quad_oracle(&h, [q[0], q[1], q[2], q[3]]);
            ensure(ok, || format!("seed {seed} quad {q:?} with {k} edges"))?;
            *counts.entry(k).or_insert(0usize) += 1;
            checked += 1;
        }
    }
    ensure(counts.len() == 5, || format!("edge counts seen {counts:?}"))?;
    Ok(format!("{M3_FRAGMENTS} fragments, {checked} quads, 0 violations, counts {counts:?}"))
}

fn c7_n3_two_graph() -> Outcome {
    let mut quads = 0;
    let mut balanced = 0;
    for seed in 0..N3_CONFIGS {
        let n = 4 + (seed as usize % 9);
        let z = build_circle_config(n, 8 * n as i64, seed).map_err(e)?;
        let h = derive_edges(Family::N3, Carrier::Circle(&z)).map_err(e)?;
        for q in (0..n).combinations(4) {
            let k = q.iter().copied().combinations(3).filter(|t| h.contains(t)).count();
            ensure(k == 2 || k == 4, || format!("seed {seed} quad {q:?} carries {k} edges"))?;
            quads += 1;
        }
        for u in (0..n).combinations(5) {
            if is_balanced(&h, &u) {
                let g = automorphism_group(&StructuredSet::new(h.induced(&u)), &[RelKind::Edges]).map_err(e)?;
                ensure(g.order() == 10, || format!("seed {seed} balanced {u:?} has |Aut| {}", g.order()))?;
                balanced += 1;
            }
        }
    }
    ensure(balanced > 0, || "no balanced 5-set sampled".into())?;
    Ok(format!("{N3_CONFIGS} configs, {quads} quads with 2 or 4 edges, {balanced} balanced 5-sets with |Aut|=10"))
}

fn c8_key_lemma() -> Outcome {
    let mut parts = Vec::new();
    let runs: [(Family, &[usize]); 5] = [
        (Family::M3, &[3, 4, 5, 6]),
        (Family::M4, &[3, 4, 5, 6]),
        (Family::N3, &[3, 4, 5, 6]),
        (Family::M6, &[4, 5, 6, 7]),
        (Family::N4, &[3, 4, 5]),
    ];
    for (family, sizes) in runs {
        let r = key_lemma_trial(family, sizes, KEY_LEMMA_TRIALS, 0).map_err(e)?;
        ensure(r.violations.is_empty(), || format!("{family}: {} violations, first {:?}", r.violations.len(), r.violations.first()))?;
        parts.push(format!("{family} {}/{} iso", r.hypergraph_isomorphic, r.trials));
    }
    let six = key_lemma_trial(Family::N4, &[6], KEY_LEMMA_TRIALS, 0).map_err(e)?;
    ensure(!six.counterexamples.is_empty(), || "no sampled N4 size-6 counterexample".into())?;
    let (cat, snow) = common::sextet_pair();
    let s = |t| {
        let d = d_of_leaves(t);
        StructuredSet::new(n4_edges(&d)).with_d(d).unwrap()
    };
    let (a, b) = (s(&cat), s(&snow));
    let complete = a.graph.edge_count() == 15 && b.graph.edge_count() == 15;
    let hyper = find_isomorphism(&StructuredSet::new(a.graph.clone()), &StructuredSet::new(b.graph.clone()), &[RelKind::Edges]).map_err(e)?;
    let with_d = find_isomorphism(&a, &b, &[RelKind::Edges, RelKind::D]).map_err(e)?;
    ensure(complete && hyper.is_some() && with_d.is_none(), || "complete sextet pair".into())?;
    Ok(format!(
        "{}; 0 violations; N4 size 6: {} sampled counterexamples and the two complete 6-sets isomorphic as hypergraphs, not as D-sets",
        parts.join(", "),
        six.counterexamples.len()
    ))
}

fn c9_reconstruction() -> Outcome {
    let mut totals: BTreeMap<&str, ValidationReport> = BTreeMap::new();
    let mut add = |name: &'static str, v: ValidationReport| {
        let t = totals.entry(name).or_default();
        t.agree += v.agree;
        t.disagree += v.disagree;
        t.unknown += v.unknown;
    };
    for seed in 0..RECONSTRUCT_RUNS {
        let n = MIN_AMBIENT + (seed as usize % 5);
        let ac = sample_ambient_core(Family::M3, n, 6, seed).map_err(e)?;
        let o = recover_order_m3(&ac).map_err(e)?;
        add("order_m3", validate(&ac, &o).map_err(e)?);
        add("c_m3", validate(&ac, &recover_c(Family::M3, &ac, Some(&o)).map_err(e)?).map_err(e)?);
        let ac = closed_m3_ambient(6, n, seed).map_err(e)?;
        let o = recover_order_m3(&ac).map_err(e)?;
        add("order_m3_closed", validate(&ac, &o).map_err(e)?);
        add("c_m3_closed", validate(&ac, &recover_c(Family::M3, &ac, Some(&o)).map_err(e)?).map_err(e)?);
        let ac = sample_ambient_core(Family::M4, n, 6, seed).map_err(e)?;
        add("c_m4", validate(&ac, &recover_c(Family::M4, &ac, None).map_err(e)?).map_err(e)?);
        let ac = sample_ambient_core(Family::N3, n, 6, seed).map_err(e)?;
        add("r_n3", validate(&ac, &recover_r_n3(&ac).map_err(e)?).map_err(e)?);
        let ac = sample_ambient_core(Family::N4, n, 6, seed).map_err(e)?;
        add("d_n4", validate(&ac, &recover_d_n4(&ac).map_err(e)?).map_err(e)?);
    }
    let bad: Vec<_> = totals.iter().filter(|(_, v)| v.disagree > 0).collect();
    ensure(bad.is_empty(), || format!("disagreements {bad:?}"))?;
    let cov = totals.iter().map(|(k, v)| format!("{k} {:.1}%", 100.0 * v.coverage())).join(", ");
    Ok(format!("{RECONSTRUCT_RUNS} runs per family, ambient {MIN_AMBIENT}-{}: 0 disagreements; coverage {cov}", MIN_AMBIENT + 4))
}

fn first_failure_c(c: &TernaryRel) -> Option<(String, Vec<usize>)> {
    check_c_axioms(c, &CAxiom::UNIVERSAL, None).unwrap().into_iter().find(|r| !r.passed()).map(|r| (r.axiom, r.witness.unwrap_or_default()))
}

fn first_failure_d(d: &QuaternaryRel) -> Option<(String, Vec<usize>)> {
    check_d_axioms(d, &DAxiom::UNIVERSAL).into_iter().find(|r| !r.passed()).map(|r| (r.axiom, r.witness.unwrap_or_default()))
}

fn c10_axioms() -> Outcome {
    let mut fragments = 0;
    let mut perturbed = 0;
    for seed in 0..AXIOM_SEEDS {
        for n in 4..=10 {
            let mut cs = Vec::new();
            for t in [2, 3] {
                cs.push(c_of_leaves(&random_rooted(n, t, false, seed).map_err(e)?).0);
            }
            let ds = [
                d_of_leaves(&random_unrooted(n, 4, false, seed).map_err(e)?),
                d_of_leaves(&random_unrooted(n, 3, true, seed).map_err(e)?),
            ];
            let idx = (seed as usize * 7 + n) % n;
            let tuple3 = [idx, (idx + 1) % n, (idx + seed as usize) % n];
            let tuple4 = [idx, (idx + 2) % n, (idx + 1) % n, (idx + seed as usize) % n];
            for c in &cs {
                ensure(first_failure_c(c).is_none(), || format!("seed {seed} n={n}: C fails {:?}", first_failure_c(c)))?;
                let bad = c.flipped(tuple3);
                let f = first_failure_c(&bad);
                ensure(f.as_ref().is_some_and(|(_, w)| !w.is_empty()), || format!("flip of C at {tuple3:?} undetected"))?;
                fragments += 1;
                perturbed += 1;
            }
            for d in &ds {
                ensure(first_failure_d(d).is_none(), || format!("seed {seed} n={n}: D fails {:?}", first_failure_d(d)))?;
                let bad = d.flipped(tuple4);
                let f = first_failure_d(&bad);
                ensure(f.as_ref().is_some_and(|(_, w)| !w.is_empty()), || format!("flip of D at {tuple4:?} undetected"))?;
                fragments += 1;
                perturbed += 1;
            }
        }
    }
    Ok(format!("C1-C4 and D1-D4 pass on {fragments} fragments (n 4-10); {perturbed} single-tuple flips each caught with a counterexample"))
}

const PAPER_ARCS: [(usize, usize); 7] = [(4, 5), (5, 2), (2, 7), (7, 3), (7, 6), (5, 7), (6, 5)];

fn c11_tournament() -> Outcome {
    timed(LIMIT_TOURNAMENT, || {
        let out = tournament_forcing_search();
        ensure(out.is_unsat(), || "search found a model".into())?;
        let forced: Vec<(usize, usize)> = out.forced_arcs().iter().map(|a| (a.0, a.1)).collect();
        ensure(forced.starts_with(&[(4, 5), (5, 2)]), || format!("forced {forced:?}"))?;
        let missing: Vec<String> = PAPER_ARCS.iter().filter(|a| !forced.contains(a)).map(|(x, y)| format!("{x}->{y}")).collect();
        ensure(missing.is_empty(), || format!("unsat with forced 4->5, 5->2; trace lacks {}", missing.join(" ")))?;
        Ok("unsat; trace contains every listed arc".into())
    })
}

fn c12_intersections() -> Outcome {
    let mut subsets = 0;
    for seed in 0..10u64 {
        for family in Family::ALL {
            let n = match family {
                Family::M6 => 9,
                _ => 8 + seed as usize % 3,
            };
            let h = sethom::homtest::family_structure(family, n, seed).map_err(e)?.graph;
            for s in (0..n).combinations(h.k() + 1) {
                if let Some((i, common)) = common::intersection_defect(&h, &s) {
                    ensure(common == h.k() + 1 - i, || format!("{family} seed {seed} {s:?}: {i} edges meet in {common}"))?;
                    subsets += 1;
                }
            }
        }
    }
    Ok(format!("{subsets} (k+1)-sets with edges across all five families, 0 violations"))
}

/// Permutations of `0..n` preserving `keep`, found by scanning all `n!`.
fn brute_automorphisms(n: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    (0..n).permutations(n).filter(|p| keep(p)).collect()
}

fn preserves(h: &KHypergraph, p: &[usize]) -> bool {
    h.sorted_edges().iter().all(|e| h.contains(&e.iter().map(|&x| p[x]).collect::<Vec<_>>()))
}

fn c13_reducts() -> Outcome {
    let mut autos = 0;
    for seed in 0..6u64 {
        let n = 6 + seed as usize % 3;
        let t = random_rooted(n, 2, false, seed).map_err(e)?;
        let (c, order) = c_of_leaves(&t);
        let c_ok = |p: &[usize]| c.tuples().iter().all(|&[x, y, z]| c.holds([p[x], p[y], p[z]]));
        let m3 = m3_edges(&c);
        for p in brute_automorphisms(n, |p| c_ok(p) && (0..n).all(|x| (0..n).all(|y| order.less(x, y) == order.less(p[x], p[y])))) {
            ensure(preserves(&m3, &p), || format!("(C,<) automorphism {p:?} breaks M3"))?;
            autos += 1;
        }
        let m4 = m4_edges(&c);
        for p in brute_automorphisms(n, c_ok) {
            ensure(preserves(&m4, &p), || format!("C automorphism {p:?} breaks M4"))?;
            autos += 1;
        }
        let u = random_unrooted(8, 3, true, seed).map_err(e)?;
        let d = d_of_leaves(&u);
        let m6 = derive_edges(Family::M6, Carrier::Unrooted(&u)).map_err(e)?;
        let tuples = d.tuples();
        for p in brute_automorphisms(8, |p| tuples.iter().all(|&[x, y, z, w]| d.holds([p[x], p[y], p[z], p[w]]))) {
            ensure(preserves(&m6, &p), || format!("D automorphism {p:?} breaks M6"))?;
            autos += 1;
        }
    }
    Ok(format!("{autos} carrier automorphisms (n <= 8) all preserve the derived edges"))
}

fn c14_census() -> Outcome {
    timed(LIMIT_CENSUS, || {
        let entries = census_orbit_unions(7, 3).map_err(e)?;
        let fano = fano_plane().map_err(e)?;
        let m = example52().map_err(e)?;
        let wanted = [
            ("complete", KHypergraph::complete(7, 3).map_err(e)?, true, true),
            ("null", KHypergraph::empty(7, 3).map_err(e)?, true, true),
            ("Fano", fano.clone(), true, true),
            ("Fano complement", complement(&fano), true, true),
            ("M", m.clone(), true, false),
            ("M complement", complement(&m), true, false),
        ];
        for (name, h, sh, ho) in &wanted {
            let key = canonical_form(h).0;
            let entry = entries
                .iter()
                .find(|en| canonical_form(&en.hypergraph().unwrap()).0 == key)
                .ok_or_else(|| format!("{name} missing"))?;
            ensure(entry.verified && entry.set_homogeneous == *sh && entry.homogeneous == *ho, || format!("{name}: {entry:?}"))?;
        }
        let m_entry = entries.iter().find(|en| en.edges == 14).unwrap();
        ensure(m_entry.group == "agl1(7)", || format!("M from {}", m_entry.group))?;
        Ok(format!("{} entries incl. complete, null, Fano, its complement, M, its complement; flags re-verified", entries.len()))
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        ("table regeneration", c1_tables),
        ("cover solving", c2_solve),
        ("oracle equivalence", c3_oracle),
        ("AGL1(7) example", c4_example52),
        ("Fano plane", c5_fano),
        ("M3 edge patterns", c6_m3_patterns),
        ("N3 two-graph", c7_n3_two_graph),
        ("key-lemma biconditional", c8_key_lemma),
        ("reconstruction soundness", c9_reconstruction),
        ("axiom suites", c10_axioms),
        ("tournament lemma", c11_tournament),
        ("edge intersections", c12_intersections),
        ("reduct-chain invariance", c13_reducts),
        ("census n=7", c14_census),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        let shortfall = KNOWN_SHORTFALLS.iter().find(|(k, _)| *k == id);
        match (f(), shortfall) {
            (Ok(msg), None) => println!("criterion {id:>2} PASS {name}: {msg}"),
            (Ok(msg), Some(_)) => {
                println!("criterion {id:>2} PASS {name}: {msg}");
                unexpected.push(format!("{id} passes but is listed as a shortfall"));
            }
            (Err(why), Some((_, reason))) => println!("criterion {id:>2} FAIL {name}: {why} ({reason})"),
            (Err(why), None) => {
                println!("criterion {id:>2} FAIL {name}: {why}");
                unexpected.push(format!("{id}: {why}"));
            }
        }
    }
    assert!(unexpected.is_empty(), "{unexpected:?}");
}

/// The full arc list of criterion 11, asserted directly. Fails; see `KNOWN_SHORTFALLS`.
#[test]
#[ignore = "fails: the unsat trace stops after 4->5 and 5->2"]
fn tournament_trace_has_every_listed_arc() {
    c11_tournament().unwrap();
}
