//! Command-line front end. Every run produces a [`Report`]; the binary
//! prints it, writes it to `--out` when given, and exits 0 when no check
//! failed, 1 on a failed check and 2 on a usage error.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::casesolver::{labels, realization_table, s_labels, solve_cover, table_differences, Label};
use crate::census::{census_orbit_unions, census_table, example52, fano_plane};
use crate::edges::{derive_edges, edge_distribution, Carrier, Family, HypergraphDoc, KHypergraph};
use crate::error::{Error, Result};
use crate::groups::{named_group, orbits_on_subsets};
use crate::homtest::{
    check_derivation, edge_intersection_violations, homogeneity_report, homogeneity_report_for_group,
    hypergraph_isomorphism, key_lemma_trial, parse_derivation, tournament_forcing_search, TournamentOutcome,
};
use crate::reconstruct::{
    closed_m3_ambient, recover_c, recover_d_n4, recover_order_m3, recover_r_n3, sample_ambient_core, validate,
    AmbientCore,
};
use crate::relstruct::{check_c_axioms, check_d_axioms, CAxiom, DAxiom};
use crate::subset::mask_of;
use crate::treelike::{build_circle_config, c_of_leaves, d_of_leaves, random_rooted, random_unrooted};

pub const TABLE1_CSV: &str = include_str!("../fixtures/table1.csv");
pub const TABLE2_CSV: &str = include_str!("../fixtures/table2.csv");
pub const DERIVATION_TXT: &str = include_str!("../fixtures/tournament_derivation.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "sethom", version, about = "Finite checks on set-homogeneous hypergraph fragments")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the artifact here as well as to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Number of points.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regenerate a realization table and compare it with the fixture.
    Tables {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Assignments covering every S label (and every T label for k ≥ 4).
    Solve {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// A random carrier.
    Fragment(FamilyArgs),
    /// The family hypergraph on a random carrier.
    Edges(FamilyArgs),
    /// Recover carrier relations from edges on an ambient/core pair.
    Reconstruct {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 16)]
        ambient: usize,
        #[arg(long, default_value_t = 6)]
        core: usize,
        /// For M3, build the ambient by witness closure of the core tree.
        #[arg(long)]
        closed: bool,
    },
    /// Homogeneity report for a hypergraph file or a named structure.
    Homreport {
        /// JSON file with `n`, `k`, `edges`.
        #[arg(long, conflicts_with = "named")]
        input: Option<PathBuf>,
        /// fano, example52, or complement-of either.
        #[arg(long)]
        named: Option<String>,
        /// Test against this group instead of the full automorphism group.
        #[arg(long)]
        group: Option<String>,
    },
    /// Hypergraph isomorphism versus carrier isomorphism on sampled cores.
    Keylemma {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// The forcing search with trace, and the replay of the written derivation.
    Tournament {
        /// Derivation file; the shipped one by default.
        #[arg(long)]
        derivation: Option<PathBuf>,
    },
    /// Orbit unions of minimal 2-transitive groups.
    Census {
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Axiom checks on a random carrier.
    Axioms(FamilyArgs),
    /// The 14-edge hypergraph from the AGL1(7) orbit of 013.
    Example52,
    /// The Fano plane.
    Fano,
}

/// Outcome of one run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    /// One entry per failed check: `{"invariant": .., "witness": ..}`.
    pub failures: Vec<Value>,
    pub result: Value,
    #[serde(skip)]
    pub text: Option<String>,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl Report {
    fn new(command: &str, seed: u64, result: Value) -> Self {
        Report { command: command.into(), seed, passed: true, failures: Vec::new(), result, text: None, csv: None }
    }

    fn check(&mut self, ok: bool, invariant: &str, witness: Value) {
        if !ok {
            self.passed = false;
            self.failures.push(json!({ "invariant": invariant, "witness": witness }));
        }
    }

    /// The artifact in the requested format.
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.csv.clone().ok_or_else(|| Error::InvalidInput(format!("`{}` has no CSV form", self.command))),
            Format::Text => Ok(match &self.text {
                Some(t) => t.clone(),
                None => serde_json::to_string_pretty(&self.result)? + "\n",
            }),
        }
    }
}

/// Format used when none is given.
pub fn default_format(command: &Command) -> Format {
    match command {
        Command::Tables { .. } => Format::Csv,
        _ => Format::Json,
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

/// Runs one subcommand. Errors are usage or input errors.
pub fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.seed;
    match &cli.command {
        Command::Tables { k } => tables(*k, seed),
        Command::Solve { k } => solve(*k, seed),
        Command::Fragment(a) => fragment(a, seed),
        Command::Edges(a) => edges(a, seed),
        Command::Reconstruct { family, ambient, core, closed } => reconstruct(*family, *ambient, *core, *closed, seed),
        Command::Homreport { input, named, group } => homreport(input.as_ref(), named.as_deref(), group.as_deref(), seed),
        Command::Keylemma { family, sizes, trials } => {
            let r = key_lemma_trial(*family, sizes, *trials, seed)?;
            let mut rep = Report::new("keylemma", seed, to_value(&r)?);
            rep.check(r.violations.is_empty(), "hypergraph isomorphism iff carrier isomorphism", to_value(&r.violations)?);
            if *family == Family::N4 && sizes.contains(&6) {
                rep.check(!r.counterexamples.is_empty(), "size-6 counterexample exhibited", Value::Null);
            }
            Ok(rep)
        }
        Command::Tournament { derivation } => tournament(derivation.as_ref(), seed),
        Command::Census { n, k } => {
            let entries = census_orbit_unions(*n, *k)?;
            let mut rep = Report::new("census", seed, to_value(&entries)?);
            let bad: Vec<usize> = entries.iter().enumerate().filter(|(_, e)| !e.verified).map(|(i, _)| i).collect();
            rep.check(bad.is_empty(), "flags confirmed by brute force", to_value(&bad)?);
            rep.text = Some(census_table(&entries));
            rep.csv = Some(census_table(&entries).lines().map(|l| l.split_whitespace().collect::<Vec<_>>().join(",") + "\n").collect());
            Ok(rep)
        }
        Command::Axioms(a) => axioms(a, seed),
        Command::Example52 => example52_report(seed),
        Command::Fano => fano_report(seed),
    }
}

fn tables(k: usize, seed: u64) -> Result<Report> {
    let t = realization_table(k)?;
    let mut rep = Report::new("tables", seed, to_value(&t)?);
    let fixture = match k {
        3 => Some(TABLE1_CSV),
        4 => Some(TABLE2_CSV),
        _ => None,
    };
    if let Some(f) = fixture {
        let diff = table_differences(&t, f)?;
        rep.check(diff.is_empty(), "table matches fixture", to_value(&diff)?);
    }
    rep.csv = Some(t.to_csv());
    rep.text = rep.csv.clone();
    Ok(rep)
}

fn solve(k: usize, seed: u64) -> Result<Report> {
    let required: BTreeSet<Label> = if k == 3 { s_labels(k).into_iter().collect() } else { labels(k).into_iter().collect() };
    let sols = solve_cover(k, &required)?;
    let mut rep = Report::new("solve", seed, to_value(&sols)?);
    match k {
        3 => rep.check(sols.len() == 2, "exactly two covering assignments", json!(sols.len())),
        4 => rep.check(sols.is_empty(), "no covering assignment", json!(sols.len())),
        _ => {}
    }
    rep.text = Some(sols.iter().map(|s| format!("{s}\n")).collect());
    Ok(rep)
}

fn fragment_value(family: Family, n: usize, seed: u64) -> Result<(Value, KHypergraph)> {
    Ok(match family {
        Family::M3 | Family::M4 => {
            let t = random_rooted(n, 2, false, seed)?;
            let h = derive_edges(family, Carrier::Rooted(&t))?;
            (json!({ "tree": t.to_text() }), h)
        }
        Family::N3 => {
            let z = build_circle_config(n, 8 * n.max(1) as i64, seed)?;
            let h = derive_edges(family, Carrier::Circle(&z))?;
            (to_value(&z.to_doc())?, h)
        }
        Family::N4 | Family::M6 => {
            let t = random_unrooted(n, if family == Family::N4 { 4 } else { 3 }, family == Family::M6, seed)?;
            let h = derive_edges(family, Carrier::Unrooted(&t))?;
            (to_value(&t.to_doc())?, h)
        }
    })
}

fn fragment(a: &FamilyArgs, seed: u64) -> Result<Report> {
    let (v, _) = fragment_value(a.family, a.n, seed)?;
    Ok(Report::new("fragment", seed, json!({ "family": a.family, "n": a.n, "carrier": v })))
}

fn edges(a: &FamilyArgs, seed: u64) -> Result<Report> {
    let (carrier, h) = fragment_value(a.family, a.n, seed)?;
    let dist = edge_distribution(&h, h.k() + 1)?;
    let violations = edge_intersection_violations(&h);
    let mut rep = Report::new(
        "edges",
        seed,
        json!({ "family": a.family, "carrier": carrier, "hypergraph": h.to_doc(), "distribution": dist }),
    );
    rep.check(violations.is_empty(), "edges of a (k+1)-set with i edges meet in k+1-i points", to_value(&violations)?);
    Ok(rep)
}

fn reconstruct(family: Family, ambient: usize, core: usize, closed: bool, seed: u64) -> Result<Report> {
    let ac: AmbientCore = if closed && family == Family::M3 {
        closed_m3_ambient(core, ambient, seed)?
    } else {
        sample_ambient_core(family, ambient, core, seed)?
    };
    let mut rels = Vec::new();
    match family {
        Family::M3 => {
            let o = recover_order_m3(&ac)?;
            let c = recover_c(family, &ac, Some(&o))?;
            rels.push(("order", o));
            rels.push(("c", c));
        }
        Family::M4 => rels.push(("c", recover_c(family, &ac, None)?)),
        Family::N3 => rels.push(("r", recover_r_n3(&ac)?)),
        Family::N4 => rels.push(("d", recover_d_n4(&ac)?)),
        Family::M6 => return Err(Error::InvalidInput("no recovery formula for M6".into())),
    }
    let mut out = serde_json::Map::new();
    let mut failures = Vec::new();
    for (name, rel) in &rels {
        let v = validate(&ac, rel)?;
        if v.disagree > 0 {
            failures.push(name.to_string());
        }
        out.insert(
            name.to_string(),
            json!({ "relation": rel.to_doc(), "validation": v, "coverage": v.coverage() }),
        );
    }
    out.insert("ambient".into(), json!(ac.ambient.n()));
    out.insert("core".into(), json!(ac.core));
    let mut rep = Report::new("reconstruct", seed, Value::Object(out));
    rep.check(failures.is_empty(), "recovered values agree with ground truth", json!(failures));
    Ok(rep)
}

fn named_hypergraph(name: &str) -> Result<KHypergraph> {
    let (base, comp) = match name.strip_prefix("complement-of-") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let h = match base {
        "fano" => fano_plane()?,
        "example52" => example52()?,
        _ => return Err(Error::InvalidInput(format!("unknown structure `{name}`"))),
    };
    Ok(if comp { crate::edges::complement(&h) } else { h })
}

fn homreport(input: Option<&PathBuf>, named: Option<&str>, group: Option<&str>, seed: u64) -> Result<Report> {
    let h = match (input, named) {
        (Some(p), _) => {
            let doc: HypergraphDoc = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            KHypergraph::from_doc(&doc)?
        }
        (None, Some(n)) => named_hypergraph(n)?,
        (None, None) => return Err(Error::InvalidInput("give --input or --named".into())),
    };
    let g = group.map(named_group).transpose()?;
    let r = match &g {
        Some(g) => homogeneity_report_for_group(&h, g)?,
        None => homogeneity_report(&h)?,
    };
    let mut rep = Report::new("homreport", seed, to_value(&r)?);
    if let Some(c) = &r.certificate {
        rep.check(c.verify(&h, g.as_ref()), "certificate re-verifies", to_value(c)?);
    }
    Ok(rep)
}

fn tournament(derivation: Option<&PathBuf>, seed: u64) -> Result<Report> {
    let outcome = tournament_forcing_search();
    let text = match derivation {
        Some(p) => std::fs::read_to_string(p)?,
        None => DERIVATION_TXT.to_string(),
    };
    let steps = parse_derivation(&text)?;
    let replay = check_derivation(&steps);
    let forced: Vec<String> = outcome.forced_arcs().iter().map(|a| a.to_string()).collect();
    let mut rep = Report::new(
        "tournament",
        seed,
        json!({ "unsat": outcome.is_unsat(), "forced": forced, "trace": outcome.trace_text().lines().collect::<Vec<_>>(), "replay": replay }),
    );
    let model = match &outcome {
        TournamentOutcome::Model { arcs, .. } => to_value(arcs)?,
        TournamentOutcome::Unsat { .. } => Value::Null,
    };
    rep.check(outcome.is_unsat(), "no tournament meets the constraints", model);
    rep.check(replay.valid, "every derivation step is justified", json!(replay.first_invalid));
    rep.text = Some(outcome.trace_text());
    Ok(rep)
}

fn axioms(a: &FamilyArgs, seed: u64) -> Result<Report> {
    let mut rep;
    match a.family {
        Family::M3 | Family::M4 => {
            let t = random_rooted(a.n, 2, false, seed)?;
            let (c, order) = c_of_leaves(&t);
            let reports = check_c_axioms(&c, &CAxiom::ALL, Some(&order))?;
            rep = Report::new("axioms", seed, json!({ "tree": t.to_text(), "axioms": reports }));
            for r in reports.iter().filter(|r| r.coverage.is_none()) {
                rep.check(r.passed(), &r.axiom, to_value(&r.witness)?);
            }
        }
        Family::N4 | Family::M6 => {
            let t = random_unrooted(a.n, if a.family == Family::N4 { 4 } else { 3 }, a.family == Family::M6, seed)?;
            let reports = check_d_axioms(&d_of_leaves(&t), &DAxiom::ALL);
            rep = Report::new("axioms", seed, json!({ "tree": t.to_doc(), "axioms": reports }));
            for r in reports.iter().filter(|r| r.coverage.is_none()) {
                rep.check(r.passed(), &r.axiom, to_value(&r.witness)?);
            }
        }
        Family::N3 => {
            let z = build_circle_config(a.n, 8 * a.n.max(1) as i64, seed)?;
            let local = z.tournament().is_local_order();
            rep = Report::new("axioms", seed, json!({ "circle": z.to_doc(), "local_order": local }));
            rep.check(local, "circle tournament is a local order", Value::Null);
        }
    }
    Ok(rep)
}

fn example52_report(seed: u64) -> Result<Report> {
    let g = named_group("agl1(7)")?;
    let mut sizes: Vec<usize> = orbits_on_subsets(&g, 3)?.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let h = example52()?;
    let r = homogeneity_report(&h)?;
    let quads = [[2, 4, 5, 6], [3, 4, 5, 6]];
    let counts: Vec<usize> = quads.iter().map(|q| h.edges_within(mask_of(q))).collect();
    let iso = hypergraph_isomorphism(&h.induced(&quads[0]), &h.induced(&quads[1])).is_some();
    let cert_ok = r.certificate.as_ref().is_some_and(|c| c.verify(&h, None));
    let mut rep = Report::new(
        "example52",
        seed,
        json!({
            "group_order": g.order(),
            "orbit_sizes": sizes,
            "edges": h.sorted_edges(),
            "set_homogeneous": r.set_homogeneous,
            "homogeneous": r.homogeneous,
            "aut_order": r.group_order,
            "certificate": r.certificate,
            "quad_edges": { "2456": counts[0], "3456": counts[1] },
            "quads_isomorphic": iso,
        }),
    );
    rep.check(g.order() == 42, "group order 42", json!(g.order()));
    rep.check(sizes == [14, 21], "3-subset orbit sizes 14 and 21", json!(sizes));
    rep.check(r.set_homogeneous && !r.homogeneous, "set-homogeneous and not homogeneous", Value::Null);
    rep.check(cert_ok, "certificate re-verifies", to_value(&r.certificate)?);
    rep.check(counts == [1, 2] && !iso, "4-sets 2456 and 3456 differ", json!(counts));
    rep.text = Some(format!(
        "|G| = {}\norbit sizes {}/{}\nset-homogeneous {}\nhomogeneous {}\n",
        g.order(),
        sizes[0],
        sizes[1],
        r.set_homogeneous,
        r.homogeneous
    ));
    Ok(rep)
}

fn fano_report(seed: u64) -> Result<Report> {
    let h = fano_plane()?;
    let r = homogeneity_report(&h)?;
    let mut rep = Report::new("fano", seed, to_value(&r)?);
    rep.check(r.group_order == 168, "automorphism group order 168", json!(r.group_order));
    rep.check(r.homogeneous, "homogeneous", to_value(&r.certificate)?);
    Ok(rep)
}
