//! Realization tables for ordered k-hypergraphs: which labels `S(a,b)` and
//! `T(m)` a condition `P^i_J` forces, and the exhaustive cover search over
//! assignments of one condition per edge count.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A formula on an increasing `(k+1)`-tuple.
/// `S(a,b)`: omitting `x_a` gives an edge and omitting `x_b` a non-edge.
/// `T(m)`: exactly one of the sets omitting `x_m`, `x_{m+1}` is an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    S(usize, usize),
    T(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::S(a, b) if a < 10 && b < 10 => write!(f, "S{a}{b}"),
            Label::S(a, b) => write!(f, "S{a},{b}"),
            Label::T(m) => write!(f, "T{m}"),
        }
    }
}

impl Label {
    pub fn is_valid(self, k: usize) -> bool {
        match self {
            Label::S(a, b) => (1..=k + 1).contains(&a) && (1..=k + 1).contains(&b) && a.abs_diff(b) >= 2,
            Label::T(m) => (1..=k).contains(&m),
        }
    }

    /// Image under the order reversal `m ↦ k+2−m`.
    pub fn reversed(self, k: usize) -> Label {
        match self {
            Label::S(a, b) => Label::S(k + 2 - a, k + 2 - b),
            Label::T(m) => Label::T(k + 1 - m),
        }
    }
}

/// Columns in table order: `T1..Tk`, then `S(a,b), S(b,a)` for `a<b` lexicographically.
pub fn labels(k: usize) -> Vec<Label> {
    let mut out: Vec<Label> = (1..=k).map(Label::T).collect();
    out.extend(s_labels(k));
    out
}

/// The `S` labels in table order.
pub fn s_labels(k: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for a in 1..=k + 1 {
        for b in a + 2..=k + 1 {
            out.push(Label::S(a, b));
            out.push(Label::S(b, a));
        }
    }
    out
}

/// The index sets `J` with `|J| = k+1−i`, lexicographically.
pub fn index_sets(k: usize, i: usize) -> Vec<Vec<usize>> {
    (1..=k + 1).combinations(k + 1 - i).collect()
}

fn check_row(i: usize, j: &[usize], k: usize) -> Result<()> {
    if !(1..=k).contains(&i) {
        return Err(Error::InvalidInput(format!("edge count {i} outside 1..={k}")));
    }
    if j.len() != k + 1 - i {
        return Err(Error::InvalidInput(format!("|J| = {} but k+1-i = {}", j.len(), k + 1 - i)));
    }
    if j.iter().any(|&x| !(1..=k + 1).contains(&x)) || j.iter().tuple_windows().any(|(a, b)| a >= b) {
        return Err(Error::InvalidInput(format!("J = {j:?} is not an increasing subset of 1..={}", k + 1)));
    }
    Ok(())
}

/// Labels forced by `P^i_J`.
pub fn realized_labels(i: usize, j: &[usize], k: usize) -> Result<BTreeSet<Label>> {
    check_row(i, j, k)?;
    let inj = |x: usize| j.contains(&x);
    let mut out = BTreeSet::new();
    for m in 1..=k {
        if inj(m) != inj(m + 1) {
            out.insert(Label::T(m));
        }
    }
    for a in 1..=k + 1 {
        for b in 1..=k + 1 {
            if !inj(a) && inj(b) && a.abs_diff(b) >= 2 {
                out.insert(Label::S(a, b));
            }
        }
    }
    Ok(out)
}

/// One row `P^i_J` of a realization table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub i: usize,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub realized: Vec<Label>,
}

impl TableRow {
    pub fn name(&self) -> String {
        format!("P{}_{}", self.i, self.j.iter().map(|x| x.to_string()).collect::<String>())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationTable {
    pub k: usize,
    pub columns: Vec<Label>,
    pub rows: Vec<TableRow>,
}

/// All rows `(i,J)` sorted by `i` then `J`.
pub fn realization_table(k: usize) -> Result<RealizationTable> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("arity {k} is too small")));
    }
    let mut rows = Vec::new();
    for i in 1..=k {
        for j in index_sets(k, i) {
            let realized = realized_labels(i, &j, k)?.into_iter().collect();
            rows.push(TableRow { i, j, realized });
        }
    }
    Ok(RealizationTable { k, columns: labels(k), rows })
}

impl RealizationTable {
    /// CSV with `0` marking a realized label. For `k = 3` only the `S`
    /// columns are written, matching the published layout.
    pub fn to_csv(&self) -> String {
        let cols: Vec<Label> = if self.k == 3 {
            self.columns.iter().copied().filter(|l| matches!(l, Label::S(..))).collect()
        } else {
            self.columns.clone()
        };
        let mut out = String::from("row");
        for c in &cols {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.name());
            for c in &cols {
                out.push(',');
                if r.realized.contains(c) {
                    out.push('0');
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Parses a table CSV into `(row name, marked column labels)` pairs.
pub fn parse_table_csv(text: &str) -> Result<Vec<(String, BTreeSet<String>)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty table".into()))?
        .split(',')
        .collect();
    let mut out = Vec::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != header.len() {
            return Err(Error::InvalidInput(format!("row `{line}` has {} cells", cells.len())));
        }
        let marked = cells
            .iter()
            .zip(&header)
            .skip(1)
            .filter(|(c, _)| c.trim() == "0")
            .map(|(_, h)| h.to_string())
            .collect();
        out.push((cells[0].trim().to_string(), marked));
    }
    Ok(out)
}

/// Cells where `table` and a fixture CSV differ, as `row:column` (or a row
/// name present on one side only). Row order is ignored.
pub fn table_differences(table: &RealizationTable, fixture_csv: &str) -> Result<Vec<String>> {
    let ours: std::collections::BTreeMap<String, BTreeSet<String>> = parse_table_csv(&table.to_csv())?.into_iter().collect();
    let theirs: std::collections::BTreeMap<String, BTreeSet<String>> = parse_table_csv(fixture_csv)?.into_iter().collect();
    let mut out = Vec::new();
    for name in ours.keys().chain(theirs.keys()).collect::<BTreeSet<_>>() {
        match (ours.get(name), theirs.get(name)) {
            (Some(a), Some(b)) => out.extend(a.symmetric_difference(b).map(|c| format!("{name}:{c}"))),
            _ => out.push(name.clone()),
        }
    }
    Ok(out)
}

/// For each edge count `i = 1..k`, either an index set `J` or `None` for
/// the condition that no `(k+1)`-set carries `i` edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseAssignment {
    pub choices: Vec<Option<Vec<usize>>>,
}

impl CaseAssignment {
    pub fn covered(&self, k: usize) -> Result<BTreeSet<Label>> {
        let mut out = BTreeSet::new();
        for (idx, c) in self.choices.iter().enumerate() {
            if let Some(j) = c {
                out.extend(realized_labels(idx + 1, j, k)?);
            }
        }
        Ok(out)
    }

    /// Image under the order reversal.
    pub fn reversed(&self, k: usize) -> CaseAssignment {
        CaseAssignment {
            choices: self
                .choices
                .iter()
                .map(|c| c.as_ref().map(|j| j.iter().rev().map(|&x| k + 2 - x).collect()))
                .collect(),
        }
    }
}

impl fmt::Display for CaseAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .choices
            .iter()
            .enumerate()
            .map(|(idx, c)| match c {
                Some(j) => format!("P{}_{}", idx + 1, j.iter().map(|x| x.to_string()).collect::<String>()),
                None => format!("P{}_*", idx + 1),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Every assignment whose realized labels cover `required`, sorted by the
/// choice for `i = 1, 2, ...` (index sets lexicographically, `*` last).
pub fn solve_cover(k: usize, required: &BTreeSet<Label>) -> Result<Vec<CaseAssignment>> {
    if let Some(bad) = required.iter().find(|l| !l.is_valid(k)) {
        return Err(Error::InvalidInput(format!("label {bad} is not valid for k = {k}")));
    }
    let options: Vec<Vec<(Option<Vec<usize>>, BTreeSet<Label>)>> = (1..=k)
        .map(|i| {
            let mut opts: Vec<(Option<Vec<usize>>, BTreeSet<Label>)> = index_sets(k, i)
                .into_iter()
                .map(|j| {
                    let r = realized_labels(i, &j, k).expect("valid row");
                    (Some(j), r)
                })
                .collect();
            opts.push((None, BTreeSet::new()));
            opts
        })
        .collect();
    let mut out = Vec::new();
    for combo in options.iter().map(|o| o.iter()).multi_cartesian_product() {
        let covered: BTreeSet<Label> = combo.iter().flat_map(|(_, r)| r.iter().copied()).collect();
        if required.is_subset(&covered) {
            out.push(CaseAssignment { choices: combo.iter().map(|(j, _)| j.clone()).collect() });
        }
    }
    Ok(out)
}
