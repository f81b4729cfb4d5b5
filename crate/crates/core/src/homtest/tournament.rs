//! Forcing search for tournaments on at most seven vertices in which every
//! arc lies on a 3-cycle, starting from a source vertex over a 3-cycle.
//!
//! Rules: (W1) each arc `x→y` needs some `z` with `y→z→x`; (W2) once some
//! arc lies on two 3-cycles, every arc needs two. The optional constraint
//! forbids a 3-cycle inside any in-neighbourhood `x⁻`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex bound of the search.
pub const MAX_TOURNAMENT_VERTICES: usize = 7;

const N: usize = MAX_TOURNAMENT_VERTICES;

/// Initial arcs, 1-based.
pub const START_ARCS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 2)];

/// Arcs whose witnesses are sought first, 1-based.
const AGENDA: [(usize, usize); 3] = [(1, 3), (1, 2), (1, 4)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc(pub usize, pub usize);

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.0, self.1)
    }
}

/// One line of the search log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TraceStep {
    NewVertex { vertex: usize, arc: Arc },
    Witness { vertex: usize, arc: Arc },
    Orient { arc: Arc },
    Force { arc: Arc, cycle: [usize; 3], inside: usize },
    DoubleWitness { arc: Arc },
    Contradiction { reason: String },
    Backtrack { depth: usize },
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::NewVertex { vertex, arc } => {
                write!(f, "branch new vertex {vertex} witnessing {arc}: {}->{vertex}->{}", arc.1, arc.0)
            }
            TraceStep::Witness { vertex, arc } => {
                write!(f, "branch existing vertex {vertex} witnessing {arc}: {}->{vertex}->{}", arc.1, arc.0)
            }
            TraceStep::Orient { arc } => write!(f, "branch orient {arc}"),
            TraceStep::Force { arc, cycle, inside } => write!(
                f,
                "force {arc} (else 3-cycle {}{}{} inside {inside}-)",
                cycle[0], cycle[1], cycle[2]
            ),
            TraceStep::DoubleWitness { arc } => write!(f, "rule W2 active: {arc} lies on two 3-cycles"),
            TraceStep::Contradiction { reason } => write!(f, "contradiction: {reason}"),
            TraceStep::Backtrack { depth } => write!(f, "backtrack to depth {depth}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum TournamentOutcome {
    Unsat { trace: Vec<TraceStep> },
    Model { vertices: usize, arcs: Vec<Arc>, trace: Vec<TraceStep> },
}

impl TournamentOutcome {
    pub fn is_unsat(&self) -> bool {
        matches!(self, TournamentOutcome::Unsat { .. })
    }

    pub fn trace(&self) -> &[TraceStep] {
        match self {
            TournamentOutcome::Unsat { trace } | TournamentOutcome::Model { trace, .. } => trace,
        }
    }

    /// Every arc forced by propagation anywhere in the search.
    pub fn forced_arcs(&self) -> Vec<Arc> {
        self.trace()
            .iter()
            .filter_map(|s| match s {
                TraceStep::Force { arc, .. } => Some(*arc),
                _ => None,
            })
            .collect()
    }

    /// The log, one step per line.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for s in self.trace() {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        match self {
            TournamentOutcome::Unsat { .. } => out.push_str("result unsat\n"),
            TournamentOutcome::Model { vertices, .. } => out.push_str(&format!("result model on {vertices} vertices\n")),
        }
        out
    }
}

#[derive(Clone)]
struct State {
    m: usize,
    /// `beats[x][y] = Some(true)` iff `x→y`; 0-based.
    beats: [[Option<bool>; N]; N],
    double: bool,
}

impl State {
    fn start() -> State {
        let mut s = State { m: 4, beats: [[None; N]; N], double: false };
        for (x, y) in START_ARCS {
            s.set(x - 1, y - 1);
        }
        s
    }

    fn set(&mut self, x: usize, y: usize) {
        self.beats[x][y] = Some(true);
        self.beats[y][x] = Some(false);
    }

    fn arc(&self, x: usize, y: usize) -> bool {
        self.beats[x][y] == Some(true)
    }

    fn cycle(&self, a: usize, b: usize, c: usize) -> bool {
        (self.arc(a, b) && self.arc(b, c) && self.arc(c, a)) || (self.arc(a, c) && self.arc(c, b) && self.arc(b, a))
    }

    fn cycles_on(&self, x: usize, y: usize) -> usize {
        (0..self.m).filter(|&z| self.arc(y, z) && self.arc(z, x)).count()
    }

    /// A 3-cycle lying inside some `x⁻`.
    fn cycle_in_inset(&self) -> Option<(usize, [usize; 3])> {
        for x in 0..self.m {
            let ins: Vec<usize> = (0..self.m).filter(|&v| self.arc(v, x)).collect();
            for (i, &a) in ins.iter().enumerate() {
                for (j, &b) in ins.iter().enumerate().skip(i + 1) {
                    for &c in &ins[j + 1..] {
                        if self.cycle(a, b, c) {
                            return Some((x, [a, b, c]));
                        }
                    }
                }
            }
        }
        None
    }
}

fn one_based(t: [usize; 3]) -> [usize; 3] {
    let mut s = [t[0] + 1, t[1] + 1, t[2] + 1];
    s.sort_unstable();
    s
}

/// Applies the in-neighbourhood rule to a fixed point: if two vertices of a
/// 3-cycle lie in `x⁻`, then `x` beats the third.
fn propagate(s: &mut State, trace: &mut Vec<TraceStep>) -> std::result::Result<(), String> {
    loop {
        if let Some((x, t)) = s.cycle_in_inset() {
            let c = one_based(t);
            return Err(format!("3-cycle {}{}{} inside {}-", c[0], c[1], c[2], x + 1));
        }
        let mut changed = false;
        for x in 0..s.m {
            for a in 0..s.m {
                for b in a + 1..s.m {
                    if !(s.arc(a, x) && s.arc(b, x)) {
                        continue;
                    }
                    for c in 0..s.m {
                        if c == x || c == a || c == b || !s.cycle(a, b, c) {
                            continue;
                        }
                        if s.beats[x][c].is_none() {
                            s.set(x, c);
                            trace.push(TraceStep::Force { arc: Arc(x + 1, c + 1), cycle: one_based([a, b, c]), inside: x + 1 });
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

struct Search {
    constrained: bool,
    trace: Vec<TraceStep>,
}

enum Found {
    Model(State),
    None,
}

impl Search {
    fn need(&self, s: &State) -> usize {
        if s.double {
            2
        } else {
            1
        }
    }

    fn pending(&self, s: &State) -> Option<(usize, usize)> {
        let need = self.need(s);
        let agenda = AGENDA.iter().map(|&(x, y)| (x - 1, y - 1));
        let rest = (0..s.m).flat_map(|x| (0..s.m).map(move |y| (x, y)));
        agenda.chain(rest).find(|&(x, y)| x < s.m && y < s.m && s.arc(x, y) && s.cycles_on(x, y) < need)
    }

    fn run(&mut self, mut s: State, depth: usize) -> Found {
        if self.constrained {
            if let Err(reason) = propagate(&mut s, &mut self.trace) {
                self.trace.push(TraceStep::Contradiction { reason });
                return Found::None;
            }
        }
        if !s.double {
            let doubled = (0..s.m).flat_map(|x| (0..s.m).map(move |y| (x, y))).find(|&(x, y)| s.arc(x, y) && s.cycles_on(x, y) >= 2);
            if let Some((x, y)) = doubled {
                s.double = true;
                self.trace.push(TraceStep::DoubleWitness { arc: Arc(x + 1, y + 1) });
            }
        }
        if let Some((x, y)) = self.pending(&s) {
            let mut branched = false;
            for z in 0..s.m {
                if z == x || z == y || (s.arc(y, z) && s.arc(z, x)) {
                    continue;
                }
                if s.beats[y][z] == Some(false) || s.beats[z][x] == Some(false) {
                    continue;
                }
                branched = true;
                let mut t = s.clone();
                t.set(y, z);
                t.set(z, x);
                self.trace.push(TraceStep::Witness { vertex: z + 1, arc: Arc(x + 1, y + 1) });
                if let Found::Model(m) = self.run(t, depth + 1) {
                    return Found::Model(m);
                }
                self.trace.push(TraceStep::Backtrack { depth });
            }
            if s.m < N {
                branched = true;
                let z = s.m;
                let mut t = s.clone();
                t.m += 1;
                t.set(y, z);
                t.set(z, x);
                self.trace.push(TraceStep::NewVertex { vertex: z + 1, arc: Arc(x + 1, y + 1) });
                if let Found::Model(m) = self.run(t, depth + 1) {
                    return Found::Model(m);
                }
                self.trace.push(TraceStep::Backtrack { depth });
            }
            if !branched {
                self.trace.push(TraceStep::Contradiction { reason: format!("no witness left for {}->{}", x + 1, y + 1) });
            }
            return Found::None;
        }
        let open = (0..s.m).flat_map(|x| (x + 1..s.m).map(move |y| (x, y))).find(|&(x, y)| s.beats[x][y].is_none());
        match open {
            None => Found::Model(s),
            Some((x, y)) => {
                for (a, b) in [(x, y), (y, x)] {
                    let mut t = s.clone();
                    t.set(a, b);
                    self.trace.push(TraceStep::Orient { arc: Arc(a + 1, b + 1) });
                    if let Found::Model(m) = self.run(t, depth + 1) {
                        return Found::Model(m);
                    }
                    self.trace.push(TraceStep::Backtrack { depth });
                }
                Found::None
            }
        }
    }
}

/// Exhaustive branch-and-propagate search; `constrained` imposes the
/// no-3-cycle-in-`x⁻` condition.
pub fn tournament_forcing_search_with(constrained: bool) -> TournamentOutcome {
    let mut search = Search { constrained, trace: Vec::new() };
    match search.run(State::start(), 0) {
        Found::None => TournamentOutcome::Unsat { trace: search.trace },
        Found::Model(s) => {
            let arcs = (0..s.m)
                .flat_map(|x| (0..s.m).map(move |y| (x, y)))
                .filter(|&(x, y)| s.arc(x, y))
                .map(|(x, y)| Arc(x + 1, y + 1))
                .collect();
            TournamentOutcome::Model { vertices: s.m, arcs, trace: search.trace }
        }
    }
}

/// The constrained search.
pub fn tournament_forcing_search() -> TournamentOutcome {
    tournament_forcing_search_with(true)
}

/// Whether a complete tournament, given by its arcs on `1..=n`, contains the
/// start configuration and satisfies W1, W2 and (optionally) the constraint.
pub fn is_model(n: usize, arcs: &[Arc], constrained: bool) -> bool {
    if !(4..=N).contains(&n) {
        return false;
    }
    let mut s = State { m: n, beats: [[None; N]; N], double: false };
    for a in arcs {
        if a.0 == 0 || a.1 == 0 || a.0 > n || a.1 > n || a.0 == a.1 || s.beats[a.0 - 1][a.1 - 1].is_some() {
            return false;
        }
        s.set(a.0 - 1, a.1 - 1);
    }
    satisfies(&s, constrained)
}

fn satisfies(s: &State, constrained: bool) -> bool {
    let n = s.m;
    let complete = (0..n).all(|x| (0..n).all(|y| x == y || s.beats[x][y].is_some()));
    if !complete || !START_ARCS.iter().all(|&(x, y)| s.arc(x - 1, y - 1)) {
        return false;
    }
    let counts: Vec<usize> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| s.arc(x, y))
        .map(|(x, y)| s.cycles_on(x, y))
        .collect();
    let need = if counts.iter().any(|&c| c >= 2) { 2 } else { 1 };
    counts.iter().all(|&c| c >= need) && (!constrained || s.cycle_in_inset().is_none())
}

/// Enumerates every tournament on `n` vertices extending the start
/// configuration and returns the first model.
pub fn brute_force_model(n: usize, constrained: bool) -> Option<Vec<Arc>> {
    if !(4..=N).contains(&n) {
        return None;
    }
    let start = State { m: n, ..State::start() };
    let open: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).filter(|&(x, y)| start.beats[x][y].is_none()).collect();
    for bits in 0u64..(1u64 << open.len()) {
        let mut s = start.clone();
        for (i, &(x, y)) in open.iter().enumerate() {
            if bits >> i & 1 == 1 {
                s.set(x, y);
            } else {
                s.set(y, x);
            }
        }
        if satisfies(&s, constrained) {
            return Some(
                (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| s.arc(x, y))
                    .map(|(x, y)| Arc(x + 1, y + 1))
                    .collect(),
            );
        }
    }
    None
}

/// One step of a hand derivation, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivationStep {
    /// A fresh vertex `z` with `y→z→x` for the arc `x→y`.
    Witness { arc: Arc, vertex: usize },
    /// An arc claimed forced: the reverse orientation puts a 3-cycle in some `x⁻`.
    Force(Arc),
    /// A 3-cycle is claimed inside `x⁻`.
    Contradiction(usize),
}

/// Outcome of replaying a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationCheck {
    pub steps: usize,
    /// Every step was justified by the arcs known at that point.
    pub valid: bool,
    /// First invalid step, if any.
    pub first_invalid: Option<usize>,
    /// First step after which the known arcs already contained a 3-cycle
    /// inside some in-neighbourhood.
    pub first_inconsistent: Option<usize>,
    pub forced: Vec<Arc>,
}

/// Parses lines `witness X>Y Z`, `force X>Y`, `contradiction X`; `#` starts
/// a comment.
pub fn parse_derivation(text: &str) -> Result<Vec<DerivationStep>> {
    let arc = |s: &str| -> Result<Arc> {
        let (a, b) = s.split_once('>').ok_or_else(|| Error::InvalidInput(format!("bad arc `{s}`")))?;
        let p = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad vertex `{t}`")));
        Ok(Arc(p(a)?, p(b)?))
    };
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let step = match parts.as_slice() {
            ["witness", a, z] => DerivationStep::Witness {
                arc: arc(a)?,
                vertex: z.parse().map_err(|_| Error::InvalidInput(format!("bad vertex `{z}`")))?,
            },
            ["force", a] => DerivationStep::Force(arc(a)?),
            ["contradiction", x] => {
                DerivationStep::Contradiction(x.parse().map_err(|_| Error::InvalidInput(format!("bad vertex `{x}`")))?)
            }
            _ => return Err(Error::InvalidInput(format!("unrecognized step `{line}`"))),
        };
        out.push(step);
    }
    Ok(out)
}

/// Replays `steps` from the start configuration, checking each local
/// justification and noting when the accumulated arcs first become
/// inconsistent.
pub fn check_derivation(steps: &[DerivationStep]) -> DerivationCheck {
    let mut s = State::start();
    let mut first_invalid = None;
    let mut first_inconsistent = None;
    let mut forced = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let ok = match step {
            DerivationStep::Witness { arc, vertex } => {
                let (x, y, z) = (arc.0 - 1, arc.1 - 1, vertex - 1);
                if z == s.m && z < N && s.arc(x, y) {
                    s.m += 1;
                    s.set(y, z);
                    s.set(z, x);
                    true
                } else {
                    false
                }
            }
            DerivationStep::Force(arc) => {
                let (a, b) = (arc.0 - 1, arc.1 - 1);
                if a >= s.m || b >= s.m || s.beats[a][b].is_some() {
                    false
                } else {
                    let mut rev = s.clone();
                    rev.set(b, a);
                    let justified = rev.cycle_in_inset().is_some();
                    s.set(a, b);
                    forced.push(*arc);
                    justified
                }
            }
            DerivationStep::Contradiction(x) => {
                let x = x - 1;
                let ins: Vec<usize> = (0..s.m).filter(|&v| s.arc(v, x)).collect();
                ins.iter().enumerate().any(|(i, &a)| {
                    ins.iter().enumerate().skip(i + 1).any(|(j, &b)| ins[j + 1..].iter().any(|&c| s.cycle(a, b, c)))
                })
            }
        };
        if !ok && first_invalid.is_none() {
            first_invalid = Some(i);
        }
        if first_inconsistent.is_none() && s.cycle_in_inset().is_some() {
            first_inconsistent = Some(i);
        }
    }
    DerivationCheck { steps: steps.len(), valid: first_invalid.is_none(), first_invalid, first_inconsistent, forced }
}
