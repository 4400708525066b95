//! Exhaustive Busy Beaver search, champion verification, non-halting
//! certificates and a small-machine logical depth estimator.
//!
//! The search walks the tree of partially defined machines: a machine is
//! run from a blank tape until it reaches an undefined entry, which is then
//! either made the halting entry (a leaf) or filled with every allowed
//! transition. The first transition moves right and new states are
//! introduced in order of first visit, so each behaviour is examined once up
//! to mirror image and state renaming.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::turing::{Execution, Move, Step, TapeState, Transition, TuringMachine};

mod cps;
mod far;

use cps::closed_position_set;
use far::finite_automaton_reduction;

/// Proof that a machine never halts from a blank tape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// The full configuration at `start + period` equals the one at `start`.
    Cycle { start: u64, period: u64 },
    /// The head broke a record at `start` and again at `start + period`,
    /// `shift` cells further, in the same state and over an identical
    /// stretch of tape; the segment then repeats forever.
    TranslatedCycle { start: u64, period: u64, shift: i64 },
    /// Every table entry is defined and none of them halts.
    NoHaltEntry,
    /// Every backward chain from a halting entry dies out within `depth`
    /// steps, and the run has already gone on longer than that.
    BackwardDeadEnd { depth: u64 },
    /// The reachable local views at this window radius are closed under the
    /// table and none of them halts.
    ClosedPositionSet { block: u64, radius: u64 },
    /// A regular language, read by a DFA of `dfa_states` states, holds every
    /// configuration that can reach a halt but not the start configuration.
    FiniteAutomaton { dfa_states: u64, from_right: bool },
}

/// Step cutoff that leaves nothing undecided for `states <= 3`.
pub fn default_cutoff(states: u8) -> u64 {
    match states {
        0 | 1 => 10,
        2 => 100,
        _ => 10_000,
    }
}

/// Depth of the backward search from halting entries.
pub const BACKWARD_DEPTH: u64 = 64;
const BACKWARD_NODE_BUDGET: usize = 200_000;

/// A local configuration reached by running backwards: known cells around
/// the head; unlisted cells are unconstrained.
#[derive(Clone)]
struct BackNode {
    state: u8,
    head: i64,
    cells: Vec<(i64, u8)>,
    depth: u64,
}

impl BackNode {
    fn cell(&self, x: i64) -> Option<u8> {
        self.cells.iter().find(|c| c.0 == x).map(|c| c.1)
    }

    fn set(&mut self, x: i64, v: u8) {
        match self.cells.iter_mut().find(|c| c.0 == x) {
            Some(c) => c.1 = v,
            None => self.cells.push((x, v)),
        }
    }
}

/// Tries to show that no configuration reaches one of the `halting`
/// entries after `depth` or more steps. `None` if some chain survives or
/// the search budget runs out.
fn backward_dead_end(
    table: &[Option<Transition>],
    halting: &[(u8, u8)],
    depth: u64,
) -> Option<Certificate> {
    let mut stack: Vec<BackNode> = halting
        .iter()
        .map(|&(state, symbol)| BackNode {
            state,
            head: 0,
            cells: vec![(0, symbol)],
            depth: 0,
        })
        .collect();
    let mut visited = 0usize;
    while let Some(node) = stack.pop() {
        visited += 1;
        if node.depth >= depth || visited > BACKWARD_NODE_BUDGET {
            return None;
        }
        for (i, tr) in table.iter().enumerate() {
            let Some(tr) = tr else { continue };
            if tr.next != Some(node.state) {
                continue;
            }
            // before this transition the head sat one cell against the move
            let prev_head = node.head - if tr.movement == Move::Right { 1 } else { -1 };
            if node.cell(prev_head).is_some_and(|v| v != tr.write) {
                continue;
            }
            let mut prev = node.clone();
            prev.state = (i / 2) as u8;
            prev.head = prev_head;
            prev.set(prev_head, (i % 2) as u8);
            prev.depth += 1;
            stack.push(prev);
        }
    }
    Some(Certificate::BackwardDeadEnd { depth })
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Snapshot {
    state: u8,
    head: i64,
    origin: i64,
    cells: Vec<u8>,
}

impl Snapshot {
    /// Blank-tape configuration with the written span trimmed of zeros.
    fn take(exec: &Execution) -> Self {
        let lo = exec.min_visited.min(exec.config.head);
        let hi = exec.max_visited.max(exec.config.head);
        let cells = exec.config.tape.segment(lo, hi);
        let first = cells.iter().position(|&c| c != 0);
        let (origin, cells) = match first {
            None => (0, Vec::new()),
            Some(f) => {
                let last = cells.iter().rposition(|&c| c != 0).unwrap();
                (lo + f as i64, cells[f..=last].to_vec())
            }
        };
        Snapshot {
            state: exec.config.state,
            head: exec.config.head,
            origin,
            cells,
        }
    }
}

struct Record {
    time: u64,
    head: i64,
    state: u8,
    tape: crate::turing::Tape,
}

/// Watches a blank-tape run for the two certificates.
struct Detector {
    checkpoint: Option<(u64, Snapshot)>,
    next_checkpoint: u64,
    heads: Vec<i64>,
    right: Vec<Record>,
    left: Vec<Record>,
    lo: i64,
    hi: i64,
}

impl Detector {
    fn new() -> Self {
        Detector {
            checkpoint: None,
            next_checkpoint: 1,
            heads: Vec::new(),
            right: Vec::new(),
            left: Vec::new(),
            lo: 0,
            hi: 0,
        }
    }

    /// Called before each step with the current configuration.
    fn observe(&mut self, exec: &Execution) -> Option<Certificate> {
        let t = exec.steps;
        let head = exec.config.head;
        self.heads.push(head);

        if let Some((start, snap)) = &self.checkpoint {
            if snap.state == exec.config.state && snap.head == head && *snap == Snapshot::take(exec)
            {
                return Some(Certificate::Cycle {
                    start: *start,
                    period: t - start,
                });
            }
        }
        if t + 1 >= self.next_checkpoint {
            self.checkpoint = Some((t, Snapshot::take(exec)));
            self.next_checkpoint *= 2;
        }

        let is_right = t == 0 || head > self.hi;
        let is_left = t == 0 || head < self.lo;
        self.hi = self.hi.max(head);
        self.lo = self.lo.min(head);
        if is_right {
            if let Some(c) = self.check_records(exec, true) {
                return Some(c);
            }
        }
        if is_left {
            if let Some(c) = self.check_records(exec, false) {
                return Some(c);
            }
        }
        None
    }

    fn check_records(&mut self, exec: &Execution, right: bool) -> Option<Certificate> {
        let t = exec.steps as usize;
        let head = exec.config.head;
        let state = exec.config.state;
        let records = if right { &self.right } else { &self.left };
        // extreme head position on the far side since each earlier record
        let mut far = head;
        let mut scanned = t;
        for rec in records.iter().rev() {
            while scanned > rec.time as usize {
                scanned -= 1;
                let h = self.heads[scanned];
                far = if right { far.min(h) } else { far.max(h) };
            }
            if rec.state != state {
                continue;
            }
            let shift = head - rec.head;
            let same = if right {
                (far..=rec.head).all(|x| rec.tape.get(x) == exec.config.tape.get(x + shift))
            } else {
                (rec.head..=far).all(|x| rec.tape.get(x) == exec.config.tape.get(x + shift))
            };
            if same && shift != 0 {
                return Some(Certificate::TranslatedCycle {
                    start: rec.time,
                    period: t as u64 - rec.time,
                    shift,
                });
            }
        }
        let rec = Record {
            time: t as u64,
            head,
            state,
            tape: exec.config.tape.clone(),
        };
        if right {
            self.right.push(rec);
        } else {
            self.left.push(rec);
        }
        None
    }
}

/// Result of running a (possibly partial) table from a blank tape.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Fate {
    Halted {
        steps: u64,
        ones: u64,
    },
    Undefined {
        state: u8,
        symbol: u8,
        steps: u64,
        ones: u64,
    },
    NonHalting(Certificate),
    Undecided,
}

fn trace(
    lookup: impl Fn(u8, u8) -> Option<Transition>,
    states: u8,
    window: u64,
    detect: bool,
) -> Fate {
    let mut exec = Execution::new(TapeState::blank());
    let mut detector = Detector::new();
    while exec.steps < window {
        if detect {
            if let Some(c) = detector.observe(&exec) {
                return Fate::NonHalting(c);
            }
        }
        match exec.step_with(&lookup) {
            Step::Continue => {}
            Step::Halted => {
                return Fate::Halted {
                    steps: exec.steps,
                    ones: exec.ones_visited(),
                }
            }
            Step::Undefined { state, symbol } => {
                return Fate::Undefined {
                    state,
                    symbol,
                    steps: exec.steps,
                    ones: exec.ones_visited(),
                }
            }
        }
    }
    if detect && window > BACKWARD_DEPTH {
        let mut table = Vec::with_capacity(2 * states as usize);
        let mut halting = Vec::new();
        for s in 0..states {
            for b in 0..2u8 {
                let tr = lookup(s, b);
                match tr {
                    Some(t) if t.next.is_some() => table.push(Some(t)),
                    _ => {
                        table.push(None);
                        halting.push((s, b));
                    }
                }
            }
        }
        if let Some(c) = backward_dead_end(&table, &halting, BACKWARD_DEPTH) {
            return Fate::NonHalting(c);
        }
        if let Some(c) = closed_position_set(&table) {
            return Fate::NonHalting(c);
        }
        if let Some(c) = finite_automaton_reduction(&table) {
            return Fate::NonHalting(c);
        }
    }
    Fate::Undecided
}

/// Searches for a non-halting certificate within `window` steps.
pub fn nonhalt_certificate(machine: &TuringMachine, window: u64) -> Option<Certificate> {
    match trace(
        |s, b| Some(machine.get(s, b)),
        machine.states(),
        window,
        true,
    ) {
        Fate::NonHalting(c) => Some(c),
        _ => None,
    }
}

/// `true` only when a sound certificate shows the machine never halts from
/// a blank tape; `false` means unknown.
pub fn nonhalt_detect(machine: &TuringMachine, window: u64) -> bool {
    nonhalt_certificate(machine, window).is_some()
}

/// Blank-tape simulation halts with exactly the expected counts.
pub fn verify(machine: &TuringMachine, expected_ones: u64, expected_steps: u64) -> bool {
    let r = crate::turing::run(
        machine,
        TapeState::blank(),
        expected_steps.saturating_add(1),
    );
    r.halted && r.steps == expected_steps && r.ones == expected_ones
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BusyBeaverRecord {
    pub states: u8,
    pub sigma: u64,
    pub shift: u64,
    pub sigma_champions: Vec<TuringMachine>,
    pub shift_champions: Vec<TuringMachine>,
    pub cutoff: u64,
    pub undecided_count: u64,
    pub halting_count: u64,
    pub nonhalting_count: u64,
}

impl BusyBeaverRecord {
    /// Values are exact only when nothing was left undecided.
    pub fn is_exact(&self) -> bool {
        self.undecided_count == 0
    }

    fn empty(states: u8, cutoff: u64) -> Self {
        BusyBeaverRecord {
            states,
            sigma: 0,
            shift: 0,
            sigma_champions: Vec::new(),
            shift_champions: Vec::new(),
            cutoff,
            undecided_count: 0,
            halting_count: 0,
            nonhalting_count: 0,
        }
    }

    fn add_halter(&mut self, machine: TuringMachine, steps: u64, ones: u64) {
        self.halting_count += 1;
        match ones.cmp(&self.sigma) {
            Ordering::Greater => {
                self.sigma = ones;
                self.sigma_champions = vec![machine.clone()];
            }
            Ordering::Equal => self.sigma_champions.push(machine.clone()),
            Ordering::Less => {}
        }
        match steps.cmp(&self.shift) {
            Ordering::Greater => {
                self.shift = steps;
                self.shift_champions = vec![machine];
            }
            Ordering::Equal => self.shift_champions.push(machine),
            Ordering::Less => {}
        }
    }

    fn merge(mut self, other: BusyBeaverRecord) -> Self {
        self.undecided_count += other.undecided_count;
        self.nonhalting_count += other.nonhalting_count;
        self.halting_count += other.halting_count;
        for (mine, theirs, value, other_value) in [
            (
                &mut self.sigma_champions,
                other.sigma_champions,
                &mut self.sigma,
                other.sigma,
            ),
            (
                &mut self.shift_champions,
                other.shift_champions,
                &mut self.shift,
                other.shift,
            ),
        ] {
            match other_value.cmp(value) {
                Ordering::Greater => {
                    *value = other_value;
                    *mine = theirs;
                }
                Ordering::Equal => mine.extend(theirs),
                Ordering::Less => {}
            }
        }
        self
    }

    fn finish(mut self) -> Self {
        for list in [&mut self.sigma_champions, &mut self.shift_champions] {
            list.sort_by_cached_key(TuringMachine::compact);
            list.dedup();
        }
        self
    }
}

#[derive(Clone)]
struct Partial {
    states: u8,
    used: u8,
    table: Vec<Option<Transition>>,
}

impl Partial {
    fn lookup(&self) -> impl Fn(u8, u8) -> Option<Transition> + '_ {
        move |s, b| self.table[(2 * s + b) as usize]
    }

    /// Completes the table with `1RH` everywhere undefined.
    fn complete(&self) -> TuringMachine {
        let halt = Transition::new(1, Move::Right, None);
        TuringMachine::new(self.table.iter().map(|t| t.unwrap_or(halt)).collect())
            .expect("partial table is well formed")
    }
}

/// Exhaustive search over all `states`-state machines (up to symmetry).
///
/// Panics if `states` is 0 or above 4. Four states is accepted but the tree
/// is far too large to finish at desk scale.
pub fn search(states: u8, cutoff: u64) -> BusyBeaverRecord {
    assert!(
        (1..=4).contains(&states),
        "exhaustive search supports 1..=4 states"
    );
    let root = Partial {
        states,
        used: 1,
        table: vec![None; 2 * states as usize],
    };
    explore(&root, cutoff).finish()
}

fn explore(node: &Partial, cutoff: u64) -> BusyBeaverRecord {
    let mut record = BusyBeaverRecord::empty(node.states, cutoff);
    match trace(node.lookup(), node.states, cutoff, true) {
        Fate::Halted { .. } => unreachable!("partial tables halt only on undefined entries"),
        Fate::NonHalting(_) => record.nonhalting_count += 1,
        Fate::Undecided => record.undecided_count += 1,
        Fate::Undefined {
            state,
            symbol,
            steps,
            ones,
        } => {
            // the halting leaf writes 1 and moves right
            let leaf_ones = ones + u64::from(symbol == 0);
            record.add_halter(node.complete(), steps + 1, leaf_ones);
            let undefined = node.table.iter().filter(|t| t.is_none()).count();
            if undefined == 1 {
                // filling the last entry leaves no way to halt
                record.nonhalting_count += children(node, state, symbol).count() as u64;
                return record;
            }
            let kids: Vec<Partial> = children(node, state, symbol).collect();
            let merged = kids
                .par_iter()
                .map(|k| explore(k, cutoff))
                .collect::<Vec<_>>()
                .into_iter()
                .fold(record, BusyBeaverRecord::merge);
            return merged;
        }
    }
    record
}

fn children(node: &Partial, state: u8, symbol: u8) -> impl Iterator<Item = Partial> + '_ {
    let first = node.table.iter().all(Option::is_none);
    let max_next = node.used.min(node.states - 1);
    (0..=max_next).flat_map(move |next| {
        [0u8, 1].into_iter().flat_map(move |write| {
            [Move::Left, Move::Right]
                .into_iter()
                .filter(move |&m| !first || m == Move::Right)
                .map(move |movement| {
                    let mut child = node.clone();
                    child.table[(2 * state + symbol) as usize] =
                        Some(Transition::new(write, movement, Some(next)));
                    if next == node.used {
                        child.used += 1;
                    }
                    child
                })
        })
    })
}

/// Un-reduced search: every machine in the full `(4n+4)^(2n)` space is run
/// for `cutoff` steps. Only practical for `states <= 2`.
pub fn search_full(states: u8, cutoff: u64) -> BusyBeaverRecord {
    let machines: Vec<TuringMachine> = TuringMachine::all(states).collect();
    machines
        .par_iter()
        .map(|m| {
            let mut rec = BusyBeaverRecord::empty(states, cutoff);
            let r = crate::turing::run(m, TapeState::blank(), cutoff);
            if r.halted {
                rec.add_halter(m.clone(), r.steps, r.ones);
            } else if nonhalt_detect(m, cutoff) {
                rec.nonhalting_count += 1;
            } else {
                rec.undecided_count += 1;
            }
            rec
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            BusyBeaverRecord::empty(states, cutoff),
            BusyBeaverRecord::merge,
        )
        .finish()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthEstimate {
    pub target: BitString,
    pub machine_states_bound: u8,
    pub found: bool,
    /// Table size of the smallest producer found.
    pub best_description_bits: Option<u64>,
    /// Fewest steps among the smallest producers.
    pub depth_steps: Option<u64>,
    pub witness: Option<TuringMachine>,
}

/// Visited-region content without the blank cells at either end.
fn trim_blank(content: &[u8]) -> &[u8] {
    match content.iter().position(|&c| c != 0) {
        None => &[],
        Some(f) => {
            let l = content.iter().rposition(|&c| c != 0).unwrap();
            &content[f..=l]
        }
    }
}

/// Looks for the smallest machines (at most `max_states` states) that halt
/// within `cutoff` steps leaving exactly `target` on their visited region
/// (blank cells at either end trimmed), and reports the fastest of them.
pub fn logical_depth_estimate(target: &BitString, max_states: u8, cutoff: u64) -> DepthEstimate {
    assert!(!target.is_empty(), "target must be non-empty");
    assert!(
        (1..=2).contains(&max_states),
        "depth estimation supports 1 or 2 states"
    );
    let mut best: Option<(u64, u64, TuringMachine)> = None;
    for states in 1..=max_states {
        let bits = TuringMachine::description_bits(states);
        if best.as_ref().is_some_and(|b| b.0 <= bits) {
            break;
        }
        let machines: Vec<TuringMachine> = TuringMachine::all(states).collect();
        let fastest = machines
            .par_iter()
            .filter_map(|m| {
                let mut exec = Execution::new(TapeState::blank());
                while exec.steps < cutoff {
                    if exec.step(m) == Step::Halted {
                        break;
                    }
                }
                if !exec.halted {
                    return None;
                }
                let content = exec.visited_content()?;
                (trim_blank(&content) == target.as_slice()).then(|| (exec.steps, m.clone()))
            })
            .min_by(|a, b| {
                a.0.cmp(&b.0)
                    .then_with(|| a.1.compact().cmp(&b.1.compact()))
            });
        if let Some((steps, m)) = fastest {
            best = Some((bits, steps, m));
        }
    }
    DepthEstimate {
        target: target.clone(),
        machine_states_bound: max_states,
        found: best.is_some(),
        best_description_bits: best.as_ref().map(|b| b.0),
        depth_steps: best.as_ref().map(|b| b.1),
        witness: best.map(|b| b.2),
    }
}
