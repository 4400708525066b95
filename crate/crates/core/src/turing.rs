//! (n, 2) Turing machines over blank or periodic backgrounds.
//!
//! The tape is stored as a growable window; cells outside it (and cells
//! inside it that were materialized but never written) read as the
//! background value at that position. Conventions used throughout: the head
//! starts at position 0 in state A, inputs occupy positions `0..L`, a
//! halting transition still writes and moves and counts as a step, and the
//! visited region is the span of positions where a transition executed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::coefficient::ComputingSystem;

pub const MAX_STATES: u8 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    fn delta(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Right => 1,
        }
    }

    pub fn mirrored(self) -> Move {
        match self {
            Move::Left => Move::Right,
            Move::Right => Move::Left,
        }
    }
}

/// Next control state; `None` is Halt.
pub type Next = Option<u8>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub write: u8,
    pub movement: Move,
    pub next: Next,
}

impl Transition {
    pub const fn new(write: u8, movement: Move, next: Next) -> Self {
        Transition {
            write,
            movement,
            next,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.movement {
            Move::Left => 'L',
            Move::Right => 'R',
        };
        let n = match self.next {
            Some(s) => state_letter(s),
            None => 'H',
        };
        write!(f, "{}{}{}", self.write, m, n)
    }
}

pub fn state_letter(state: u8) -> char {
    char::from(b'A' + state)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("line {line}: expected `<state><symbol> -> <write><L|R><next>`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: expected entry {expected}, got {found}")]
    OutOfOrder {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: next state {next} outside the {states}-state machine")]
    UnknownState { line: usize, next: char, states: u8 },
    #[error("machine table has {0} entries; need an even count between 2 and 52")]
    BadSize(usize),
}

/// A complete (n, 2) transition table; Halt is not one of the n states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TuringMachine {
    states: u8,
    table: Vec<Transition>,
}

impl TuringMachine {
    /// Builds a machine from entries ordered `A0, A1, B0, B1, ...`.
    pub fn new(table: Vec<Transition>) -> Result<Self, MachineError> {
        if table.is_empty() || !table.len().is_multiple_of(2) || table.len() > 2 * MAX_STATES as usize {
            return Err(MachineError::BadSize(table.len()));
        }
        let states = (table.len() / 2) as u8;
        for (i, tr) in table.iter().enumerate() {
            if let Some(s) = tr.next {
                if s >= states {
                    return Err(MachineError::UnknownState {
                        line: i + 1,
                        next: state_letter(s),
                        states,
                    });
                }
            }
            assert!(tr.write <= 1, "write symbol must be 0 or 1");
        }
        Ok(TuringMachine { states, table })
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    #[inline]
    pub fn get(&self, state: u8, symbol: u8) -> Transition {
        self.table[(2 * state + symbol) as usize]
    }

    pub fn table(&self) -> &[Transition] {
        &self.table
    }

    /// Left-right mirror image; behaves identically up to reflection.
    pub fn mirrored(&self) -> TuringMachine {
        TuringMachine {
            states: self.states,
            table: self
                .table
                .iter()
                .map(|t| Transition::new(t.write, t.movement.mirrored(), t.next))
                .collect(),
        }
    }

    /// Compact single-line form, e.g. `1RB1LB_1LA1RH`.
    pub fn compact(&self) -> String {
        self.table
            .chunks(2)
            .map(|p| format!("{}{}", p[0], p[1]))
            .collect::<Vec<_>>()
            .join("_")
    }

    /// Parses the compact form produced by [`TuringMachine::compact`].
    pub fn from_compact(s: &str) -> Result<Self, MachineError> {
        let mut text = String::new();
        for (i, group) in s.trim().split('_').enumerate() {
            let b = group.as_bytes();
            if b.len() != 6 {
                return Err(MachineError::Syntax {
                    line: 1,
                    text: s.to_string(),
                });
            }
            let st = state_letter(i as u8);
            text.push_str(&format!(
                "{st}0 -> {}\n{st}1 -> {}\n",
                &group[..3],
                &group[3..]
            ));
        }
        text.parse()
    }

    /// Bits needed to encode the table: per entry, write + move + next state.
    pub fn description_bits(states: u8) -> u64 {
        let next_width = u64::from(u8::BITS - states.leading_zeros());
        2 * u64::from(states) * (2 + next_width)
    }

    /// Every machine with exactly `states` states, in a fixed order.
    pub fn all(states: u8) -> impl Iterator<Item = TuringMachine> {
        let choices: Vec<Transition> = all_transitions(states).collect();
        let k = choices.len() as u64;
        let entries = 2 * states as u32;
        (0..k.pow(entries)).map(move |mut code| {
            let mut table = Vec::with_capacity(entries as usize);
            for _ in 0..entries {
                table.push(choices[(code % k) as usize]);
                code /= k;
            }
            TuringMachine { states, table }
        })
    }
}

impl Serialize for TuringMachine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.compact())
    }
}

impl<'de> Deserialize<'de> for TuringMachine {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TuringMachine::from_compact(&s).map_err(serde::de::Error::custom)
    }
}

/// All `4 (n + 1)` transitions available to an n-state machine.
pub fn all_transitions(states: u8) -> impl Iterator<Item = Transition> + Clone {
    (0..=states).flat_map(move |next| {
        let next = if next == states { None } else { Some(next) };
        [0u8, 1].into_iter().flat_map(move |write| {
            [Move::Left, Move::Right]
                .into_iter()
                .map(move |m| Transition::new(write, m, next))
        })
    })
}

impl fmt::Display for TuringMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, tr) in self.table.iter().enumerate() {
            writeln!(f, "{}{} -> {}", state_letter((i / 2) as u8), i % 2, tr)?;
        }
        Ok(())
    }
}

impl FromStr for TuringMachine {
    type Err = MachineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let syntax = || MachineError::Syntax {
                line: lineno,
                text: raw.to_string(),
            };
            let (lhs, rhs) = line.split_once("->").ok_or_else(syntax)?;
            let lhs = lhs.trim().as_bytes();
            let rhs = rhs.trim().as_bytes();
            if lhs.len() != 2 || rhs.len() != 3 {
                return Err(syntax());
            }
            let idx = entries.len();
            let expected = format!("{}{}", state_letter((idx / 2) as u8), idx % 2);
            let found = String::from_utf8_lossy(lhs).into_owned();
            if found != expected {
                return Err(MachineError::OutOfOrder {
                    line: lineno,
                    expected,
                    found,
                });
            }
            let write = match rhs[0] {
                b'0' => 0,
                b'1' => 1,
                _ => return Err(syntax()),
            };
            let movement = match rhs[1] {
                b'L' => Move::Left,
                b'R' => Move::Right,
                _ => return Err(syntax()),
            };
            let next = match rhs[2] {
                b'H' => None,
                c @ b'A'..=b'Z' => Some(c - b'A'),
                _ => return Err(syntax()),
            };
            entries.push((lineno, Transition::new(write, movement, next)));
        }
        if entries.is_empty() || entries.len() % 2 != 0 || entries.len() > 2 * MAX_STATES as usize {
            return Err(MachineError::BadSize(entries.len()));
        }
        let states = (entries.len() / 2) as u8;
        for &(line, tr) in &entries {
            if let Some(n) = tr.next {
                if n >= states {
                    return Err(MachineError::UnknownState {
                        line,
                        next: state_letter(n),
                        states,
                    });
                }
            }
        }
        TuringMachine::new(entries.into_iter().map(|(_, t)| t).collect())
    }
}

/// What an unwritten cell holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Background {
    #[default]
    Blank,
    /// Cell `x` holds `word[(x - anchor) mod word.len()]`.
    Periodic { word: Vec<u8>, anchor: i64 },
}

impl Background {
    /// Panics if `word` is empty or not binary.
    pub fn periodic(word: &BitString, anchor: i64) -> Self {
        assert!(!word.is_empty(), "periodic word must be non-empty");
        Background::Periodic {
            word: word.as_slice().to_vec(),
            anchor,
        }
    }

    #[inline]
    pub fn at(&self, x: i64) -> u8 {
        match self {
            Background::Blank => 0,
            Background::Periodic { word, anchor } => {
                word[(x - anchor).rem_euclid(word.len() as i64) as usize]
            }
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Background::Blank)
    }
}

/// Materialized tape window over a background.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tape {
    cells: Vec<u8>,
    /// Absolute position of `cells[0]`.
    origin: i64,
    background: Background,
}

impl Tape {
    pub fn new(background: Background) -> Self {
        Tape {
            cells: Vec::new(),
            origin: 0,
            background,
        }
    }

    pub fn background(&self) -> &Background {
        &self.background
    }

    #[inline]
    pub fn get(&self, x: i64) -> u8 {
        let i = x - self.origin;
        if i >= 0 && (i as usize) < self.cells.len() {
            self.cells[i as usize]
        } else {
            self.background.at(x)
        }
    }

    #[inline]
    pub fn set(&mut self, x: i64, value: u8) {
        self.ensure(x);
        self.cells[(x - self.origin) as usize] = value;
    }

    fn ensure(&mut self, x: i64) {
        if self.cells.is_empty() {
            self.origin = x;
            self.cells.push(self.background.at(x));
            return;
        }
        let end = self.origin + self.cells.len() as i64;
        if x >= end {
            let grow = (x - end + 1).max(self.cells.len() as i64);
            let bg = &self.background;
            self.cells.extend((end..end + grow).map(|p| bg.at(p)));
        } else if x < self.origin {
            let grow = (self.origin - x).max(self.cells.len() as i64);
            let start = self.origin - grow;
            let mut fresh: Vec<u8> = (start..self.origin)
                .map(|p| self.background.at(p))
                .collect();
            fresh.extend_from_slice(&self.cells);
            self.cells = fresh;
            self.origin = start;
        }
    }

    /// Cells `lo..=hi` as 0/1 values.
    pub fn segment(&self, lo: i64, hi: i64) -> Vec<u8> {
        (lo..=hi).map(|x| self.get(x)).collect()
    }

    pub fn ones_in(&self, lo: i64, hi: i64) -> u64 {
        (lo..=hi).filter(|&x| self.get(x) == 1).count() as u64
    }
}

/// Full machine configuration: tape, head position and control state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TapeState {
    pub tape: Tape,
    pub head: i64,
    pub state: u8,
}

impl TapeState {
    pub fn blank() -> Self {
        Self::with_input(&BitString::default(), Background::Blank)
    }

    /// Input written at positions `0..L`, head at 0, state A.
    pub fn with_input(input: &BitString, background: Background) -> Self {
        let mut tape = Tape::new(background);
        for (i, &c) in input.as_slice().iter().enumerate() {
            tape.set(i as i64, c);
        }
        TapeState {
            tape,
            head: 0,
            state: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub halted: bool,
    pub steps: u64,
    /// 1s inside the visited region at termination or truncation.
    pub ones: u64,
    /// `(min, max)` head positions at which a transition executed.
    pub visited_extent: (i64, i64),
}

/// Outcome of a single step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Continue,
    Halted,
    /// The table has no entry for `(state, symbol)`; nothing was changed.
    Undefined {
        state: u8,
        symbol: u8,
    },
}

/// Step-by-step executor. The table is supplied per step so partially
/// defined machines (used by the exhaustive search) share the same engine.
#[derive(Debug, Clone)]
pub struct Execution {
    pub config: TapeState,
    pub steps: u64,
    pub halted: bool,
    pub min_visited: i64,
    pub max_visited: i64,
}

impl Execution {
    pub fn new(config: TapeState) -> Self {
        let h = config.head;
        Execution {
            config,
            steps: 0,
            halted: false,
            min_visited: h,
            max_visited: h,
        }
    }

    #[inline]
    pub fn read(&self) -> u8 {
        self.config.tape.get(self.config.head)
    }

    #[inline]
    pub fn step_with(&mut self, lookup: impl Fn(u8, u8) -> Option<Transition>) -> Step {
        if self.halted {
            return Step::Halted;
        }
        let state = self.config.state;
        let symbol = self.read();
        let Some(tr) = lookup(state, symbol) else {
            return Step::Undefined { state, symbol };
        };
        let head = self.config.head;
        self.min_visited = self.min_visited.min(head);
        self.max_visited = self.max_visited.max(head);
        if tr.write != symbol {
            self.config.tape.set(head, tr.write);
        }
        self.config.head = head + tr.movement.delta();
        self.steps += 1;
        match tr.next {
            Some(s) => {
                self.config.state = s;
                Step::Continue
            }
            None => {
                self.halted = true;
                Step::Halted
            }
        }
    }

    #[inline]
    pub fn step(&mut self, machine: &TuringMachine) -> Step {
        self.step_with(|s, b| Some(machine.get(s, b)))
    }

    pub fn ones_visited(&self) -> u64 {
        if self.steps == 0 {
            return 0;
        }
        self.config.tape.ones_in(self.min_visited, self.max_visited)
    }

    pub fn result(&self) -> RunResult {
        RunResult {
            halted: self.halted,
            steps: self.steps,
            ones: self.ones_visited(),
            visited_extent: (self.min_visited, self.max_visited),
        }
    }

    /// Contents of the visited region, or `None` before the first step.
    pub fn visited_content(&self) -> Option<Vec<u8>> {
        (self.steps > 0).then(|| self.config.tape.segment(self.min_visited, self.max_visited))
    }
}

/// Runs until Halt or `max_steps` transitions.
pub fn run(machine: &TuringMachine, tape: TapeState, max_steps: u64) -> RunResult {
    let mut exec = Execution::new(tape);
    while exec.steps < max_steps {
        if exec.step(machine) == Step::Halted {
            break;
        }
    }
    exec.result()
}

/// Space-time serialization: one row per step (the tape after that step)
/// over the visited window of the whole run; rows after a halt repeat the
/// final tape. Cells are `'0'`/`'1'` bytes.
pub fn spacetime(machine: &TuringMachine, tape: TapeState, steps: u64) -> Vec<u8> {
    if steps == 0 {
        return Vec::new();
    }
    let probe = run(machine, tape.clone(), steps);
    let (lo, hi) = probe.visited_extent;
    let width = (hi - lo + 1) as usize;
    let mut out = Vec::with_capacity(width * steps as usize);
    let mut exec = Execution::new(tape);
    let mut row = Vec::with_capacity(width);
    for _ in 0..steps {
        exec.step(machine);
        row.clear();
        row.extend((lo..=hi).map(|x| b'0' + exec.config.tape.get(x)));
        out.extend_from_slice(&row);
    }
    out
}

/// Turing-machine adapter for the coefficient pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmSystem {
    pub machine: TuringMachine,
    pub background: Background,
    pub label: String,
}

impl TmSystem {
    pub fn new(machine: TuringMachine, label: impl Into<String>) -> Self {
        TmSystem {
            machine,
            background: Background::Blank,
            label: label.into(),
        }
    }

    pub fn with_background(mut self, background: Background) -> Self {
        self.background = background;
        self
    }
}

impl ComputingSystem for TmSystem {
    fn id(&self) -> String {
        format!("tm:{}", self.label)
    }

    fn run(&self, init: &BitString, steps: u64) -> Vec<u8> {
        spacetime(
            &self.machine,
            TapeState::with_input(init, self.background.clone()),
            steps,
        )
    }
}
