//! Closed position sets over block macro machines.
//!
//! The tape is cut into blocks of `block` cells, aligned so that the start
//! cell is offset 0 of block 0. A macro step runs the base table inside one
//! block until the head leaves it. Over this macro machine we close a set of
//! local views `(macro state, left window, head block, right window)`
//! together with the sets of `radius`-block windows that may lie beyond the
//! left and right views. Every real configuration stays inside the closure,
//! so if no view in it reaches a halting entry the machine never halts.
//!
//! Blocks of two or more cells let the abstraction carry the parity of long
//! uniform runs, which plain windows lose.

use std::collections::HashSet;

use super::Certificate;
use crate::turing::{Move, Transition};

pub const MAX_BLOCK: usize = 4;
pub const MAX_RADIUS: usize = 6;
const VIEW_BUDGET: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MacroStep {
    Exit {
        write: u16,
        movement: Move,
        next: u16,
    },
    Halt,
    /// The head never leaves the block.
    Trapped,
}

/// Macro states are `2 * base_state + side`, side 0 entering at offset 0
/// (from the left), side 1 entering at offset `block - 1`.
struct MacroTable {
    steps: Vec<MacroStep>,
    symbols: usize,
}

impl MacroTable {
    fn new(table: &[Option<Transition>], block: usize) -> Self {
        let states = table.len() / 2;
        let symbols = 1usize << block;
        let limit = states * block * symbols + 1;
        let mut steps = Vec::with_capacity(2 * states * symbols);
        for mstate in 0..2 * states {
            for sym in 0..symbols {
                let mut state = (mstate / 2) as u8;
                let mut pos = if mstate % 2 == 0 { 0 } else { block as i64 - 1 };
                let mut cells = sym as u16;
                let mut outcome = MacroStep::Trapped;
                for _ in 0..limit {
                    let bit = ((cells >> pos) & 1) as u8;
                    let Some(tr) = table[(2 * state + bit) as usize] else {
                        outcome = MacroStep::Halt;
                        break;
                    };
                    let Some(next) = tr.next else {
                        outcome = MacroStep::Halt;
                        break;
                    };
                    cells = (cells & !(1 << pos)) | (u16::from(tr.write) << pos);
                    state = next;
                    pos += if tr.movement == Move::Right { 1 } else { -1 };
                    if pos < 0 {
                        outcome = MacroStep::Exit {
                            write: cells,
                            movement: Move::Left,
                            next: 2 * u16::from(state) + 1,
                        };
                        break;
                    }
                    if pos >= block as i64 {
                        outcome = MacroStep::Exit {
                            write: cells,
                            movement: Move::Right,
                            next: 2 * u16::from(state),
                        };
                        break;
                    }
                }
                steps.push(outcome);
            }
        }
        MacroTable { steps, symbols }
    }

    fn get(&self, mstate: u16, sym: u16) -> MacroStep {
        self.steps[mstate as usize * self.symbols + sym as usize]
    }
}

type Window = Vec<u16>;
type View = (u16, Window, u16, Window);

fn closed_at(macros: &MacroTable, radius: usize) -> Option<()> {
    let blank: Window = vec![0; radius];
    let mut left_grams: HashSet<Window> = HashSet::from([blank.clone()]);
    let mut right_grams: HashSet<Window> = HashSet::from([blank.clone()]);
    let start: View = (0, blank.clone(), 0, blank);
    let mut seen: HashSet<View> = HashSet::from([start.clone()]);
    let mut views: Vec<View> = vec![start];
    loop {
        let before = (views.len(), left_grams.len(), right_grams.len());
        let mut i = 0;
        while i < views.len() {
            if views.len() > VIEW_BUDGET {
                return None;
            }
            let (mstate, l, head, r) = views[i].clone();
            i += 1;
            let (write, movement, next) = match macros.get(mstate, head) {
                MacroStep::Halt => return None,
                MacroStep::Trapped => continue,
                MacroStep::Exit {
                    write,
                    movement,
                    next,
                } => (write, movement, next),
            };
            let mut fresh = Vec::new();
            match movement {
                Move::Right => {
                    left_grams.insert(l.clone());
                    let mut nl = l[1..].to_vec();
                    nl.push(write);
                    for g in &right_grams {
                        if g[..radius - 1] == r[1..] {
                            let mut nr = r[1..].to_vec();
                            nr.push(g[radius - 1]);
                            fresh.push((next, nl.clone(), r[0], nr));
                        }
                    }
                }
                Move::Left => {
                    right_grams.insert(r.clone());
                    let mut nr = vec![write];
                    nr.extend_from_slice(&r[..radius - 1]);
                    for g in &left_grams {
                        if g[1..] == l[..radius - 1] {
                            let mut nl = vec![g[0]];
                            nl.extend_from_slice(&l[..radius - 1]);
                            fresh.push((next, nl, l[radius - 1], nr.clone()));
                        }
                    }
                }
            }
            for v in fresh {
                if seen.insert(v.clone()) {
                    views.push(v);
                }
            }
        }
        // gram sets can grow after a view was already expanded
        if (views.len(), left_grams.len(), right_grams.len()) == before {
            return Some(());
        }
    }
}

/// Tries block sizes `1..=MAX_BLOCK` and radii `1..=MAX_RADIUS`.
/// `None` entries and entries whose next state is Halt count as halting.
pub(super) fn closed_position_set(table: &[Option<Transition>]) -> Option<Certificate> {
    for block in 1..=MAX_BLOCK {
        let macros = MacroTable::new(table, block);
        for radius in 1..=MAX_RADIUS {
            if closed_at(&macros, radius).is_some() {
                return Some(Certificate::ClosedPositionSet {
                    block: block as u64,
                    radius: radius as u64,
                });
            }
        }
    }
    None
}
