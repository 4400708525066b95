//! Finite-automaton reduction: a regular language of tape words that
//! contains every halting configuration, is closed under running the
//! machine backwards, and does not contain the blank start configuration.
//!
//! A configuration is written `u f x`: the cells left of the head `u`, the
//! control state `f`, then the head cell and everything to its right `x`,
//! with any amount of zero padding on either side. A DFA reads `u`; its
//! final state `q` picks the NFA start state `(q, f)`, from which the NFA
//! must accept `x`. For a fixed DFA the smallest NFA meeting the closure
//! rules is found by saturation, so the search is over DFAs only.
//!
//! Rules, for every DFA state `q` and symbol `b`:
//! - halting entry `(f, r)`: reading `r` from `(q, f)` may enter HALT,
//!   which loops on every symbol and accepts;
//! - right move `(f, r) -> (w, R, t)`: reading `r` from `(q, f)` may enter
//!   `(dfa(q, w), t)`;
//! - left move `(f, r) -> (w, L, t)`: reading `r` from `(dfa(q, b), f)`
//!   reaches everything reachable from `(q, t)` by reading `b w`.
//!
//! Left padding is harmless because the DFA start state loops on 0; right
//! padding is handled by closing the accepting set backwards over 0.

use super::Certificate;
use crate::turing::{Move, Transition};

pub const MAX_DFA_STATES: usize = 5;

type Set = u64;

struct Dfa {
    next: Vec<[usize; 2]>,
}

impl Dfa {
    fn len(&self) -> usize {
        self.next.len()
    }
}

/// Canonical DFAs with `size` states: state 0 loops on 0, and states are
/// numbered in order of first appearance in the row-major table.
fn for_each_dfa(size: usize, mut visit: impl FnMut(&Dfa) -> bool) -> bool {
    let mut next = vec![[0usize; 2]; size];
    fn rec(
        next: &mut Vec<[usize; 2]>,
        slot: usize,
        used: usize,
        visit: &mut dyn FnMut(&Dfa) -> bool,
    ) -> bool {
        let size = next.len();
        if slot == 2 * size {
            if used != size {
                return false;
            }
            return visit(&Dfa { next: next.clone() });
        }
        let (q, s) = (slot / 2, slot % 2);
        if q >= used {
            // unreachable state under canonical numbering
            return false;
        }
        if slot == 0 {
            next[0][0] = 0;
            return rec(next, 1, used, visit);
        }
        let limit = (used + 1).min(size);
        for target in 0..limit {
            next[q][s] = target;
            let used2 = used.max(target + 1);
            if rec(next, slot + 1, used2, visit) {
                return true;
            }
        }
        false
    }
    rec(&mut next, 0, 1, &mut visit)
}

struct Nfa {
    /// `t[symbol][state]` is the set of successors.
    t: [Vec<Set>; 2],
}

impl Nfa {
    fn step(&self, from: Set, symbol: usize) -> Set {
        let mut out = 0;
        let mut rest = from;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= self.t[symbol][i];
            rest &= rest - 1;
        }
        out
    }
}

/// Does the least NFA for this DFA reject the blank start configuration?
fn rejects_start(table: &[Option<Transition>], dfa: &Dfa) -> bool {
    let states = table.len() / 2;
    let k = dfa.len();
    let halt = k * states;
    let start = |q: usize, f: usize| q * states + f;
    let bit = |i: usize| 1u64 << i;
    let mut nfa = Nfa {
        t: [vec![0; halt + 1], vec![0; halt + 1]],
    };
    nfa.t[0][halt] = bit(halt);
    nfa.t[1][halt] = bit(halt);

    let mut left_moves = Vec::new();
    for (i, tr) in table.iter().enumerate() {
        let (f, r) = (i / 2, i % 2);
        match tr {
            Some(Transition {
                write,
                movement,
                next: Some(t),
            }) => {
                let (w, t) = (*write as usize, *t as usize);
                match movement {
                    Move::Right => {
                        for q in 0..k {
                            nfa.t[r][start(q, f)] |= bit(start(dfa.next[q][w], t));
                        }
                    }
                    Move::Left => left_moves.push((f, r, w, t)),
                }
            }
            _ => {
                for q in 0..k {
                    nfa.t[r][start(q, f)] |= bit(halt);
                }
            }
        }
    }
    loop {
        let mut grew = false;
        for &(f, r, w, t) in &left_moves {
            for q in 0..k {
                for b in 0..2 {
                    let reach = nfa.step(nfa.step(bit(start(q, t)), b), w);
                    let slot = &mut nfa.t[r][start(dfa.next[q][b], f)];
                    if *slot | reach != *slot {
                        *slot |= reach;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut accepted = bit(halt);
    loop {
        let before = accepted;
        for i in 0..=halt {
            if nfa.t[0][i] & accepted != 0 {
                accepted |= bit(i);
            }
        }
        if accepted == before {
            break;
        }
    }
    nfa.step(bit(start(0, 0)), 0) & accepted == 0
}

fn mirror(table: &[Option<Transition>]) -> Vec<Option<Transition>> {
    table
        .iter()
        .map(|t| t.map(|t| Transition::new(t.write, t.movement.mirrored(), t.next)))
        .collect()
}

/// Tries DFAs of up to [`MAX_DFA_STATES`] states reading from either end.
/// `None` entries and entries whose next state is Halt count as halting.
pub(super) fn finite_automaton_reduction(table: &[Option<Transition>]) -> Option<Certificate> {
    reduce_up_to(table, MAX_DFA_STATES)
}

fn reduce_up_to(table: &[Option<Transition>], max_size: usize) -> Option<Certificate> {
    let states = table.len() / 2;
    let mirrored = mirror(table);
    for size in 1..=max_size {
        if size * states + 1 > Set::BITS as usize {
            break;
        }
        for (from_right, t) in [(false, table), (true, mirrored.as_slice())] {
            if for_each_dfa(size, |dfa| rejects_start(t, dfa)) {
                return Some(Certificate::FiniteAutomaton {
                    dfa_states: size as u64,
                    from_right,
                });
            }
        }
    }
    None
}
