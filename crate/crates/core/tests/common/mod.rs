#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use translab::turing::{Move, Transition, TuringMachine};

/// Rows of an ECA run on a plain array, each over `[-r, len + r)`.
/// The array is wide enough that its clamped edges never reach those cells.
pub fn dense_eca(rule: u8, init: &[u8], steps: usize) -> Vec<Vec<u8>> {
    let margin = 2 * steps + 1;
    let mut cells = vec![0u8; init.len() + 2 * margin];
    cells[margin..margin + init.len()].copy_from_slice(init);
    let mut rows = vec![init.to_vec()];
    for r in 1..=steps {
        let n = cells.len();
        let next: Vec<u8> = (0..n)
            .map(|i| {
                let l = cells[i.saturating_sub(1)];
                let c = cells[i];
                let rr = cells[(i + 1).min(n - 1)];
                (rule >> (4 * l + 2 * c + rr)) & 1
            })
            .collect();
        cells = next;
        rows.push(cells[margin - r..margin + init.len() + r].to_vec());
    }
    rows
}

#[derive(Debug, PartialEq, Eq)]
pub struct DenseRun {
    pub halted: bool,
    pub steps: u64,
    pub ones: u64,
    pub extent: (i64, i64),
    pub content: Vec<u8>,
}

/// Blank-tape run on a fixed array of `2 * max_steps + 3` cells.
pub fn dense_tm(m: &TuringMachine, max_steps: u64) -> DenseRun {
    let off = max_steps as i64 + 1;
    let mut tape = vec![0u8; 2 * max_steps as usize + 3];
    let (mut head, mut state) = (0i64, 0u8);
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    let mut steps = 0;
    let mut halted = false;
    while steps < max_steps {
        let cell = &mut tape[(head + off) as usize];
        let t = m.get(state, *cell);
        lo = lo.min(head);
        hi = hi.max(head);
        *cell = t.write;
        head += if t.movement == Move::Right { 1 } else { -1 };
        steps += 1;
        match t.next {
            Some(s) => state = s,
            None => {
                halted = true;
                break;
            }
        }
    }
    let content = if steps == 0 {
        Vec::new()
    } else {
        tape[(lo + off) as usize..=(hi + off) as usize].to_vec()
    };
    DenseRun {
        halted,
        steps,
        ones: content.iter().map(|&c| c as u64).sum(),
        extent: (lo, hi),
        content,
    }
}

pub fn random_machine(rng: &mut ChaCha8Rng, states: u8) -> TuringMachine {
    let table = (0..2 * states)
        .map(|_| {
            let next = if rng.gen_ratio(1, 8) {
                None
            } else {
                Some(rng.gen_range(0..states))
            };
            let movement = if rng.gen() { Move::Right } else { Move::Left };
            Transition::new(rng.gen_range(0..2), movement, next)
        })
        .collect();
    TuringMachine::new(table).unwrap()
}

/// Exact OLS slope of integer points as a ratio of i128 sums.
pub fn exact_slope(points: &[(i64, i64)]) -> f64 {
    let m = points.len() as i128;
    let (sx, sy, sxx, sxy) = points
        .iter()
        .fold((0i128, 0i128, 0i128, 0i128), |acc, &(x, y)| {
            let (x, y) = (x as i128, y as i128);
            (acc.0 + x, acc.1 + y, acc.2 + x * x, acc.3 + x * y)
        });
    let num = m * sxy - sx * sy;
    let den = m * sxx - sx * sx;
    num as f64 / den as f64
}
