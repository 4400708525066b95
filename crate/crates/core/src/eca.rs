//! Elementary cellular automata on an infinite uniform background.
//!
//! A finite window grows by one cell per side per step. Everything outside
//! the window equals the row's background symbol, which itself evolves as
//! `table(b, b, b)`.

use std::fmt;
use std::io::{self, Write};

use crate::bits::BitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EcaRule(u8);

impl EcaRule {
    pub const fn new(number: u8) -> Self {
        EcaRule(number)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// Image of the neighborhood `(left, center, right)`.
    #[inline]
    pub fn apply(self, left: u8, center: u8, right: u8) -> u8 {
        (self.0 >> ((left << 2) | (center << 1) | right)) & 1
    }

    /// The 8-entry table indexed by `4*left + 2*center + right`.
    pub fn table(self) -> [u8; 8] {
        std::array::from_fn(|i| (self.0 >> i) & 1)
    }

    pub fn all() -> impl Iterator<Item = EcaRule> {
        (0..=255u8).map(EcaRule)
    }
}

impl TryFrom<i64> for EcaRule {
    type Error = String;

    fn try_from(n: i64) -> Result<Self, Self::Error> {
        u8::try_from(n)
            .map(EcaRule)
            .map_err(|_| format!("rule {n} outside 0..=255"))
    }
}

impl fmt::Display for EcaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}", self.0)
    }
}

/// One update. Returns the new row (two cells wider) and the new background.
pub fn step(rule: EcaRule, row: &[u8], background: u8) -> (Vec<u8>, u8) {
    let w = row.len();
    let at = |i: isize| -> u8 {
        if i < 0 || i as usize >= w {
            background
        } else {
            row[i as usize]
        }
    };
    let out = (0..w + 2)
        .map(|k| {
            // output cell k sits above input cell k-1
            let c = k as isize - 1;
            rule.apply(at(c - 1), at(c), at(c + 1))
        })
        .collect();
    (out, rule.apply(background, background, background))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceTimeDiagram {
    rows: Vec<Vec<u8>>,
    window_offsets: Vec<i64>,
    backgrounds: Vec<u8>,
}

impl SpaceTimeDiagram {
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn window_offsets(&self) -> &[i64] {
        &self.window_offsets
    }

    pub fn backgrounds(&self) -> &[u8] {
        &self.backgrounds
    }

    /// Number of steps taken (rows minus one).
    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }

    /// Cell value at absolute position `x` in row `t`, background outside the window.
    pub fn cell(&self, t: usize, x: i64) -> u8 {
        let rel = x - self.window_offsets[t];
        if rel < 0 || rel >= self.rows[t].len() as i64 {
            self.backgrounds[t]
        } else {
            self.rows[t][rel as usize]
        }
    }

    /// Rows in time order as `'0'`/`'1'` bytes, no separators.
    pub fn serialize(&self) -> Vec<u8> {
        let total = self.rows.iter().map(Vec::len).sum();
        let mut out = Vec::with_capacity(total);
        for row in &self.rows {
            out.extend(row.iter().map(|&c| b'0' + c));
        }
        out
    }

    /// Binary PPM over the final row's window; 1 = black, 0 = white.
    pub fn write_ppm<W: Write>(&self, mut w: W) -> io::Result<()> {
        let t = self.steps();
        let left = self.window_offsets[t];
        let width = self.rows[t].len();
        writeln!(w, "P6\n{} {}\n255", width, self.rows.len())?;
        let mut buf = Vec::with_capacity(width * 3);
        for r in 0..self.rows.len() {
            buf.clear();
            for x in left..left + width as i64 {
                let v = if self.cell(r, x) == 1 { 0u8 } else { 255u8 };
                buf.extend_from_slice(&[v, v, v]);
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    /// CSV with columns `t,offset,background,cells`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,offset,background,cells")?;
        for (t, row) in self.rows.iter().enumerate() {
            let cells: String = row.iter().map(|&c| char::from(b'0' + c)).collect();
            writeln!(
                w,
                "{},{},{},{}",
                t, self.window_offsets[t], self.backgrounds[t], cells
            )?;
        }
        Ok(())
    }
}

/// Evolves `init` for `steps` steps on a 0 background.
///
/// Panics if `init` is empty.
pub fn evolve(rule: EcaRule, init: &BitString, steps: usize) -> SpaceTimeDiagram {
    evolve_on(rule, init.as_slice(), 0, steps)
}

/// Evolves a raw cell row on the given initial background.
pub fn evolve_on(rule: EcaRule, init: &[u8], background: u8, steps: usize) -> SpaceTimeDiagram {
    assert!(!init.is_empty(), "initial row must be non-empty");
    let mut rows = Vec::with_capacity(steps + 1);
    let mut window_offsets = Vec::with_capacity(steps + 1);
    let mut backgrounds = Vec::with_capacity(steps + 1);
    rows.push(init.to_vec());
    window_offsets.push(0);
    backgrounds.push(background);
    for r in 0..steps {
        let (next, bg) = step(rule, &rows[r], backgrounds[r]);
        rows.push(next);
        window_offsets.push(-(r as i64) - 1);
        backgrounds.push(bg);
    }
    SpaceTimeDiagram {
        rows,
        window_offsets,
        backgrounds,
    }
}

/// Serialized evolution without materializing the diagram.
pub fn serialized_evolution(rule: EcaRule, init: &[u8], steps: usize) -> Vec<u8> {
    let w0 = init.len();
    let total = (steps + 1) * w0 + steps * (steps + 1);
    let mut out = Vec::with_capacity(total);
    let mut row = init.to_vec();
    let mut next = Vec::with_capacity(w0 + 2 * steps);
    let mut bg = 0u8;
    out.extend(row.iter().map(|&c| b'0' + c));
    for _ in 0..steps {
        next.clear();
        let w = row.len();
        let at = |i: isize| -> u8 {
            if i < 0 || i as usize >= w {
                bg
            } else {
                row[i as usize]
            }
        };
        for k in 0..w + 2 {
            let c = k as isize - 1;
            next.push(rule.apply(at(c - 1), at(c), at(c + 1)));
        }
        bg = rule.apply(bg, bg, bg);
        std::mem::swap(&mut row, &mut next);
        out.extend(row.iter().map(|&c| b'0' + c));
    }
    out
}
