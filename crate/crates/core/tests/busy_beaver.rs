mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use translab::bits::BitString;
use translab::busy_beaver::{
    logical_depth_estimate, nonhalt_certificate, nonhalt_detect, search, search_full, verify,
};
use translab::turing::{run, TapeState, TuringMachine};

use common::{dense_tm, random_machine};

fn tm(s: &str) -> TuringMachine {
    TuringMachine::from_compact(s).unwrap()
}

#[test]
fn reduced_search_matches_full_space() {
    for (states, cutoff) in [(1, 10), (2, 100)] {
        let reduced = search(states, cutoff);
        let full = search_full(states, cutoff);
        assert_eq!((reduced.sigma, reduced.shift), (full.sigma, full.shift));
        assert_eq!(reduced.undecided_count, 0);
        assert_eq!(full.undecided_count, 0);
        for m in &reduced.shift_champions {
            assert!(full.shift_champions.contains(m), "{}", m.compact());
        }
    }
}

#[test]
fn small_records() {
    let r1 = search(1, 10);
    let r2 = search(2, 100);
    assert_eq!((r1.sigma, r1.shift), (1, 1));
    assert_eq!((r2.sigma, r2.shift), (4, 6));
    assert!(r1.sigma < r2.sigma && r1.shift < r2.shift);
    assert!(r2.is_exact());
    for r in [&r1, &r2] {
        for m in &r.shift_champions {
            let run = run(m, TapeState::blank(), r.shift + 1);
            assert!(run.halted && run.steps == r.shift);
        }
        for m in &r.sigma_champions {
            let run = run(m, TapeState::blank(), r.cutoff);
            assert!(verify(m, r.sigma, run.steps));
        }
    }
}

#[test]
fn short_cutoff_is_flagged() {
    let r = search(2, 3);
    assert!(!r.is_exact());
    assert!(r.undecided_count > 0);
}

#[test]
fn verify_examples() {
    let bb2 = tm("1RB1LB_1LA1RH");
    assert!(verify(&bb2, 4, 6));
    assert!(!verify(&bb2, 4, 7));
    assert!(!verify(&bb2, 3, 6));
    assert!(verify(&tm("1RB1LB_1LA0LC_1RH1LD_1RD0RA"), 13, 107));
}

#[test]
fn simple_non_halters() {
    assert!(nonhalt_detect(&tm("1RA1RH"), 50));
    assert!(nonhalt_detect(&tm("0LA1RH"), 50));
    assert!(nonhalt_certificate(&tm("1RB1LB_1LA1RH"), 50).is_none());
}

#[test]
fn detector_sound_on_full_two_state_space() {
    let cutoff = 100;
    let mut certified = 0;
    for m in TuringMachine::all(2) {
        let halts = run(&m, TapeState::blank(), 10 * cutoff).halted;
        let claim = nonhalt_detect(&m, cutoff);
        assert!(!(halts && claim), "{}", m.compact());
        certified += claim as usize;
    }
    assert!(certified > 10_000);
}

#[test]
fn detector_sound_on_late_halters() {
    // tiny windows force the static certificates to look at real halters
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 40 {
        let m = random_machine(&mut rng, 3);
        let r = run(&m, TapeState::blank(), 10_000);
        if r.halted && r.steps > 8 {
            assert!(!nonhalt_detect(&m, 2), "{}", m.compact());
            checked += 1;
        }
    }
    assert!(!nonhalt_detect(&tm("1RB1RH_1LB0RC_1LC1LA"), 2));
}

#[test]
fn depth_examples() {
    let one = logical_depth_estimate(&"1".parse().unwrap(), 1, 100);
    assert!(one.found);
    assert_eq!(one.depth_steps, Some(1));
    assert_eq!(one.best_description_bits, Some(6));

    let zero = logical_depth_estimate(&"0".parse().unwrap(), 2, 100);
    assert!(!zero.found);
    assert_eq!(zero.depth_steps, None);
}

/// Smallest tier and fastest time over all machines, by dense simulation.
fn brute_force_depth(target: &[u8], max_states: u8, cutoff: u64) -> Option<(u64, u64)> {
    for states in 1..=max_states {
        let best = TuringMachine::all(states)
            .filter_map(|m| {
                let r = dense_tm(&m, cutoff);
                let first = r.content.iter().position(|&c| c == 1)?;
                let last = r.content.iter().rposition(|&c| c == 1)?;
                (r.halted && &r.content[first..=last] == target).then_some(r.steps)
            })
            .min();
        if let Some(steps) = best {
            return Some((TuringMachine::description_bits(states), steps));
        }
    }
    None
}

#[test]
fn depth_matches_brute_force() {
    for target in ["1", "11", "101", "111", "1001"] {
        let t: BitString = target.parse().unwrap();
        let d = logical_depth_estimate(&t, 2, 200);
        let want = brute_force_depth(t.as_slice(), 2, 200);
        assert_eq!(d.best_description_bits.zip(d.depth_steps), want, "{target}");
        if let (Some(m), Some(steps)) = (&d.witness, d.depth_steps) {
            assert!(steps >= t.len() as u64);
            let r = dense_tm(m, 200);
            assert!(r.halted && r.steps == steps);
        }
    }
    // golden
    let d = logical_depth_estimate(&"11".parse().unwrap(), 2, 200);
    assert_eq!(d.depth_steps, Some(2));
}
