mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use translab::bits::BitString;
use translab::coefficient::{least_squares_slope, ComputingSystem, EcaSystem};
use translab::compressor::{compress, compressed_length, decompress};
use translab::eca::{evolve, serialized_evolution, EcaRule};
use translab::enumeration::enumerate;
use translab::turing::{run, Execution, Step, TapeState};

use common::{dense_eca, dense_tm, exact_slope, random_machine};

#[test]
fn eca_matches_dense_array() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let rule: u8 = rng.gen();
        let len = rng.gen_range(1..=12);
        let init: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        let steps = rng.gen_range(0..=64);
        let dense = dense_eca(rule, &init, steps);
        let d = evolve(
            EcaRule::new(rule),
            &BitString::from_cells(init.clone()),
            steps,
        );
        assert_eq!(d.rows(), &dense[..], "rule {rule}");
        let flat: Vec<u8> = dense.concat().iter().map(|c| b'0' + c).collect();
        assert_eq!(serialized_evolution(EcaRule::new(rule), &init, steps), flat);
    }
}

#[test]
fn eca_background_flips() {
    // rule 1 turns an all-0 background to all-1 and back
    let dense = dense_eca(1, &[0], 6);
    let d = evolve(EcaRule::new(1), &"0".parse().unwrap(), 6);
    assert_eq!(d.rows(), &dense[..]);
    assert_eq!(d.backgrounds(), &[0, 1, 0, 1, 0, 1, 0]);
}

#[test]
fn tm_matches_dense_tape() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let states = rng.gen_range(1..=4);
        let m = random_machine(&mut rng, states);
        let limit = rng.gen_range(1..=500);
        let dense = dense_tm(&m, limit);
        let r = run(&m, TapeState::blank(), limit);
        assert_eq!(
            (r.halted, r.steps, r.ones, r.visited_extent),
            (dense.halted, dense.steps, dense.ones, dense.extent),
            "{}",
            m.compact()
        );
        let mut exec = Execution::new(TapeState::blank());
        while exec.steps < limit && exec.step(&m) == Step::Continue {}
        assert_eq!(exec.visited_content().unwrap(), dense.content);
    }
}

#[test]
fn slope_matches_exact_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let m = rng.gen_range(2..=12);
        let mut points: Vec<(i64, i64)> = (0..m)
            .map(|_| {
                (
                    rng.gen_range(-1000..1000),
                    rng.gen_range(-1_000_000..1_000_000),
                )
            })
            .collect();
        if points.iter().all(|p| p.0 == points[0].0) {
            points[0].0 += 1;
        }
        let float: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x as f64, y as f64)).collect();
        let got = least_squares_slope(&float).unwrap();
        let want = exact_slope(&points);
        let err = if want == 0.0 {
            got.abs()
        } else {
            ((got - want) / want).abs()
        };
        assert!(err <= 1e-12, "{got} vs {want}");
    }
}

#[test]
fn compressor_roundtrip_generated() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..10_000 {
        let len = rng.gen_range(0..300);
        let alphabet = [2u8, 3, 16, 255][i % 4] as u16 + 1;
        let data: Vec<u8> = (0..len)
            .map(|_| (rng.gen_range(0..alphabet)) as u8)
            .collect();
        let s = compress(&data);
        assert_eq!(decompress(&s).unwrap(), data);
        assert_eq!(s.bit_length(), compressed_length(&data));
    }
}

#[test]
fn compressor_separates_structure_from_noise() {
    let n = 10_000;
    let zeros = compressed_length(&vec![b'0'; n]);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random: Vec<u8> = (0..n).map(|_| rng.gen()).collect();
    let ratio = zeros as f64 / compressed_length(&random) as f64;
    assert!(ratio < 0.05, "{ratio}");

    let periodic: Vec<u8> = b"01".repeat(1000);
    let random: Vec<u8> = (0..2000).map(|_| rng.gen()).collect();
    assert!(compressed_length(&periodic) < compressed_length(&random));
}

#[test]
fn unary_ratio_decreases() {
    let ratios: Vec<f64> = [1_000usize, 10_000, 100_000]
        .iter()
        .map(|&n| compressed_length(&vec![b'1'; n]) as f64 / (8 * n) as f64)
        .collect();
    assert!(ratios[0] > ratios[1] && ratios[1] > ratios[2], "{ratios:?}");
}

#[test]
fn gray_order_prefix_and_neighbours() {
    let first: Vec<String> = enumerate(14).iter().map(ToString::to_string).collect();
    assert_eq!(
        first,
        [
            "0", "1", "00", "01", "11", "10", "000", "001", "011", "010", "110", "111", "101",
            "100"
        ]
    );
    let all = enumerate((1 << 13) - 2);
    for w in all.windows(2) {
        if w[0].len() == w[1].len() {
            assert_eq!(w[0].hamming(&w[1]), Some(1));
        }
    }
    assert_eq!(all.last().unwrap().len(), 12);
}

#[test]
fn eca_system_lengths_match_direct_compression() {
    let sys = EcaSystem(EcaRule::new(54));
    for init in enumerate(20) {
        let want: Vec<u64> = [3u64, 9, 27]
            .iter()
            .map(|&t| compressed_length(&sys.run(&init, t)))
            .collect();
        assert_eq!(sys.compressed_lengths(&init, &[3, 9, 27]), want);
    }
}
