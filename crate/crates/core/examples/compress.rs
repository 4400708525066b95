//! Token stream and bit cost of the dictionary compressor.

use translab::compressor::{compress, compressed_length, decompress, COMPRESSOR_VERSION};

fn main() {
    let text = b"abababababababab";
    let stream = compress(text);
    println!(
        "{COMPRESSOR_VERSION}: {} tokens, {} bits",
        stream.len(),
        stream.bit_length()
    );
    for (k, t) in stream.tokens().iter().enumerate() {
        println!("  {k:2}: phrase {:2} + {:?}", t.index, t.literal as char);
    }
    assert_eq!(decompress(&stream).unwrap(), text);

    for n in [1_000usize, 10_000, 100_000] {
        let unary = vec![b'1'; n];
        let bits = compressed_length(&unary);
        println!(
            "unary n={n:>6}: {bits:>6} bits, ratio {:.4}",
            bits as f64 / (8 * n) as f64
        );
    }
}
