//! Grow-by-one dictionary compressor with exact bit accounting.
//!
//! Input is parsed greedily into phrases; each phrase is the longest phrase
//! already in the dictionary extended by one literal byte. Every emitted
//! token is `(phrase index, literal)` and costs `width(k) + 8` bits, where
//! `k` is the 0-based token position and `width(k)` is the number of bits
//! needed to address the `k + 1` phrases (including the empty phrase 0)
//! available at that point. No header is counted.
//!
//! If the input ends in the middle of a match, the pending phrase already
//! exists in the dictionary and is re-emitted as `(parent, last byte)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Version tag recorded in run manifests; bump whenever bit accounting changes.
pub const COMPRESSOR_VERSION: &str = "lz78-gbo/1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompressError {
    #[error("token {token}: phrase index {index} not in dictionary of {dictionary_len} phrases")]
    InvalidPhraseIndex {
        token: usize,
        index: u32,
        dictionary_len: usize,
    },
    #[error("line {line}: malformed token `{text}`")]
    MalformedLine { line: usize, text: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Token {
    pub index: u32,
    pub literal: u8,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenStream {
    tokens: Vec<Token>,
    bit_length: u64,
}

/// Bits needed to write a phrase index for the token at 0-based position `k`.
#[inline]
pub fn index_width(k: usize) -> u64 {
    (usize::BITS - k.leading_zeros()) as u64
}

impl TokenStream {
    /// Builds a stream from raw tokens, recomputing the bit length.
    pub fn from_tokens(tokens: Vec<Token>) -> Self {
        let bit_length = (0..tokens.len()).map(|k| index_width(k) + 8).sum();
        Self { tokens, bit_length }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn bit_length(&self) -> u64 {
        self.bit_length
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Debug text form: one `index<TAB>byte` line per token.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.tokens.len() * 8);
        for t in &self.tokens {
            out.push_str(&t.index.to_string());
            out.push('\t');
            out.push_str(&t.literal.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for TokenStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for TokenStream {
    type Err = CompressError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = Vec::new();
        for (i, line) in s.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let malformed = || CompressError::MalformedLine {
                line: i + 1,
                text: line.to_string(),
            };
            let (idx, lit) = line.split_once('\t').ok_or_else(malformed)?;
            let index = idx.parse().map_err(|_| malformed())?;
            let literal = lit.parse().map_err(|_| malformed())?;
            tokens.push(Token { index, literal });
        }
        Ok(TokenStream::from_tokens(tokens))
    }
}

/// Phrase trie stored as first-child / next-sibling links.
struct Trie {
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
    label: Vec<u8>,
    parent: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl Trie {
    fn with_capacity(cap: usize) -> Self {
        let mut t = Trie {
            first_child: Vec::with_capacity(cap),
            next_sibling: Vec::with_capacity(cap),
            label: Vec::with_capacity(cap),
            parent: Vec::with_capacity(cap),
        };
        t.first_child.push(NONE);
        t.next_sibling.push(NONE);
        t.label.push(0);
        t.parent.push(NONE);
        t
    }

    #[inline]
    fn child(&self, node: u32, byte: u8) -> Option<u32> {
        let mut c = self.first_child[node as usize];
        while c != NONE {
            if self.label[c as usize] == byte {
                return Some(c);
            }
            c = self.next_sibling[c as usize];
        }
        None
    }

    #[inline]
    fn insert(&mut self, node: u32, byte: u8) {
        let id = self.label.len() as u32;
        self.first_child.push(NONE);
        self.next_sibling.push(self.first_child[node as usize]);
        self.label.push(byte);
        self.parent.push(node);
        self.first_child[node as usize] = id;
    }
}

/// Greedy parse driver shared by [`compress`] and [`compressed_length`].
fn parse(data: &[u8], mut emit: impl FnMut(u32, u8)) {
    let mut trie = Trie::with_capacity(data.len() / 4 + 16);
    let mut node = 0u32;
    for &b in data {
        if let Some(c) = trie.child(node, b) {
            node = c;
            continue;
        }
        emit(node, b);
        trie.insert(node, b);
        node = 0;
    }
    if node != 0 {
        emit(trie.parent[node as usize], trie.label[node as usize]);
    }
}

pub fn compress(data: &[u8]) -> TokenStream {
    let mut tokens = Vec::new();
    parse(data, |index, literal| tokens.push(Token { index, literal }));
    TokenStream::from_tokens(tokens)
}

pub fn decompress(stream: &TokenStream) -> Result<Vec<u8>, CompressError> {
    // phrase k (1-based) = phrase[parent] + literal
    let mut parent: Vec<u32> = vec![0];
    let mut literal: Vec<u8> = vec![0];
    let mut depth: Vec<usize> = vec![0];
    let mut out = Vec::new();
    for (k, tok) in stream.tokens.iter().enumerate() {
        if tok.index as usize > k {
            return Err(CompressError::InvalidPhraseIndex {
                token: k,
                index: tok.index,
                dictionary_len: k + 1,
            });
        }
        let d = depth[tok.index as usize] + 1;
        let start = out.len();
        out.resize(start + d, 0);
        out[start + d - 1] = tok.literal;
        let mut p = tok.index as usize;
        let mut pos = start + d - 1;
        while p != 0 {
            pos -= 1;
            out[pos] = literal[p];
            p = parent[p] as usize;
        }
        parent.push(tok.index);
        literal.push(tok.literal);
        depth.push(d);
    }
    Ok(out)
}

/// Compressed size in bits; identical to `compress(data).bit_length()`.
pub fn compressed_length(data: &[u8]) -> u64 {
    let mut k = 0usize;
    let mut bits = 0u64;
    parse(data, |_, _| {
        bits += index_width(k) + 8;
        k += 1;
    });
    bits
}

/// Compressed sizes of the prefixes `data[..cut]` for each cut, in one parse.
///
/// The greedy parse is online, so the parse of a prefix agrees with the parse
/// of the whole input up to the cut, plus one flush token for a pending match.
/// Cuts must be non-decreasing and no larger than `data.len()`.
pub fn compressed_length_prefixes(data: &[u8], cuts: &[usize]) -> Vec<u64> {
    assert!(cuts.windows(2).all(|w| w[0] <= w[1]), "cuts must be sorted");
    assert!(
        cuts.last().is_none_or(|&c| c <= data.len()),
        "cut beyond input"
    );
    let mut out = Vec::with_capacity(cuts.len());
    let mut trie = Trie::with_capacity(data.len() / 4 + 16);
    let mut node = 0u32;
    let mut k = 0usize;
    let mut bits = 0u64;
    let mut next_cut = 0;
    for pos in 0..=data.len() {
        while next_cut < cuts.len() && cuts[next_cut] == pos {
            let pending = if node != 0 { index_width(k) + 8 } else { 0 };
            out.push(bits + pending);
            next_cut += 1;
        }
        if pos == data.len() || next_cut == cuts.len() {
            break;
        }
        let b = data[pos];
        if let Some(c) = trie.child(node, b) {
            node = c;
            continue;
        }
        bits += index_width(k) + 8;
        k += 1;
        trie.insert(node, b);
        node = 0;
    }
    out
}
