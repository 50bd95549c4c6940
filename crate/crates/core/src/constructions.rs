//! Permutation-channel codes built from a classical inner code by tagging
//! every symbol with a sequence number.
//!
//! Two tagging rules are provided:
//!
//! - positional ([`subset_construct`]): symbol `i` of the inner codeword gets
//!   tag `i`, so every codeword becomes a set of `l` distinct tagged symbols
//!   and the subset distance is exactly twice the inner Hamming distance;
//! - run-numbered ([`multiset_construct`]): a maximal run of equal symbols
//!   shares one tag, so codewords become multisets whose pairwise distance is
//!   at least the inner (insertion/deletion) Levenshtein distance.
//!
//! # Tag encoding
//!
//! A tagged symbol `(seq, payload)` with `seq` in `1..=l` and 0-based payload
//! index in `0..q` is stored as the composite 1-based symbol
//!
//! ```text
//! (seq - 1) * q + payload + 1
//! ```
//!
//! over an alphabet of size `l * q`. Both constructions use this encoding, so
//! codebook files written by either are portable. The encoding is monotone in
//! `(seq, payload)`, so the sorted roster of a received multiset is already in
//! tag order.

use std::fmt;

use rand::Rng;

use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::multiset::{parse_usize_list, Alphabet, Multiset};

/// Largest inner code the constructions will enumerate.
pub const MAX_INNER_CODEWORDS: usize = 1 << 16;

/// A classical block code over `{0, .., q-1}` given by its codeword list.
///
/// Codeword `i` encodes the information word whose base-`q` digits, most
/// significant first, spell `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCode {
    q: usize,
    length: usize,
    codewords: Vec<Vec<u32>>,
    declared_hamming: Option<usize>,
    declared_levenshtein: Option<usize>,
}

impl ClassicalCode {
    pub fn new(q: usize, codewords: Vec<Vec<u32>>) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let length = codewords
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidInnerCode("no codewords".into()))?;
        if length == 0 {
            return Err(Error::InvalidInnerCode("codeword length must be at least 1".into()));
        }
        for (i, w) in codewords.iter().enumerate() {
            if w.len() != length {
                return Err(Error::InvalidInnerCode(format!(
                    "codeword {i} has length {}, expected {length}",
                    w.len()
                )));
            }
            if let Some(&s) = w.iter().find(|&&s| s as usize >= q) {
                return Err(Error::InvalidInnerCode(format!(
                    "codeword {i} uses symbol index {s} outside 0..{q}"
                )));
            }
        }
        let mut sorted: Vec<&Vec<u32>> = codewords.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInnerCode("encoder is not injective".into()));
        }
        Ok(ClassicalCode {
            q,
            length,
            codewords,
            declared_hamming: None,
            declared_levenshtein: None,
        })
    }

    /// The binary (7,4,3) Hamming code in systematic form
    /// `(d1, d2, d3, d4, d1+d2+d4, d1+d3+d4, d2+d3+d4)`.
    pub fn hamming_7_4() -> Self {
        let codewords = (0u32..16)
            .map(|m| {
                let d = [(m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1];
                vec![
                    d[0],
                    d[1],
                    d[2],
                    d[3],
                    d[0] ^ d[1] ^ d[3],
                    d[0] ^ d[2] ^ d[3],
                    d[1] ^ d[2] ^ d[3],
                ]
            })
            .collect();
        let mut code = ClassicalCode::new(2, codewords).expect("valid code");
        code.declared_hamming = Some(3);
        code
    }

    /// The `q`-ary repetition code of the given length: one codeword `a^l` per symbol.
    pub fn repetition(q: usize, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidInnerCode("codeword length must be at least 1".into()));
        }
        let codewords = (0..q as u32).map(|a| vec![a; length]).collect();
        let mut code = ClassicalCode::new(q, codewords)?;
        code.declared_hamming = Some(length);
        code.declared_levenshtein = Some(2 * length);
        Ok(code)
    }

    pub fn with_declared_hamming(mut self, d: usize) -> Self {
        self.declared_hamming = Some(d);
        self
    }

    pub fn with_declared_levenshtein(mut self, d: usize) -> Self {
        self.declared_levenshtein = Some(d);
        self
    }

    /// Size of the inner alphabet.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Codeword length `l`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn codewords(&self) -> &[Vec<u32>] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn declared_hamming(&self) -> Option<usize> {
        self.declared_hamming
    }

    pub fn declared_levenshtein(&self) -> Option<usize> {
        self.declared_levenshtein
    }

    /// Number of information symbols `k`, when the code has exactly `q^k` words.
    pub fn dimension(&self) -> Option<usize> {
        let mut size = 1usize;
        for k in 0.. {
            if size == self.codewords.len() {
                return Some(k);
            }
            if size > self.codewords.len() || self.q == 1 {
                return None;
            }
            size = size.checked_mul(self.q)?;
        }
        unreachable!()
    }

    /// Base-`q` digits of `index`, most significant first, padded to `k` digits.
    pub fn info_word(&self, index: usize) -> Option<Vec<u32>> {
        let k = self.dimension()?;
        if index >= self.codewords.len() {
            return None;
        }
        let mut digits = vec![0u32; k];
        let mut rest = index;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % self.q) as u32;
            rest /= self.q;
        }
        Some(digits)
    }

    /// Codeword for an information word of `k` base-`q` digits.
    pub fn encode(&self, info: &[u32]) -> Result<&[u32]> {
        let k = self
            .dimension()
            .ok_or_else(|| Error::InvalidInnerCode("code size is not a power of q".into()))?;
        if info.len() != k {
            return Err(Error::LengthMismatch {
                left: info.len(),
                right: k,
            });
        }
        let mut index = 0usize;
        for &digit in info {
            if digit as usize >= self.q {
                return Err(Error::SymbolOutOfRange {
                    symbol: digit as usize,
                    q: self.q,
                });
            }
            index = index * self.q + digit as usize;
        }
        Ok(&self.codewords[index])
    }

    /// Exhaustive minimum Hamming distance; `None` for a one-word code.
    pub fn hamming_min_distance(&self) -> Option<usize> {
        self.min_pairwise(|a, b| a.iter().zip(b).filter(|(x, y)| x != y).count())
    }

    /// Exhaustive minimum insertion/deletion distance; `None` for a one-word code.
    pub fn levenshtein_min_distance(&self) -> Option<usize> {
        self.min_pairwise(levenshtein_distance)
    }

    fn min_pairwise(&self, dist: impl Fn(&[u32], &[u32]) -> usize) -> Option<usize> {
        let w = &self.codewords;
        (0..w.len())
            .flat_map(|i| ((i + 1)..w.len()).map(move |j| (i, j)))
            .map(|(i, j)| dist(&w[i], &w[j]))
            .min()
    }

    /// Checks every declared distance against exhaustive computation.
    pub fn validate_declared(&self) -> Result<()> {
        let checks = [
            ("Hamming", self.declared_hamming, self.hamming_min_distance()),
            ("Levenshtein", self.declared_levenshtein, self.levenshtein_min_distance()),
        ];
        for (name, declared, actual) in checks {
            if let Some(d) = declared {
                if actual != Some(d) {
                    return Err(Error::InvalidInnerCode(format!(
                        "declared {name} distance {d}, computed {actual:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Text form: header `q=<int> length=<int> count=<int>`, then one codeword
    /// per line as comma-separated 1-based symbols.
    pub fn to_text(&self) -> String {
        let mut out = format!("q={} length={} count={}\n", self.q, self.length, self.codewords.len());
        for w in &self.codewords {
            let line: Vec<String> = w.iter().map(|s| (s + 1).to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`ClassicalCode::to_text`]. The header may
    /// also carry `hamming=<int>` and `levenshtein=<int>` claims, which are
    /// validated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let (mut q, mut length, mut count, mut ham, mut lev) = (None, None, None, None, None);
        for token in header.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::syntax(format!("expected key=value, got {token:?}")).at_line(hline))?;
            let value: usize = value
                .parse()
                .map_err(|_| Error::syntax(format!("bad value for {key}")).at_line(hline))?;
            let slot = match key {
                "q" => &mut q,
                "length" => &mut length,
                "count" => &mut count,
                "hamming" => &mut ham,
                "levenshtein" => &mut lev,
                other => return Err(Error::syntax(format!("unknown header key {other:?}")).at_line(hline)),
            };
            *slot = Some(value);
        }
        let q = q.ok_or_else(|| Error::syntax("header lacks q=").at_line(hline))?;
        let length = length.ok_or_else(|| Error::syntax("header lacks length=").at_line(hline))?;
        let count = count.ok_or_else(|| Error::syntax("header lacks count=").at_line(hline))?;
        if count > MAX_INNER_CODEWORDS {
            return Err(Error::BudgetExceeded {
                required: count as u128,
                budget: MAX_INNER_CODEWORDS as u128,
            });
        }
        let mut words = Vec::with_capacity(count);
        let mut last = hline;
        for (line, body) in lines {
            last = line;
            let symbols = parse_usize_list(body).map_err(|e| e.at_line(line))?;
            if symbols.len() != length {
                return Err(Error::syntax(format!("expected {length} symbols, got {}", symbols.len())).at_line(line));
            }
            let word = symbols
                .into_iter()
                .map(|s| {
                    if (1..=q).contains(&s) {
                        Ok(s as u32 - 1)
                    } else {
                        Err(Error::SymbolOutOfRange { symbol: s, q })
                    }
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| e.at_line(line))?;
            words.push(word);
        }
        if words.len() != count {
            return Err(Error::Parse {
                line: last,
                message: format!("header declares {count} codewords, found {}", words.len()),
            });
        }
        let mut code = ClassicalCode::new(q, words).map_err(|e| e.at_line(last))?;
        code.declared_hamming = ham;
        code.declared_levenshtein = lev;
        code.validate_declared().map_err(|e| e.at_line(hline))?;
        Ok(code)
    }
}

/// An inner-code symbol carrying a sequence number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedSymbol {
    /// 1-based sequence number.
    pub seq: u32,
    /// 0-based inner symbol.
    pub payload: u32,
}

impl TaggedSymbol {
    /// Composite 1-based symbol `(seq - 1) * q + payload + 1`.
    pub fn encode(self, q: usize) -> usize {
        (self.seq as usize - 1) * q + self.payload as usize + 1
    }

    /// Inverse of [`TaggedSymbol::encode`].
    pub fn decode(symbol: usize, q: usize) -> Self {
        let index = symbol - 1;
        TaggedSymbol {
            seq: (index / q) as u32 + 1,
            payload: (index % q) as u32,
        }
    }
}

impl fmt::Display for TaggedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∘{}", self.seq, self.payload)
    }
}

fn composite_alphabet(inner: &ClassicalCode) -> Result<Alphabet> {
    Alphabet::new(inner.length * inner.q)
}

fn check_enumerable(inner: &ClassicalCode) -> Result<()> {
    if inner.len() > MAX_INNER_CODEWORDS {
        return Err(Error::BudgetExceeded {
            required: inner.len() as u128,
            budget: MAX_INNER_CODEWORDS as u128,
        });
    }
    Ok(())
}

fn check_received(inner: &ClassicalCode, received: &Multiset) -> Result<()> {
    let expected = inner.length * inner.q;
    if received.alphabet().size() != expected {
        return Err(Error::AlphabetMismatch {
            left: expected,
            right: received.alphabet().size(),
        });
    }
    Ok(())
}

/// Positional tags: `(p_1, .., p_l)` becomes `{1∘p_1, .., l∘p_l}`.
pub fn positional_tags(p: &[u32]) -> Vec<TaggedSymbol> {
    p.iter()
        .enumerate()
        .map(|(i, &payload)| TaggedSymbol {
            seq: i as u32 + 1,
            payload,
        })
        .collect()
}

/// Run tags: every maximal run of equal symbols shares one sequence number,
/// starting at 1 and increasing by one per run.
pub fn run_number(p: &[u32]) -> Vec<TaggedSymbol> {
    let mut seq = 0;
    let mut prev = None;
    p.iter()
        .map(|&payload| {
            if prev != Some(payload) {
                seq += 1;
                prev = Some(payload);
            }
            TaggedSymbol { seq, payload }
        })
        .collect()
}

fn tagged_codebook(inner: &ClassicalCode, tag: fn(&[u32]) -> Vec<TaggedSymbol>) -> Result<Codebook> {
    check_enumerable(inner)?;
    let alphabet = composite_alphabet(inner)?;
    let words = inner
        .codewords
        .iter()
        .map(|p| Multiset::from_elements(tag(p).into_iter().map(|t| t.encode(inner.q)), alphabet))
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(alphabet, words)
}

/// Positionally tagged subset code over `l * q` symbols. Its minimum
/// distance is twice the inner Hamming distance.
pub fn subset_construct(inner: &ClassicalCode) -> Result<Codebook> {
    tagged_codebook(inner, positional_tags)
}

/// Run-numbered multiset code over `l * q` symbols.
pub fn multiset_construct(inner: &ClassicalCode) -> Result<Codebook> {
    tagged_codebook(inner, run_number)
}

/// Reassembles a length-`l` word from a received tagged set: position `i`
/// holds the payload received with tag `i`, `None` (an erasure) when no
/// symbol carries that tag, and a uniformly random choice among the distinct
/// payloads when several do.
pub fn positional_buffer<R: Rng + ?Sized>(
    inner: &ClassicalCode,
    received: &Multiset,
    rng: &mut R,
) -> Result<(Vec<Option<u32>>, usize)> {
    check_received(inner, received)?;
    let q = inner.q;
    let mut collisions = 0;
    let buffer = (0..inner.length)
        .map(|pos| {
            let candidates: Vec<u32> = (0..q as u32)
                .filter(|&payload| received.multiplicity(pos * q + payload as usize + 1) > 0)
                .collect();
            match candidates.len() {
                0 => None,
                1 => Some(candidates[0]),
                n => {
                    collisions += 1;
                    Some(candidates[rng.random_range(0..n)])
                }
            }
        })
        .collect();
    Ok((buffer, collisions))
}

/// Exhaustive errors-and-erasures decoding: the codeword closest to `buffer`
/// on its non-erased positions, if it is the unique closest one.
pub fn errors_and_erasures_decode(inner: &ClassicalCode, buffer: &[Option<u32>]) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    let mut unique = false;
    for (i, w) in inner.codewords.iter().enumerate() {
        let d = w
            .iter()
            .zip(buffer)
            .filter(|(s, b)| matches!(b, Some(v) if v != *s))
            .count();
        match best {
            Some((_, bd)) if d > bd => {}
            Some((_, bd)) if d == bd => unique = false,
            _ => {
                best = Some((i, d));
                unique = true;
            }
        }
    }
    best.filter(|_| unique).map(|(i, _)| i)
}

/// Result of decoding a positionally tagged code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetDecoding {
    /// The reassembled inner word, `None` marking erasures.
    pub buffer: Vec<Option<u32>>,
    /// Positions where more than one payload carried the same tag.
    pub collisions: usize,
    /// Inner codeword index, or `None` on decoding failure.
    pub decoded: Option<usize>,
}

impl SubsetDecoding {
    pub fn erasures(&self) -> usize {
        self.buffer.iter().filter(|b| b.is_none()).count()
    }
}

/// Decodes a received multiset of the positionally tagged code: deletions
/// become erasures, insertions and substitutions become errors, and the inner
/// errors-and-erasures decoder finishes the job.
pub fn subset_decode<R: Rng + ?Sized>(
    inner: &ClassicalCode,
    received: &Multiset,
    rng: &mut R,
) -> Result<SubsetDecoding> {
    let (buffer, collisions) = positional_buffer(inner, received, rng)?;
    let decoded = errors_and_erasures_decode(inner, &buffer);
    Ok(SubsetDecoding {
        buffer,
        collisions,
        decoded,
    })
}

/// Insertion/deletion edit distance (no substitution move), computed by the
/// standard dynamic program. Equals `|a| + |b| - 2 LCS(a, b)`.
pub fn levenshtein_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j]
            } else {
                1 + prev[j + 1].min(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Exhaustive minimum-Levenshtein decoding of a payload sequence. Returns the
/// nearest codeword index when unique, and the minimum distance.
pub fn levenshtein_decode(inner: &ClassicalCode, sequence: &[u32]) -> (Option<usize>, usize) {
    let mut best = (0, usize::MAX);
    let mut unique = false;
    for (i, w) in inner.codewords.iter().enumerate() {
        let d = levenshtein_distance(w, sequence);
        if d < best.1 {
            best = (i, d);
            unique = true;
        } else if d == best.1 {
            unique = false;
        }
    }
    (unique.then_some(best.0), best.1)
}

/// Result of decoding a run-numbered code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecoding {
    /// Received payloads ordered by `(seq, payload)`.
    pub sequence: Vec<u32>,
    /// Inner codeword index, or `None` on decoding failure.
    pub decoded: Option<usize>,
    /// Levenshtein distance from `sequence` to the nearest codeword.
    pub distance: usize,
}

/// Decodes a received multiset of the run-numbered code: orders the tagged
/// symbols by `(seq, payload)`, strips the tags and runs the inner
/// insertion/deletion decoder.
pub fn multiset_decode(inner: &ClassicalCode, received: &Multiset) -> Result<RunDecoding> {
    check_received(inner, received)?;
    let sequence: Vec<u32> = received
        .elements()
        .map(|s| TaggedSymbol::decode(s, inner.q).payload)
        .collect();
    let (decoded, distance) = levenshtein_decode(inner, &sequence);
    Ok(RunDecoding {
        sequence,
        decoded,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const A: u32 = 0;
    const B: u32 = 1;
    const C: u32 = 2;

    fn tags(pairs: &[(u32, u32)]) -> Vec<TaggedSymbol> {
        pairs
            .iter()
            .map(|&(seq, payload)| TaggedSymbol { seq, payload })
            .collect()
    }

    /// Longest common subsequence by enumerating every subsequence of `a`.
    fn lcs_by_enumeration(a: &[u32], b: &[u32]) -> usize {
        fn is_subsequence(s: &[u32], of: &[u32]) -> bool {
            let mut it = of.iter();
            s.iter().all(|x| it.any(|y| y == x))
        }
        (0u32..(1 << a.len()))
            .filter_map(|mask| {
                let sub: Vec<u32> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
                is_subsequence(&sub, b).then_some(sub.len())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn run_numbering_examples() {
        assert_eq!(
            run_number(&[A, A, B, B, C, B]),
            tags(&[(1, A), (1, A), (2, B), (2, B), (3, C), (4, B)])
        );
        assert_eq!(run_number(&[A, A, A]), tags(&[(1, A), (1, A), (1, A)]));
        assert_eq!(run_number(&[A, B, A]), tags(&[(1, A), (2, B), (3, A)]));
    }

    #[test]
    fn tag_encoding_round_trip() {
        for q in 1..4 {
            for seq in 1..5 {
                for payload in 0..q as u32 {
                    let t = TaggedSymbol { seq, payload };
                    assert_eq!(TaggedSymbol::decode(t.encode(q), q), t);
                }
            }
        }
        assert_eq!(TaggedSymbol { seq: 3, payload: 1 }.encode(2), 6);
    }

    #[test]
    fn hamming_code_properties() {
        let h = ClassicalCode::hamming_7_4();
        assert_eq!(h.len(), 16);
        assert_eq!(h.dimension(), Some(4));
        assert_eq!(h.hamming_min_distance(), Some(3));
        h.validate_declared().unwrap();
        assert_eq!(h.encode(&[0, 0, 0, 0]).unwrap(), &[0; 7]);
        assert_eq!(h.encode(&[1, 0, 1, 1]).unwrap(), h.codewords()[11].as_slice());
        assert_eq!(h.info_word(11), Some(vec![1, 0, 1, 1]));
        assert!(h.encode(&[1, 0]).is_err());
        assert!(h.encode(&[2, 0, 0, 0]).is_err());
    }

    #[test]
    fn repetition_code_properties() {
        let r = ClassicalCode::repetition(3, 4).unwrap();
        assert_eq!(r.dimension(), Some(1));
        assert_eq!(r.levenshtein_min_distance(), Some(8));
        r.validate_declared().unwrap();
        assert!(ClassicalCode::repetition(2, 3)
            .unwrap()
            .with_declared_hamming(2)
            .validate_declared()
            .is_err());
    }

    #[test]
    fn invalid_inner_codes() {
        assert!(ClassicalCode::new(2, vec![]).is_err());
        assert!(ClassicalCode::new(2, vec![vec![0, 1], vec![0]]).is_err());
        assert!(ClassicalCode::new(2, vec![vec![0, 2]]).is_err());
        assert!(ClassicalCode::new(2, vec![vec![0, 1], vec![0, 1]]).is_err());
        assert_eq!(ClassicalCode::new(3, vec![vec![0], vec![1]]).unwrap().dimension(), None);
    }

    #[test]
    fn subset_construction_of_hamming_code() {
        let code = subset_construct(&ClassicalCode::hamming_7_4()).unwrap();
        assert_eq!(code.alphabet().size(), 14);
        assert_eq!(code.len(), 16);
        let p = code.parameters();
        assert_eq!(p.min_distance, 6);
        assert_eq!(p.max_cardinality, 7);
        assert_eq!(p.constant_cardinality, Some(7));
        assert_eq!(p.k, 4.0);
        assert!((p.n - 14f64.log2()).abs() < 1e-12);
        assert!(code.codewords().iter().all(Multiset::is_set));
    }

    #[test]
    fn subset_construction_small_cases() {
        let rep = subset_construct(&ClassicalCode::repetition(2, 3).unwrap()).unwrap();
        assert_eq!(rep.codewords()[0].distance(&rep.codewords()[1]).unwrap(), 6);

        let near = ClassicalCode::new(2, vec![vec![0, 1, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(subset_construct(&near).unwrap().min_distance(), 2);
    }

    #[test]
    fn multiset_construction_small_cases() {
        let rep = multiset_construct(&ClassicalCode::repetition(2, 4).unwrap()).unwrap();
        assert_eq!(rep.codewords()[0].to_string(), "{1,1,1,1}");
        assert_eq!(rep.codewords()[1].to_string(), "{2,2,2,2}");
        assert_eq!(rep.min_distance(), 8);

        let pair = ClassicalCode::new(2, vec![vec![A, A, B], vec![A, B, B]]).unwrap();
        let code = multiset_construct(&pair).unwrap();
        // q = 2: 1∘a -> 1, 2∘b -> 4
        assert_eq!(code.codewords()[0].to_string(), "{1,1,4}");
        assert_eq!(code.codewords()[1].to_string(), "{1,4,4}");
        assert_eq!(code.min_distance(), 2);
        assert!(code.codewords().iter().all(|w| w.cardinality() == 3));
    }

    #[test]
    fn levenshtein_examples_match_subsequence_oracle() {
        assert_eq!(levenshtein_distance(&[A, A, B], &[A, B, B]), 2);
        assert_eq!(lcs_by_enumeration(&[A, A, B], &[A, B, B]), 2);
        assert_eq!(levenshtein_distance(&[A, B, C], &[A, B, C]), 0);
        assert_eq!(levenshtein_distance(&[A; 4], &[B; 4]), 8);
        assert_eq!(levenshtein_distance::<u32>(&[], &[A, B]), 2);
        assert_eq!(levenshtein_distance(&[A, B, C, A], &[B, A, C]), 4 + 3 - 2 * lcs_by_enumeration(&[A, B, C, A], &[B, A, C]));
    }

    #[test]
    fn subset_decode_intact_deleted_and_inserted() {
        let h = ClassicalCode::hamming_7_4();
        let code = subset_construct(&h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sent = &code.codewords()[11];

        let intact = subset_decode(&h, sent, &mut rng).unwrap();
        assert_eq!(intact.decoded, Some(11));
        assert_eq!(h.info_word(intact.decoded.unwrap()), Some(vec![1, 0, 1, 1]));

        // Drop tag 3 and tag 6.
        let mut counts = sent.multiplicities().to_vec();
        for pos in [2usize, 5] {
            let payload = h.codewords()[11][pos] as usize;
            counts[pos * 2 + payload] = 0;
        }
        let damaged = Multiset::from_multiplicities(counts).unwrap();
        let out = subset_decode(&h, &damaged, &mut rng).unwrap();
        assert_eq!(out.erasures(), 2);
        assert_eq!(out.decoded, Some(11));

        // Insert a symbol duplicating tag 4 with the other payload. Whichever
        // payload the receiver keeps, one error is within reach of d = 3.
        let pos = 3usize;
        let other = 1 - h.codewords()[11][pos] as usize;
        let mut counts = sent.multiplicities().to_vec();
        counts[pos * 2 + other] += 1;
        let inserted = Multiset::from_multiplicities(counts).unwrap();
        let mut picks = [0usize; 2];
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = subset_decode(&h, &inserted, &mut rng).unwrap();
            assert_eq!(out.collisions, 1);
            assert_eq!(out.decoded, Some(11));
            picks[(out.buffer[pos] == Some(other as u32)) as usize] += 1;
        }
        assert!(picks[0] > 0 && picks[1] > 0, "both branches should occur: {picks:?}");
    }

    #[test]
    fn errors_and_erasures_boundary() {
        let h = ClassicalCode::hamming_7_4();
        let word: Vec<Option<u32>> = h.codewords()[5].iter().map(|&s| Some(s)).collect();
        // Three erasures can leave several codewords consistent.
        let mut three = word.clone();
        let mut ambiguous = false;
        for a in 0..7 {
            for b in (a + 1)..7 {
                for c in (b + 1)..7 {
                    three.clone_from(&word);
                    three[a] = None;
                    three[b] = None;
                    three[c] = None;
                    if errors_and_erasures_decode(&h, &three).is_none() {
                        ambiguous = true;
                    }
                }
            }
        }
        assert!(ambiguous);
    }

    #[test]
    fn multiset_decode_examples() {
        let rep = ClassicalCode::repetition(2, 4).unwrap();
        let code = multiset_construct(&rep).unwrap();
        assert_eq!(multiset_decode(&rep, &code.codewords()[0]).unwrap().decoded, Some(0));
        let one_left = Multiset::parse_roster("{1}", code.alphabet()).unwrap();
        let out = multiset_decode(&rep, &one_left).unwrap();
        assert_eq!(out.decoded, Some(0));
        assert_eq!(out.distance, 3);
        assert!(multiset_decode(&rep, &Multiset::empty(Alphabet::new(3).unwrap())).is_err());
    }

    #[test]
    fn inner_code_text_round_trip() {
        let h = ClassicalCode::hamming_7_4();
        let text = h.to_text();
        assert!(text.starts_with("q=2 length=7 count=16\n1,1,1,1,1,1,1\n"));
        let parsed = ClassicalCode::parse(&text).unwrap();
        assert_eq!(parsed.codewords(), h.codewords());
        let claimed = ClassicalCode::parse("q=2 length=2 count=2 hamming=2\n1,1\n2,2\n").unwrap();
        assert_eq!(claimed.declared_hamming(), Some(2));
        let wrong = ClassicalCode::parse("q=2 length=2 count=2 hamming=1\n1,1\n2,2\n").unwrap_err();
        assert!(matches!(wrong, Error::Parse { line: 1, .. }));
        let short = ClassicalCode::parse("q=2 length=2 count=2\n1,1\n2\n").unwrap_err();
        assert!(matches!(short, Error::Parse { line: 3, .. }));
    }
}
