//! Distance laws and decoder behaviour of the tagged constructions.

use multiset_codes::codebook::{channel_outcomes, guaranteed_correctable};
use multiset_codes::constructions::{
    levenshtein_distance, multiset_construct, multiset_decode, positional_buffer, subset_construct, subset_decode,
    ClassicalCode,
};
use multiset_codes::isomorphism::to_characteristic_vector;
use multiset_codes::ErrorPattern;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Random inner codes of 2 to 8 distinct words.
fn arb_inner(no_repeats: bool) -> impl Strategy<Value = ClassicalCode> {
    (2usize..=4, 1usize..=5).prop_flat_map(move |(q, len)| {
        prop::collection::btree_set(prop::collection::vec(0..q as u32, len), 2..=8).prop_filter_map(
            "needs two usable words",
            move |words| {
                let words: Vec<Vec<u32>> = words
                    .into_iter()
                    .filter(|w| !no_repeats || w.windows(2).all(|p| p[0] != p[1]))
                    .collect();
                ClassicalCode::new(q, words).ok().filter(|c| c.len() >= 2)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn positional_tags_double_hamming_distance(inner in arb_inner(false)) {
        let book = subset_construct(&inner).unwrap();
        let words = inner.codewords();
        for i in 0..words.len() {
            prop_assert!(book.codewords()[i].is_set());
            for j in 0..words.len() {
                let d = book.codewords()[i].distance(&book.codewords()[j]).unwrap();
                prop_assert_eq!(d, 2 * hamming(&words[i], &words[j]) as u64);
            }
        }
    }

    #[test]
    fn run_numbers_bound_levenshtein_distance(inner in arb_inner(false)) {
        let book = multiset_construct(&inner).unwrap();
        let words = inner.codewords();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let d = book.codewords()[i].distance(&book.codewords()[j]).unwrap();
                prop_assert!(d >= levenshtein_distance(&words[i], &words[j]) as u64);
            }
        }
    }

    #[test]
    fn run_numbers_reduce_to_positions_without_repeats(inner in arb_inner(true)) {
        prop_assert_eq!(multiset_construct(&inner).unwrap(), subset_construct(&inner).unwrap());
    }

    #[test]
    fn subset_codewords_have_one_symbol_per_tag(inner in arb_inner(false)) {
        let book = subset_construct(&inner).unwrap();
        for w in book.codewords() {
            let bits = to_characteristic_vector(w).unwrap();
            prop_assert_eq!(bits.weight(), inner.length());
            for chunk in bits.bits().chunks(inner.q()) {
                prop_assert_eq!(chunk.iter().filter(|&&b| b == 1).count(), 1);
            }
        }
    }
}

#[test]
fn deletions_become_erasures_only() {
    let inner = ClassicalCode::hamming_7_4();
    let book = subset_construct(&inner).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (index, sent) in book.codewords().iter().enumerate() {
        for rho in 0..=7 {
            for received in channel_outcomes(sent, ErrorPattern::new(0, rho, 0)) {
                let (buffer, collisions) = positional_buffer(&inner, &received, &mut rng).unwrap();
                assert_eq!(collisions, 0);
                assert_eq!(buffer.iter().filter(|b| b.is_none()).count(), rho as usize);
                for (slot, &symbol) in buffer.iter().zip(&inner.codewords()[index]) {
                    assert!(slot.is_none() || *slot == Some(symbol));
                }
                if rho <= 2 {
                    let decoding = subset_decode(&inner, &received, &mut rng).unwrap();
                    assert_eq!(decoding.decoded, Some(index));
                }
            }
        }
    }
}

#[test]
fn single_insertion_is_one_error_at_most() {
    let inner = ClassicalCode::hamming_7_4();
    let book = subset_construct(&inner).unwrap();
    for (index, sent) in book.codewords().iter().enumerate() {
        for received in channel_outcomes(sent, ErrorPattern::new(1, 0, 0)) {
            for seed in 0..4 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let decoding = subset_decode(&inner, &received, &mut rng).unwrap();
                assert!(decoding.collisions <= 1);
                assert_eq!(decoding.erasures(), 0);
                assert_eq!(decoding.decoded, Some(index));
            }
        }
    }
}

/// Every pattern `(s, rho, t)` with `2(s + rho + 2t) < d_L` of the inner
/// code is corrected by the run-numbered decoder.
fn check_run_decoder_radius(inner: &ClassicalCode) -> usize {
    let d_l = inner.levenshtein_min_distance().unwrap() as u64;
    let book = multiset_construct(inner).unwrap();
    let mut checked = 0;
    for s in 0..=3 {
        for rho in 0..=3 {
            for t in 0..=1 {
                let p = ErrorPattern::new(s, rho, t);
                if !guaranteed_correctable(d_l, p) {
                    continue;
                }
                for (index, sent) in book.codewords().iter().enumerate() {
                    if u64::from(rho + t) > sent.cardinality() {
                        continue;
                    }
                    for received in channel_outcomes(sent, p) {
                        let decoding = multiset_decode(inner, &received).unwrap();
                        assert_eq!(decoding.decoded, Some(index), "pattern {p} received {received}");
                        checked += 1;
                    }
                }
            }
        }
    }
    checked
}

#[test]
fn run_decoder_corrects_within_radius() {
    let rep = ClassicalCode::repetition(2, 4).unwrap();
    assert_eq!(rep.levenshtein_min_distance(), Some(8));
    assert!(check_run_decoder_radius(&rep) > 0);

    let rep3 = ClassicalCode::repetition(3, 3).unwrap();
    assert!(check_run_decoder_radius(&rep3) > 0);

    // Words with long runs and Levenshtein distance 6.
    let runs = ClassicalCode::new(2, vec![vec![0, 0, 0, 1, 1, 1], vec![1, 1, 1, 0, 0, 0]]).unwrap();
    assert_eq!(runs.levenshtein_min_distance(), Some(6));
    assert!(check_run_decoder_radius(&runs) > 0);
}
