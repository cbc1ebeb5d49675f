//! Exhaustive and randomized decoding sweeps over every code variant.

use std::collections::HashMap;

use caecc::analysis::{all_words, enumerate_code};
use caecc::channel::{enumerate_patterns, inject_errors, random_pattern};
use caecc::combinatorics::all_symbols;
use caecc::syndrome::complete_syndrome;
use caecc::{CodeSpec, CompositeSymbol, CompositeWord, Payload, Variant};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn payload_from_index(index: u64, len: usize) -> Payload {
    Payload::new((0..len).rev().map(|i| index >> i & 1 == 1).collect())
}

#[test]
fn uniform_single_error_codes_decode_every_pattern() {
    for (m, n, w, t) in [(3, 5, 2, 1), (3, 5, 2, 2), (2, 7, 3, 1), (3, 7, 2, 2)] {
        let spec = CodeSpec::uniform(m, n, w, t, 1).unwrap();
        let bits = spec.payload_bits().unwrap();
        for index in 0..(1u64 << bits).min(512) {
            let payload = payload_from_index(index, bits);
            let word = spec.encode(&payload).unwrap();
            for pattern in enumerate_patterns(&word, t, 1) {
                let received = inject_errors(&word, &pattern).unwrap();
                assert_eq!(spec.decode(&received).unwrap(), payload);
            }
        }
    }
}

#[test]
fn uniform_double_error_code_corrects_every_pattern() {
    let spec = CodeSpec::uniform(2, 7, 3, 1, 2).unwrap();
    let code = enumerate_code(&spec).unwrap();
    assert!(!code.is_empty());
    for word in &code {
        for pattern in enumerate_patterns(word, 1, 2) {
            let received = inject_errors(word, &pattern).unwrap();
            assert_eq!(&spec.correct_word(&received).unwrap(), word);
        }
    }
}

#[test]
fn two_tier_code_corrects_mixed_patterns() {
    let (t1, t2) = (1, 1);
    let spec = CodeSpec::new(3, 5, 2, Variant::TwoTier { t1, t2 }).unwrap();
    let code = enumerate_code(&spec).unwrap();
    assert!(!code.is_empty());
    let mut checked = 0;
    for word in &code {
        for pattern in enumerate_patterns(word, t1 + t2, 2) {
            let doubles = pattern.rows().iter().filter(|d| d.len() == 2).count();
            if doubles > t2 {
                continue;
            }
            let received = inject_errors(word, &pattern).unwrap();
            assert_eq!(&spec.correct_word(&received).unwrap(), word);
            checked += 1;
        }
    }
    assert!(checked > code.len());
}

#[test]
fn generalized_code_corrects_tiered_patterns() {
    let variant = Variant::Generalized {
        t1: 1,
        e1: 1,
        t2: 1,
        e2: 2,
    };
    let spec = CodeSpec::new(3, 7, 3, variant).unwrap();
    let code = enumerate_code(&spec).unwrap();
    assert!(!code.is_empty());
    for word in &code {
        for pattern in enumerate_patterns(word, 2, 2) {
            let heavy = pattern.rows().iter().filter(|d| d.len() > 1).count();
            if heavy > 1 {
                continue;
            }
            let received = inject_errors(word, &pattern).unwrap();
            assert_eq!(&spec.correct_word(&received).unwrap(), word);
        }
    }
}

/// Draws a uniform codeword of a multi-order uniform code by completing
/// random information rows with symbols of the required syndromes.
fn random_codeword(
    spec: &CodeSpec,
    classes: &HashMap<Vec<u32>, Vec<CompositeSymbol>>,
    symbols: &[CompositeSymbol],
    rng: &mut ChaCha20Rng,
) -> CompositeWord {
    let params = spec.params();
    let (m, t) = (params.m(), params.t());
    let orders = spec.orders();
    loop {
        let info: Vec<CompositeSymbol> = (0..m - t)
            .map(|_| symbols[rng.gen_range(0..symbols.len())].clone())
            .collect();
        let columns: Vec<Vec<_>> = (1..=orders)
            .map(|order| {
                let column: Vec<_> = info
                    .iter()
                    .map(|s| caecc::syndrome::vt_syndrome(s.row(), order, spec.field()))
                    .collect();
                spec.outer_code(order).extend(&column).unwrap()
            })
            .collect();
        let mut rows = info;
        let mut complete = true;
        for i in m - t..m {
            let key: Vec<u32> = columns.iter().map(|c| c[i].value()).collect();
            match classes.get(&key) {
                Some(list) => rows.push(list[rng.gen_range(0..list.len())].clone()),
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            return CompositeWord::new(rows).unwrap();
        }
    }
}

#[test]
fn randomized_double_error_decoding() {
    let spec = CodeSpec::uniform(10, 17, 5, 2, 2).unwrap();
    let symbols = all_symbols(17, 5).unwrap();
    let mut classes: HashMap<Vec<u32>, Vec<CompositeSymbol>> = HashMap::new();
    for s in &symbols {
        let key = complete_syndrome(s.row(), 2, spec.field())
            .components()
            .iter()
            .map(|c| c.value())
            .collect();
        classes.entry(key).or_default().push(s.clone());
    }
    let mut rng = ChaCha20Rng::seed_from_u64(17);
    for _ in 0..10_000 {
        let word = random_codeword(&spec, &classes, &symbols, &mut rng);
        assert!(spec.is_codeword(&word).unwrap());
        let pattern = random_pattern(&word, 2, 2, &mut rng);
        let received = inject_errors(&word, &pattern).unwrap();
        assert_eq!(spec.correct_word(&received).unwrap(), word);
    }
}

#[test]
fn out_of_model_damage_is_reported() {
    let spec = CodeSpec::uniform(2, 7, 3, 1, 2).unwrap();
    let code = enumerate_code(&spec).unwrap();
    let mut failures = 0;
    for word in code.iter().take(50) {
        for pattern in enumerate_patterns(word, 2, 1) {
            if pattern.noisy_rows() < 2 {
                continue;
            }
            let received = inject_errors(word, &pattern).unwrap();
            let err = spec.correct_word(&received).unwrap_err();
            assert!(err.is_decoding_failure());
            failures += 1;
        }
    }
    assert!(failures > 0);
}

#[test]
fn membership_is_a_partition_by_coset() {
    // Shifting every parity syndrome by the same amount lands in another
    // coset of the outer code; the cosets tile the space.
    let space = all_words(2, 5, 2).unwrap();
    let spec = CodeSpec::uniform(2, 5, 2, 1, 1).unwrap();
    let members = space
        .iter()
        .filter(|x| spec.is_codeword(x).unwrap())
        .count();
    assert_eq!(members * 5, space.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_payloads_round_trip(seed in any::<u64>(), t in 1usize..=3) {
        let spec = CodeSpec::uniform(6, 17, 5, t, 1).unwrap();
        let bits = spec.payload_bits().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let payload = Payload::new((0..bits).map(|_| rng.gen()).collect());
        let word = spec.encode(&payload).unwrap();
        prop_assert!(spec.is_codeword(&word).unwrap());
        let pattern = random_pattern(&word, t, 1, &mut rng);
        let received = inject_errors(&word, &pattern).unwrap();
        for (row, orig) in received.rows().iter().zip(word.rows()) {
            prop_assert!(row.is_covered_by(orig.row()));
        }
        prop_assert_eq!(spec.decode(&received).unwrap(), payload);
    }
}
