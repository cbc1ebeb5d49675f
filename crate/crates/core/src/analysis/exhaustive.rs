use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::metric::{asym_ball, ball_eh};
use super::ENUMERATION_LIMIT;
use crate::channel::{enumerate_patterns, inject_errors, pattern_count};
use crate::codec::CodeSpec;
use crate::combinatorics::{all_symbols, binomial};
use crate::error::{Error, Result};
use crate::word::{CompositeWord, ReceivedWord};

fn too_large(size: BigUint) -> Error {
    Error::TooLargeForEnumeration {
        size: size.to_string(),
        limit: ENUMERATION_LIMIT,
    }
}

/// Every word of `Σ_w^{m x n}`, row 0 most significant, each row in rank
/// order.
pub fn all_words(m: usize, n: usize, w: usize) -> Result<Vec<CompositeWord>> {
    let size = binomial(n, w).pow(m as u32);
    if size > BigUint::from(ENUMERATION_LIMIT) {
        return Err(too_large(size));
    }
    let symbols = all_symbols(n, w)?;
    let q = symbols.len();
    let total = q.pow(m as u32);
    Ok((0..total)
        .map(|mut index| {
            let mut rows = vec![symbols[0].clone(); m];
            for row in rows.iter_mut().rev() {
                *row = symbols[index % q].clone();
                index /= q;
            }
            CompositeWord::new(rows).expect("rows share n and w")
        })
        .collect())
}

/// Every codeword of a code small enough to enumerate its ambient space.
pub fn enumerate_code(spec: &CodeSpec) -> Result<Vec<CompositeWord>> {
    let p = spec.params();
    let words = all_words(p.m(), p.n(), p.w())?;
    let keep: Vec<bool> = words
        .par_iter()
        .map(|x| spec.is_codeword(x))
        .collect::<Result<_>>()?;
    Ok(words
        .into_iter()
        .zip(keep)
        .filter_map(|(x, k)| k.then_some(x))
        .collect())
}

/// Every channel output of `x` under at most `t` noisy rows with at most
/// `e` deletions each.
pub fn channel_outputs(x: &CompositeWord, t: usize, e: usize) -> Vec<ReceivedWord> {
    enumerate_patterns(x, t, e)
        .map(|pattern| inject_errors(x, &pattern).expect("enumerated patterns fit the word"))
        .collect()
}

/// Two codewords sharing a channel output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: CompositeWord,
    pub second: CompositeWord,
    pub output: ReceivedWord,
}

fn distinct(code: &[CompositeWord]) -> Vec<&CompositeWord> {
    let mut seen = HashSet::new();
    code.iter().filter(|x| seen.insert(*x)).collect()
}

/// Ground truth for the (t,e)-correcting property: `None` if no two
/// codewords share a reachable output, otherwise one colliding triple.
pub fn verify_caecc_exhaustive(
    code: &[CompositeWord],
    t: usize,
    e: usize,
) -> Result<Option<Collision>> {
    let code = distinct(code);
    let Some(first) = code.first() else {
        return Ok(None);
    };
    let work = pattern_count(first.m(), first.w(), t, e) * code.len();
    if work > BigUint::from(ENUMERATION_LIMIT) {
        return Err(too_large(work));
    }
    let outputs: Vec<Vec<ReceivedWord>> =
        code.par_iter().map(|x| channel_outputs(x, t, e)).collect();
    let mut owner: HashMap<&ReceivedWord, usize> = HashMap::new();
    for (i, outs) in outputs.iter().enumerate() {
        for out in outs {
            if let Some(&j) = owner.get(out) {
                if j != i {
                    return Ok(Some(Collision {
                        first: code[j].clone(),
                        second: code[i].clone(),
                        output: out.clone(),
                    }));
                }
            } else {
                owner.insert(out, i);
            }
        }
    }
    Ok(None)
}

/// Whether the radius-`radius` e-Hamming balls around the codewords are
/// pairwise disjoint.
pub fn balls_disjoint(code: &[CompositeWord], radius: usize, e: usize) -> Result<bool> {
    let code = distinct(code);
    let balls: Vec<Vec<CompositeWord>> = code
        .par_iter()
        .map(|x| ball_eh(x, radius, e))
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    Ok(balls.into_iter().flatten().all(|y| seen.insert(y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma4Report {
    /// Radius-1 2-Hamming balls pairwise disjoint.
    pub balls_disjoint: bool,
    /// Two deletions anywhere never confuse two codewords.
    pub two_caecc: bool,
}

impl Lemma4Report {
    /// Disjoint balls imply the 2-deletion property.
    pub fn implication_holds(&self) -> bool {
        !self.balls_disjoint || self.two_caecc
    }
}

pub fn verify_lemma4(code: &[CompositeWord]) -> Result<Lemma4Report> {
    let balls_disjoint = balls_disjoint(code, 1, 2)?;
    let code = distinct(code);
    let outputs: Vec<Vec<ReceivedWord>> = code
        .par_iter()
        .map(|x| asym_ball(x, 2))
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let two_caecc = outputs.into_iter().flatten().all(|y| seen.insert(y));
    Ok(Lemma4Report {
        balls_disjoint,
        two_caecc,
    })
}

/// Scans the space in rank order and keeps each word whose channel outputs
/// avoid those of every word kept so far.
pub fn greedy_max_code(
    m: usize,
    n: usize,
    w: usize,
    t: usize,
    e: usize,
) -> Result<Vec<CompositeWord>> {
    let space = all_words(m, n, w)?;
    let work = pattern_count(m, w, t, e) * space.len();
    if work > BigUint::from(ENUMERATION_LIMIT) {
        return Err(too_large(work));
    }
    let mut taken: HashSet<ReceivedWord> = HashSet::new();
    let mut code = Vec::new();
    for x in space {
        let outputs = channel_outputs(&x, t, e);
        if outputs.iter().all(|y| !taken.contains(y)) {
            taken.extend(outputs);
            code.push(x);
        }
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::metric::{code_distance, Distance};
    use crate::codec::Variant;

    #[test]
    fn space_enumeration_order() {
        let words = all_words(2, 4, 2).unwrap();
        assert_eq!(words.len(), 36);
        assert_eq!(words[0].to_text(), "1100\n1100\n");
        assert_eq!(words[1].to_text(), "1100\n1010\n");
        assert_eq!(words[35].to_text(), "0011\n0011\n");
        assert!(words.windows(2).all(|p| p[0] != p[1]));
        assert!(all_words(5, 20, 10).is_err());
    }

    #[test]
    fn construction_codes_correct_their_budget() {
        for t in 1..=2 {
            let spec = CodeSpec::uniform(2, 5, 2, t, 1).unwrap();
            let code = enumerate_code(&spec).unwrap();
            assert_eq!(verify_caecc_exhaustive(&code, t, 1).unwrap(), None);
            let d = code_distance(&code, 2).unwrap().unwrap();
            assert!(d >= Distance::Finite(t + 1));
        }
    }

    #[test]
    fn full_space_collides() {
        let space = all_words(2, 5, 2).unwrap();
        let collision = verify_caecc_exhaustive(&space, 1, 1).unwrap().unwrap();
        assert_ne!(collision.first, collision.second);
        assert!(channel_outputs(&collision.first, 1, 1).contains(&collision.output));
        assert!(channel_outputs(&collision.second, 1, 1).contains(&collision.output));
    }

    #[test]
    fn constructed_code_balls_disjoint() {
        let spec = CodeSpec::uniform(2, 5, 2, 2, 1).unwrap();
        let code = enumerate_code(&spec).unwrap();
        assert!(balls_disjoint(&code, 1, 1).unwrap());
        let spec = CodeSpec::uniform(3, 5, 2, 2, 2).unwrap();
        let code = enumerate_code(&spec).unwrap();
        assert!(balls_disjoint(&code, 1, 2).unwrap());
    }

    #[test]
    fn lemma4_on_two_tier_code() {
        assert!(
            verify_lemma4(&all_words(2, 5, 2).unwrap()[..1])
                .unwrap()
                .balls_disjoint
        );
        let spec = CodeSpec::new(3, 5, 2, Variant::TwoTier { t1: 2, t2: 1 }).unwrap();
        let code = enumerate_code(&spec).unwrap();
        let report = verify_lemma4(&code).unwrap();
        assert!(report.balls_disjoint && report.two_caecc);
    }

    #[test]
    fn greedy_small_cases() {
        let code = greedy_max_code(1, 4, 2, 1, 1).unwrap();
        assert!(code.len() >= 2);
        assert_eq!(verify_caecc_exhaustive(&code, 1, 1).unwrap(), None);
        assert_eq!(greedy_max_code(2, 4, 2, 0, 1).unwrap().len(), 36);
    }
}
