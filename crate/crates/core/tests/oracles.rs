//! The optimized engine against the brute-force oracle and tableau counts.

mod common;

use codim_lab::algebra::GradingSpec;
use codim_lab::asym::{hook_dim, partitions_of};
use codim_lab::codim::{codim, partial_graded_codim, Budget};
use common::*;
use num_bigint::BigUint;

#[test]
fn ordinary_codimensions_match_brute_force() {
    let b = Budget::default();
    for spec in [fib(), periodic0()] {
        for n in 1..=3 {
            let fast = codim(&spec, n, false, &b).unwrap().value as usize;
            assert_eq!(brute_codim(&spec, n, false, 16), fast, "{} n={n}", spec.word());
        }
    }
    let s = fib();
    assert_eq!(brute_codim(&s, 1, false, 16), 1);
    assert_eq!(brute_codim(&s, 2, false, 16), 2);
    assert_eq!(brute_codim(&s, 3, false, 16), 6);
}

#[test]
fn unital_codimensions_match_brute_force() {
    let b = Budget::default();
    for spec in [fib(), periodic0()] {
        for n in 1..=3 {
            let fast = codim(&spec, n, true, &b).unwrap().value as usize;
            assert_eq!(brute_codim(&spec, n, true, 12), fast, "{} n={n}", spec.word());
        }
    }
    assert_eq!(brute_codim(&fib(), 2, true, 12), 2);
}

#[test]
fn degree_four_matches_brute_force() {
    let b = Budget::default();
    for spec in [fib(), periodic0()] {
        let fast = codim(&spec, 4, false, &b).unwrap().value as usize;
        assert_eq!(brute_codim(&spec, 4, false, 8), fast, "{}", spec.word());
    }
}

#[test]
fn partial_codimensions_match_brute_force_for_every_grading() {
    let b = Budget::default();
    for spec in [fib(), periodic0()] {
        for g in GradingSpec::all() {
            for (k, nk) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)] {
                for unital in [false, true] {
                    let fast = partial_graded_codim(&spec, g, k, nk, unital, &b).unwrap().value as usize;
                    let brute = brute_partial_codim(&spec, g, k, nk, unital, 12);
                    assert_eq!(brute, fast, "{} {g} ({k},{nk}) unital={unital}", spec.word());
                }
            }
        }
    }
}

#[test]
fn hook_formula_matches_tableaux() {
    for n in 1..=6 {
        let mut sum = BigUint::from(0u32);
        for lambda in partitions_of(n) {
            let d = hook_dim(&lambda);
            assert_eq!(d, BigUint::from(syt_count(lambda.parts())), "{lambda:?}");
            sum += &d * &d;
        }
        assert_eq!(sum, (1..=n as u32).map(BigUint::from).product::<BigUint>());
    }
}
