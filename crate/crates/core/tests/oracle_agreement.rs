//! Fast paths checked against brute-force enumeration over finite fields.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selmer_core::cyclo::{behavior_in_lm, normalize_m, place_over};
use selmer_core::delta::{compute_unit_symbol, UnitSymbolInput};
use selmer_core::{BehaviorKind, CurveQ, ReductionKind};
use selmer_oracle::{has_pth_root, p_torsion_dimension, point_count, power_is_one};

const CURVES: [[i64; 5]; 7] = [
    [1, -1, 1, -1, -14],
    [0, -1, 1, -10, -20],
    [1, 0, 1, 4, -6],
    [0, 0, 1, -1, 0],
    [1, 1, 1, -10, -10],
    [0, 1, 1, -9, -15],
    [0, -1, 1, 0, 0],
];

fn curve(a: [i64; 5]) -> CurveQ {
    CurveQ::from_i64(a).unwrap()
}

#[test]
fn point_counts_match_enumeration() {
    for a in CURVES {
        let e = curve(a);
        for ell in [2u64, 3, 5, 7, 13] {
            if !e.is_good_at(ell) {
                continue;
            }
            let frob = e.trace_of_frobenius(ell).unwrap();
            for f in 1..=8u32 {
                if ell.pow(f) > 1_000_000 {
                    break;
                }
                let n = frob.point_count(f);
                assert!(n > BigInt::from(0));
                assert_eq!(n, BigInt::from(point_count(a, ell, f)), "{a:?} over F_{ell}^{f}");
            }
        }
    }
}

#[test]
fn torsion_dimension_matches_enumeration() {
    for a in CURVES {
        let e = curve(a);
        for ell in [2u64, 3, 5, 7, 11, 13, 19, 29, 31, 41] {
            if !e.is_good_at(ell) {
                continue;
            }
            for p in [3u64, 5, 7] {
                if p == ell {
                    continue;
                }
                for f in 1..=4u32 {
                    if ell.pow(f) > 30_000 {
                        break;
                    }
                    assert_eq!(
                        e.torsion_dimension(ell, f, p).unwrap(),
                        p_torsion_dimension(a, ell, f, p),
                        "{a:?}, ell = {ell}, f = {f}, p = {p}"
                    );
                }
            }
        }
    }
}

#[test]
fn torsion_dimension_grows_with_the_field() {
    for a in CURVES {
        let e = curve(a);
        for ell in [2u64, 5, 7, 11, 13, 29] {
            if !e.is_good_at(ell) {
                continue;
            }
            for p in [3u64, 5, 7] {
                if p == ell {
                    continue;
                }
                for f in 1..=4u32 {
                    let d = e.torsion_dimension(ell, f, p).unwrap();
                    for k in 2..=3u32 {
                        assert!(d <= e.torsion_dimension(ell, f * k, p).unwrap());
                    }
                    if d == 2 {
                        assert_eq!((ell.pow(f) - 1) % p, 0, "full torsion without mu_p");
                    }
                }
            }
        }
    }
}

#[test]
fn reduction_kind_only_flips_to_split_in_even_degree() {
    for a in CURVES {
        let e = curve(a);
        for ell in e.bad_primes().unwrap() {
            let base = e.reduction_at(ell, 1).unwrap().kind;
            for f in 1..=6u32 {
                let k = e.reduction_at(ell, f).unwrap().kind;
                assert_ne!(k, ReductionKind::Good);
                if k != base {
                    assert_eq!((base, k), (ReductionKind::NonsplitMult, ReductionKind::SplitMult));
                    assert_eq!(f % 2, 0);
                }
            }
        }
    }
}

#[test]
fn unramified_splitting_matches_pth_roots() {
    for p in [3u64, 5, 7] {
        for ell in [2u64, 11, 13, 19, 29, 31, 37, 41, 43, 71, 97] {
            if ell == p {
                continue;
            }
            let v = place_over(ell, p);
            if ell.pow(v.f_v) > 10_000 {
                continue;
            }
            for m in 2..60u64 {
                if m % ell == 0 || m % p == 0 {
                    continue;
                }
                let Ok((m, _)) = normalize_m(m, p) else { continue };
                let b = behavior_in_lm(&v, m, p).unwrap();
                assert_ne!(b.kind, BehaviorKind::Ramified);
                let split = has_pth_root(m as i64, ell, v.f_v, p);
                assert_eq!(b.kind == BehaviorKind::Split, split, "p = {p}, ell = {ell}, m = {m}");
            }
        }
    }
}

#[test]
fn unit_symbol_matches_field_exponentiation() {
    let e = curve([1, -1, 1, -1, -14]);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let v = place_over(17, 3);
    let e_full: u128 = (17u128 * 17 - 1) / 3;
    for _ in 0..200 {
        let s = rng.gen_range(1..=2u32);
        let d = loop {
            let d = rng.gen_range(1..5000u64);
            if d % 17 != 0 {
                break d;
            }
        };
        let inp = UnitSymbolInput::from_curve(&e, 17, 17u64.pow(s) * d).unwrap();
        let u = inp.unit().unwrap();
        assert_eq!(compute_unit_symbol(&inp, &v, 3).unwrap(), power_is_one(u as i64, 17, 2, e_full));
    }
}
