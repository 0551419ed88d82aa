use proptest::prelude::*;
use selmer_core::cyclo::{behavior_in_lm, normalize_m, place_over};
use selmer_core::delta::{
    compute_unit_symbol, delta_supersingular_general, delta_supersingular_lm, UnitSymbolInput,
};
use selmer_core::selmer::local_delta;
use selmer_core::{
    selmer_dimension, BehaviorKind, CurveQ, FrobeniusCache, ReportJson, SplitBehavior, Verdict,
};

const SEMISTABLE: [[i64; 5]; 5] = [
    [1, -1, 1, -1, -14],
    [0, -1, 1, -10, -20],
    [1, 0, 1, 4, -6],
    [0, 0, 1, -1, 0],
    [1, 1, 1, -10, -10],
];

fn curve_strategy() -> impl Strategy<Value = CurveQ> {
    (0..SEMISTABLE.len()).prop_map(|i| CurveQ::from_i64(SEMISTABLE[i]).unwrap())
}

fn p_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

fn small_primes() -> Vec<u64> {
    (2u64..200).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pth_powers_do_not_change_behaviour(
        p in p_strategy(),
        ell in prop::sample::select(small_primes()),
        m in 2u64..400,
        a in 1u64..6,
    ) {
        prop_assume!(a % ell != 0);
        let Ok((m, _)) = normalize_m(m, p) else { return Ok(()) };
        let v = place_over(ell, p);
        let big = m.checked_mul(a.pow(p as u32)).unwrap();
        let (big_n, _) = normalize_m(big, p).unwrap();
        prop_assert_eq!(behavior_in_lm(&v, m, p).unwrap(), behavior_in_lm(&v, big_n, p).unwrap());
    }

    #[test]
    fn unit_symbol_ignores_pth_powers(
        p in p_strategy(),
        s in 1u32..3,
        d in 1u64..300,
        a in 2u64..8,
    ) {
        let e = CurveQ::from_i64([1, -1, 1, -1, -14]).unwrap();
        prop_assume!(d % 17 != 0 && a % 17 != 0);
        let v = place_over(17, p);
        let m = 17u64.pow(s) * d;
        let x = UnitSymbolInput::from_curve(&e, 17, m).unwrap();
        let y = UnitSymbolInput::from_curve(&e, 17, m * a.pow(p as u32)).unwrap();
        prop_assert_eq!(compute_unit_symbol(&x, &v, p).unwrap(), compute_unit_symbol(&y, &v, p).unwrap());
    }

    #[test]
    fn unit_symbol_trivial_when_exponent_kills_residues(
        p in p_strategy(),
        ell in prop::sample::select(small_primes()),
        s in 1u32..3,
        d in 1u64..300,
    ) {
        prop_assume!(ell != p && d % ell != 0);
        let v = place_over(ell, p);
        let q1 = num_traits::pow(num_bigint::BigUint::from(ell), v.f_v as usize) - 1u32;
        let exp = q1 / p;
        prop_assume!(&exp % (ell - 1) == num_bigint::BigUint::from(0u32));
        let inp = UnitSymbolInput {
            ell,
            n: 3,
            a: num_bigint::BigInt::from(5),
            b: num_bigint::BigInt::from(7),
            s,
            d,
        };
        prop_assume!(inp.unit().is_ok() && inp.unit().unwrap() != 0);
        prop_assert!(compute_unit_symbol(&inp, &v, p).unwrap());
    }

    #[test]
    fn split_places_contribute_nothing(e in curve_strategy(), p in p_strategy(), m in 2u64..300) {
        prop_assume!(e.is_good_at(p));
        let Ok(r) = selmer_dimension(&e, p, m, true) else { return Ok(()) };
        for c in &r.contributions {
            if c.behavior.kind == BehaviorKind::Split {
                prop_assert_eq!((c.lo, c.hi), (0, 0));
            }
        }
        let lo: u32 = r.contributions.iter().rev().map(|c| c.lo).sum();
        let hi: u32 = r.contributions.iter().rev().map(|c| c.hi).sum();
        prop_assert_eq!((lo, hi), (r.total_lo, r.total_hi));
        prop_assert_eq!(r.verdict, Verdict::from_totals(lo, hi));
    }

    #[test]
    fn reports_depend_on_the_normalized_m(
        e in curve_strategy(),
        p in p_strategy(),
        m in 2u64..200,
        a in 2u64..4,
    ) {
        prop_assume!(e.is_good_at(p));
        let Ok(r1) = selmer_dimension(&e, p, m, true) else { return Ok(()) };
        let r2 = selmer_dimension(&e, p, m * a.pow(p as u32), true).unwrap();
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn excluded_places_contribute_nothing(
        e in curve_strategy(),
        p in p_strategy(),
        m in 2u64..300,
        ell in prop::sample::select(small_primes()),
    ) {
        prop_assume!(e.is_good_at(p) && e.is_good_at(ell) && ell != p && m % ell != 0);
        let Ok((m, _)) = normalize_m(m, p) else { return Ok(()) };
        let v = place_over(ell, p);
        let b = behavior_in_lm(&v, m, p).unwrap();
        let (_, d) = local_delta(&e, p, m, &v, b, &FrobeniusCache::new()).unwrap();
        prop_assert_eq!((d.lo, d.hi), (0, 0));
    }

    #[test]
    fn json_round_trips(e in curve_strategy(), p in p_strategy(), m in 2u64..500) {
        let Ok(r) = selmer_dimension(&e, p, m, false) else { return Ok(()) };
        let s = r.to_json();
        let back: ReportJson = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}

#[test]
fn supersingular_cell_lies_in_the_general_bounds() {
    for p in [3u64, 5, 7] {
        let v = place_over(p, p);
        for m in [p, 2 * p, p * p * 2, 2, 3, 10] {
            let Ok((m, _)) = normalize_m(m, p) else { continue };
            let b = behavior_in_lm(&v, m, p).unwrap();
            let exact = delta_supersingular_lm(p, m, b);
            let Some(t) = b.t else { continue };
            let g = delta_supersingular_general(t, 1, (p - 1) as u32).unwrap();
            assert!(g.lo <= exact.lo && exact.hi <= g.hi, "p = {p}, m = {m}: {exact:?} vs {g:?}");
        }
    }
}

#[test]
fn wild_jump_matches_the_discriminant_of_the_tower() {
    use selmer_core::formal::Tower;
    for (p, m) in [(3u64, 3u64), (3, 6), (3, 2), (5, 5), (5, 2)] {
        let b = behavior_in_lm(&place_over(p, p), m, p).unwrap();
        let t = b.t.unwrap();
        let tower = Tower::build(p, m, 10).unwrap();
        assert_eq!((t + 1) * (p as u32 - 1), tower.different_exponent().unwrap());
        assert_ne!(b, SplitBehavior::SPLIT);
    }
}
