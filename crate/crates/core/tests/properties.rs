mod common;

use std::sync::Arc;

use proptest::prelude::*;
use subshift_core::desub::{enumerate_fiber, Side};
use subshift_core::orbit::{agreement_radius, radius_series, DEFAULT_WINDOW};
use subshift_core::subst::{split_pair, unzip_pair};
use subshift_core::{OdometerDigits, RepresentedPoint, Substitution, System};

fn substitution() -> impl Strategy<Value = Substitution> {
    (2usize..=4, 2usize..=4)
        .prop_flat_map(|(k, p)| {
            proptest::collection::vec(proptest::collection::vec(0..k as u16, p), k)
        })
        .prop_map(|images| {
            let names = (0..images.len()).map(|a| a.to_string()).collect();
            Substitution::new(names, images).unwrap()
        })
}

fn system() -> impl Strategy<Value = Arc<System>> {
    substitution().prop_filter_map("primitive, one-to-one, infinite", |s| {
        if s.is_one_to_one() && s.is_primitive() {
            System::new(s).ok()
        } else {
            None
        }
    })
}

fn point() -> impl Strategy<Value = RepresentedPoint> {
    (
        system(),
        proptest::collection::vec(0u32..8, 0..3),
        proptest::collection::vec(0u32..8, 1..4),
        0usize..16,
    )
        .prop_map(|(sys, pre, per, pick)| {
            let p = sys.p() as u32;
            let digits = OdometerDigits::new(
                p,
                pre.into_iter().map(|d| d % p).collect(),
                per.into_iter().map(|d| d % p).collect(),
            )
            .unwrap();
            let fiber = enumerate_fiber(&sys, &digits).unwrap();
            fiber[pick % fiber.len()].clone()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn successor_is_integer_increment(base in 2u32..6, n in 0u64..100_000) {
        let x = OdometerDigits::from_integer(base, n);
        prop_assert_eq!(x.successor(), OdometerDigits::from_integer(base, n + 1));
    }

    #[test]
    fn digits_are_canonical(base in 2u32..5, pre in proptest::collection::vec(0u32..5, 0..4), per in proptest::collection::vec(0u32..5, 1..4), extra in 0usize..4) {
        let pre: Vec<u32> = pre.into_iter().map(|d| d % base).collect();
        let per: Vec<u32> = per.into_iter().map(|d| d % base).collect();
        let x = OdometerDigits::new(base, pre.clone(), per.clone()).unwrap();
        // unrolling the period into the preperiod or repeating it names the same element
        let mut pre2 = pre.clone();
        for i in 0..extra {
            pre2.push(per[i % per.len()]);
        }
        let mut per2: Vec<u32> = (0..per.len()).map(|i| per[(i + extra) % per.len()]).collect();
        per2.extend(per2.clone());
        prop_assert_eq!(OdometerDigits::new(base, pre2, per2).unwrap(), x.clone());
        prop_assert_eq!(x.first(12), (0..12).map(|i| if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] }).collect::<Vec<_>>());
    }

    #[test]
    fn prefix_and_suffix_iteration(s in substitution(), m in 0usize..5, len in 0usize..40) {
        let full = s.iterate(&[0], m).unwrap();
        let take = len.min(full.len());
        prop_assert_eq!(s.iterate_prefix(&[0], m, len), full[..take].to_vec());
        prop_assert_eq!(s.iterate_suffix(&[0], m, len), full[full.len() - take..].to_vec());
    }

    #[test]
    fn pair_substitution_projects(s in substitution(), q in 0u16..16) {
        let k = s.len();
        let q = q % (k * k) as u16;
        let pair = s.pair_substitution().unwrap();
        let (a, b) = split_pair(k, q);
        let (u, v) = unzip_pair(k, pair.image(q));
        prop_assert_eq!(u, s.image(a).to_vec());
        prop_assert_eq!(v, s.image(b).to_vec());
    }

    #[test]
    fn language_is_the_set_of_factors_of_iterates(sys in system(), n in 1usize..5) {
        let s = sys.substitution();
        // Once every iterate is at least n long, the length-n factors of
        // τ^(k+1)(a) are windows of images of those of τ^k(a); so the union
        // over k is final as soon as one more iterate adds nothing.
        let mut k = 0;
        while sys.p().pow(k as u32) < n { k += 1; }
        let mut seen = std::collections::BTreeSet::new();
        loop {
            let before = seen.len();
            for a in s.letters() {
                let big = s.iterate(&[a], k).unwrap();
                seen.extend(big.windows(n).map(|x| x.to_vec()));
            }
            if seen.len() == before && before > 0 { break; }
            k += 1;
        }
        prop_assert_eq!(s.language(n).unwrap(), seen);
    }

    #[test]
    fn points_rebuilt_from_entries_are_equal(x in point(), extra in 0usize..4) {
        let pre: Vec<_> = (0..x.preperiod_len() + extra).map(|i| x.entry(i).clone()).collect();
        let per: Vec<_> = (0..2 * x.period_len()).map(|j| x.entry(x.preperiod_len() + extra + j).clone()).collect();
        let sys = x.system();
        let advance = |seed: Option<u16>, side: Side| seed.map(|c| {
            // the chain letter `extra` levels up: `g^{(r - extra mod r) mod r}(c)`
            let s = sys.substitution();
            let r = sys.fixing_power(side, c).unwrap();
            (0..(r - extra % r) % r).fold(c, |l, _| match side {
                Side::Left => s.last_letter(l),
                Side::Right => s.first_letter(l),
            })
        });
        let y = RepresentedPoint::from_entries(
            sys,
            pre,
            per,
            advance(x.stream().left_seed, Side::Left),
            advance(x.stream().right_seed, Side::Right),
        ).unwrap();
        prop_assert_eq!(y, x);
    }

    #[test]
    fn shift_then_expand(x in point()) {
        let a = x.expand(40).unwrap();
        let b = x.shift().expand(39).unwrap();
        prop_assert_eq!(&a.letters[2..], &b.letters[..]);
    }

    #[test]
    fn radius_is_symmetric_and_shift_compatible(x in point(), pick in 0usize..16, n in 0usize..256) {
        let sys = x.system().clone();
        let fiber = enumerate_fiber(&sys, &x.digits()).unwrap();
        let y = fiber[pick % fiber.len()].clone();
        let series = radius_series(&x, &y, n, DEFAULT_WINDOW).unwrap();
        let wx = x.expand(n + DEFAULT_WINDOW).unwrap();
        let wy = y.expand(n + DEFAULT_WINDOW).unwrap();
        prop_assert_eq!(agreement_radius(&wx, &wy, n as i64, DEFAULT_WINDOW).unwrap(), series[n]);
        prop_assert_eq!(agreement_radius(&wy, &wx, n as i64, DEFAULT_WINDOW).unwrap(), series[n]);
        let (tx, ty) = (x.shift_by(n), y.shift_by(n));
        let sx = tx.expand(DEFAULT_WINDOW).unwrap();
        let sy = ty.expand(DEFAULT_WINDOW).unwrap();
        prop_assert_eq!(agreement_radius(&sx, &sy, 0, DEFAULT_WINDOW).unwrap(), series[n]);
        prop_assert_eq!(agreement_radius(&wx, &wx, n as i64, DEFAULT_WINDOW).unwrap(), DEFAULT_WINDOW);
    }
}
