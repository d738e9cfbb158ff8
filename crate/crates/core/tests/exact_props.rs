use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;
use unitdist::{rat, sqrt_rational, QNum, Rat};

const RADICANDS: [u64; 6] = [1, 2, 3, 5, 6, 11];

fn qnum() -> impl Strategy<Value = QNum> {
    prop::collection::vec((0..RADICANDS.len(), -20i64..=20, 1i64..=12), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(QNum::zero(), |acc, (r, a, b)| acc + QNum::term(rat(a, b), RADICANDS[r]))
    })
}

fn nonneg_rat() -> impl Strategy<Value = Rat> {
    (0i64..5000, 1i64..5000).prop_map(|(a, b)| rat(a, b))
}

/// Bounds on the value from 256-bit integer square roots, computed
/// independently of `to_interval`.
fn oracle_bounds(q: &QNum) -> (f64, f64) {
    let k = 256u32;
    let scale = BigUint::one() << (2 * k);
    let den = Rat::from_integer(BigInt::one() << k);
    let (mut lo, mut hi) = (Rat::from_integer(0.into()), Rat::from_integer(0.into()));
    for (m, c) in q.terms() {
        let r = (BigUint::from(m) * &scale).sqrt();
        let exact = &r * &r == BigUint::from(m) * &scale;
        let a = Rat::from_integer(BigInt::from(r.clone())) / &den;
        let b = if exact { a.clone() } else { Rat::from_integer(BigInt::from(r + 1u32)) / &den };
        if c.is_positive() {
            lo += c * a;
            hi += c * b;
        } else {
            lo += c * b;
            hi += c * a;
        }
    }
    (lo.to_f64().unwrap(), hi.to_f64().unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in qnum(), b in qnum(), c in qnum()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn sqrt_squares_back(r in nonneg_rat()) {
        let s = sqrt_rational(&r).unwrap();
        prop_assert_eq!(&s * &s, QNum::from_rat(r));
    }

    #[test]
    fn text_round_trip(a in qnum()) {
        prop_assert_eq!(a.to_string().parse::<QNum>().unwrap(), a);
    }

    #[test]
    fn interval_is_sound(a in qnum(), bits in 1u32..=50) {
        let (lo, hi) = a.to_interval(bits);
        let (olo, ohi) = oracle_bounds(&a);
        // oracle interval is ~2^-250 wide; its rounding is within one ulp
        let slack = |x: f64| x.abs() * 4.0 * f64::EPSILON;
        prop_assert!(lo <= ohi + slack(ohi) && olo - slack(olo) <= hi, "{} not in [{}, {}]", a, lo, hi);
        let mag = olo.abs().max(ohi.abs()).max(1.0);
        prop_assert!(hi - lo <= 2f64.powi(-(bits as i32)) * mag);
    }
}
