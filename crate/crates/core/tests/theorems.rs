use horadam::catalog::draw_params;
use horadam::exact::{binomial, pow_int};
use horadam::sequences::{preset, term};
use horadam::theorems::{reciprocal_sum, singularity_scan, theorem_sum, SumAssignment, TheoremSelector};
use horadam::{Error, HoradamParams, Rational, Scalar, SequenceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use SequenceKind::{U, V, W};

type Q = Rational;

fn sel(t: u8, v: u8, kind: SequenceKind) -> TheoremSelector {
    TheoremSelector::new(t, v, kind).unwrap()
}

fn draw_assignment(rng: &mut impl Rng) -> SumAssignment {
    let mut i = || rng.gen_range(-6..=6);
    let (n, m, r, s) = (i(), i(), i(), i());
    SumAssignment::new(n, m, r, s, rng.gen_range(0..=5))
}

#[test]
fn theorem2_by_hand_for_fibonacci() {
    // variant 1 with m−s = 2, m−r = 1, d = 1, q = −1:
    // Σ (−1)^j (−1)^{k−j} C(k,j) F_2^j F_1^{k−j} w_{n−2k+j} = (−1)^k w_n
    let w = preset::<Q>("fibonacci").unwrap().with_initial(Q::from_int(3), Q::from_int(2));
    let (n, k) = (4i64, 2i64);
    let mut total = Q::from_int(0);
    for j in 0..=k {
        let c = Q::from_bigint(&binomial(k, j).unwrap());
        total += pow_int(&Q::from_int(-1), k).unwrap() * c * term(&w, W, n - 2 * k + j);
    }
    let report = theorem_sum(&sel(2, 1, W), &w, &SumAssignment::new(n, 2, 1, 0, k)).unwrap();
    assert_eq!(report.direct, total);
    assert_eq!(report.closed_form, term(&w, W, n));
}

#[test]
fn triple_agreement_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for s in TheoremSelector::all() {
        let mut agreed = 0;
        for _ in 0..60 {
            let params = draw_params::<Q>(&mut rng, 9);
            let a = draw_assignment(&mut rng);
            match theorem_sum(&s, &params, &a) {
                Ok(r) => {
                    assert!(r.equal, "{s} {a:?}");
                    agreed += 1;
                }
                Err(Error::GuardViolation { .. }) => {}
                Err(Error::SingularSummand { index, .. }) => {
                    assert!(s.is_reciprocal());
                    let seq = if s.theorem() == 5 { U } else { s.kind() };
                    assert_eq!(term(&params, seq, index), Q::from_int(0));
                }
                Err(e) => panic!("{s}: {e}"),
            }
        }
        assert!(agreed > 20, "{s}: only {agreed}");
    }
}

#[test]
fn specializations_match_w_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for s in TheoremSelector::all().into_iter().filter(|s| s.kind() == W) {
        for _ in 0..15 {
            let params = draw_params::<Q>(&mut rng, 9);
            let a = draw_assignment(&mut rng);
            let as_u = params.with_initial(Q::from_int(0), Q::from_int(1));
            let as_v = params.with_initial(Q::from_int(2), params.p().clone());
            for (kind, w_params) in [(U, as_u), (V, as_v)] {
                let special = theorem_sum(&s.with_kind(kind), &params, &a);
                let general = theorem_sum(&s, &w_params, &a);
                match (special, general) {
                    (Ok(x), Ok(y)) => {
                        assert_eq!(x.direct, y.direct, "{s} {kind}");
                        assert_eq!(x.closed_form, y.closed_form);
                    }
                    (Err(x), Err(y)) => assert_eq!(std::mem::discriminant(&x), std::mem::discriminant(&y)),
                    (x, y) => panic!("{s} {kind}: {x:?} vs {y:?}"),
                }
            }
        }
    }
}

#[test]
fn swapped_variants_follow_from_the_first_three() {
    // variants 4–6 of theorems 2, 4, 6 are variants 1–3 with r → −s, s → −r
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    for theorem in [2, 4, 6] {
        for v in 1..=3 {
            for _ in 0..20 {
                let params = draw_params::<Q>(&mut rng, 9);
                let a = draw_assignment(&mut rng);
                let low = theorem_sum(&sel(theorem, v, W), &params, &a.swapped());
                let high = theorem_sum(&sel(theorem, v + 3, W), &params, &a);
                match (low, high) {
                    (Ok(x), Ok(y)) => {
                        assert_eq!(x.direct, y.direct);
                        assert_eq!(x.closed_form, y.closed_form);
                    }
                    (Err(_), Err(_)) => {}
                    (x, y) => panic!("theorem {theorem}.{v}: {x:?} vs {y:?}"),
                }
            }
        }
    }
}

#[test]
fn reciprocal_sums_scale_to_their_linear_partners() {
    // Theorem 6.v and 4.v telescope to the same right side (up to q^{−dk} for
    // v = 3, 6), as do theorems 5.v and 3.v.
    let mut rng = ChaCha8Rng::seed_from_u64(80);
    let mut compared = 0;
    for _ in 0..40 {
        let params = draw_params::<Q>(&mut rng, 9);
        let a = draw_assignment(&mut rng);
        let twist = pow_int(params.q(), -(a.r - a.s) * a.k).unwrap();
        let pairs = (1..=6).map(|v| (6, 4, v, v % 3 == 0)).chain((1..=2).map(|v| (5, 3, v, true)));
        for (recip, linear, v, twisted) in pairs {
            let (Ok(x), Ok(y)) = (
                reciprocal_sum(&sel(recip, v, W), &params, &a),
                theorem_sum(&sel(linear, v, W), &params, &a),
            ) else {
                continue;
            };
            let scale = if twisted { twist.clone() } else { Q::from_int(1) };
            assert_eq!(x.direct * scale, y.direct, "{recip}.{v} vs {linear}.{v}");
            compared += 1;
        }
    }
    assert!(compared > 100);
}

#[test]
fn theorem2_k0_is_flagged_not_rejected() {
    let params = HoradamParams::<Q>::new(Q::from_int(1), Q::from_int(2), Q::from_int(3), Q::from_int(5)).unwrap();
    for v in 1..=6 {
        let r = theorem_sum(&sel(2, v, W), &params, &SumAssignment::new(2, 3, 1, -1, 0)).unwrap();
        assert!(r.equal && r.outside_hypothesis);
    }
    let r = theorem_sum(&sel(3, 1, W), &params, &SumAssignment::new(2, 3, 1, -1, 0)).unwrap();
    assert!(!r.outside_hypothesis);
}

#[test]
fn scan_examples() {
    let fib = preset::<Q>("fibonacci").unwrap();
    // k = 3, stride 1 from n = 3 touches u_0..u_3; only u_0 vanishes
    let scan = singularity_scan(&sel(5, 1, U), &fib, &SumAssignment::new(3, 2, 1, 0, 3));
    assert_eq!(scan.len(), 5);
    assert_eq!(scan.iter().filter(|e| e.zero).map(|e| e.index).collect::<Vec<_>>(), vec![0]);
    let w = fib.with_initial(Q::from_int(3), Q::from_int(2));
    let scan = singularity_scan(&sel(6, 3, W), &w, &SumAssignment::new(6, 4, 1, 0, 4));
    assert!(scan.iter().all(|e| !e.zero && (1..=6).contains(&e.index)));
    // the number of entries is the number of distinct denominator indices
    let wide = singularity_scan(&sel(6, 3, W), &w, &SumAssignment::new(20, 4, 2, 0, 8));
    assert_eq!(wide.len(), 10);
}
