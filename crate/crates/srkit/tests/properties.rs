use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use srkit::ambient::{dim_vectors, enumerate_lattice};
use srkit::asymptotics::{
    asymptotic_induced, asymptotic_singleton, asymptotic_total_distance, Entropy, EntropyMethod, InducedKind, Scenario,
};
use srkit::constructions::{construct_d2, construct_dn, construct_mds_lift, construct_msrd111_ext};
use srkit::distributions::{brute_distributions, macwilliams_ranklist, macwilliams_support, support_distribution};
use srkit::matq::q_power;
use srkit::{Field, Limits, LinearCode, Profile, Subspace, SubspaceTuple};

const PROFILES: [(u64, &str); 5] = [
    (2, "2x2,1x2"),
    (2, "2x3,1x1x2"),
    (3, "2x2,1x1"),
    (2, "1x3,1x2,1x1"),
    (4, "1x2,1x1"),
];

fn profile(i: usize) -> Profile {
    let (q, text) = PROFILES[i % PROFILES.len()];
    Profile::parse(&Field::with_order(q).unwrap(), text).unwrap()
}

fn random_code(i: usize, k: usize, seed: u64) -> LinearCode {
    let p = profile(i);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LinearCode::random(&p, k % (p.dim() + 1), &mut rng)
}

fn tuple_from(p: &Profile, raw: &[u32]) -> SubspaceTuple {
    let f = p.field();
    let q = f.q();
    let mut it = raw.iter().copied();
    SubspaceTuple::new(
        p.blocks()
            .iter()
            .map(|&(n, _)| {
                let k = it.next().unwrap_or(0) as usize % (n + 1);
                let vs: Vec<Vec<u32>> = (0..k)
                    .map(|_| (0..n).map(|_| it.next().unwrap_or(1) % q).collect())
                    .collect();
                Subspace::from_vectors(n, &vs, f)
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dual_is_an_involution(i in 0usize..5, k in 0usize..10, seed in any::<u64>()) {
        let c = random_code(i, k, seed);
        let dual = c.dual();
        prop_assert_eq!(c.dim() + dual.dim(), c.profile().dim());
        prop_assert_eq!(dual.dual().row_space(), c.row_space());
    }

    #[test]
    fn shortening_duality(i in 0usize..5, k in 0usize..10, seed in any::<u64>(), raw in prop::collection::vec(0u32..8, 24)) {
        let c = random_code(i, k, seed);
        let u = tuple_from(c.profile(), &raw);
        prop_assert!(c.duality_shorten_check(&u, &Limits::default()).unwrap());
        let short = c.shorten(&u).unwrap();
        let f = c.field().clone();
        for x in short.basis() {
            prop_assert!(c.contains(&x));
            prop_assert!(x.support(&f).leq(&u, &f));
        }
    }

    #[test]
    fn macwilliams_round_trip(i in 0usize..5, k in 0usize..10, seed in any::<u64>()) {
        let c = random_code(i, k, seed);
        let p = c.profile().clone();
        let lim = Limits::default();
        let mine = brute_distributions(&c, &lim).unwrap();
        let dual = brute_distributions(&c.dual(), &lim).unwrap();
        let card = c.cardinality();
        prop_assert_eq!(&macwilliams_support(&mine.support, &card, &p, &lim).unwrap(), &dual.support);
        let dual_card = c.dual().cardinality();
        prop_assert_eq!(macwilliams_support(&dual.support, &dual_card, &p, &lim).unwrap(), mine.support);
        prop_assert_eq!(macwilliams_ranklist(&mine.rank_list, &card, &p).unwrap(), dual.rank_list);
    }

    #[test]
    fn sphere_volume_is_monotone(i in 0usize..5) {
        let p = profile(i);
        let mut prev = BigUint::from(0u32);
        for r in 0..=p.big_n() {
            let v = p.sphere_volume(r);
            prop_assert!(v > prev);
            prev = v;
        }
        prop_assert_eq!(prev, p.cardinality());
    }

    #[test]
    fn extension_family_is_msrd(q in prop::sample::select(vec![2u64, 3]), m in 2usize..=3, s_raw in 1usize..=7) {
        let s = 1 + (s_raw - 1) % (m + m * (m - 1) / 2 + 1);
        let c = construct_msrd111_ext(&Field::with_order(q).unwrap(), m, s).unwrap();
        let w = c.msrd_check(&Limits::default()).unwrap();
        prop_assert!(w.is_msrd);
        prop_assert_eq!(w.d, Some(s + 2));
        prop_assert_eq!(c.dim(), m + 1);
    }

    #[test]
    fn asymptotic_ordering(eta in 0.0f64..=1.0, n in 1usize..=3) {
        let s = Scenario::uniform(2, n, 3).unwrap();
        let td = asymptotic_total_distance(eta, &s).unwrap();
        let sg = asymptotic_singleton(eta).unwrap();
        prop_assert!(td <= sg + 1e-12);
        prop_assert!((0.0..=1.0).contains(&td));
        let pl = asymptotic_induced(eta, 2, 3, InducedKind::Plotkin).unwrap();
        prop_assert!(pl <= sg + 1e-12);
        let e = Entropy::new(n, 3, 2).unwrap();
        if eta > 0.0 && eta <= e.epsilon() / n as f64 {
            let up = e.sphere_packing(eta, n, EntropyMethod::Ternary).unwrap();
            let low = e.sphere_covering(eta, n, EntropyMethod::Ternary).unwrap();
            prop_assert!(low <= up + 1e-9);
        }
    }
}

/// Constructed equal-`m` MSRD codes: `|C(U)|` depends only on `|u|`.
#[test]
fn shortened_sizes_of_msrd_codes() {
    let lim = Limits::default();
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let codes = [
        construct_mds_lift(&f2, 2, 4, 2).unwrap(),
        construct_d2(&Profile::parse(&f2, "2x2,1x2").unwrap()).unwrap().code,
        construct_dn(&Profile::parse(&f3, "2x2,2x2").unwrap()).unwrap(),
    ];
    for c in &codes {
        let p = c.profile();
        let m = p.equal_m().unwrap();
        let d = c.minimum_distance(&lim).unwrap();
        let dist = support_distribution(c, &lim).unwrap();
        for total in 0..=p.big_n() {
            let want = if total < d {
                BigUint::from(1u32)
            } else {
                q_power(p.q(), (m * (total - d + 1)) as u64)
            };
            for dims in dim_vectors(&p.ns(), total) {
                for u in enumerate_lattice(p, &dims, &lim).unwrap() {
                    assert_eq!(dist.shortened_size(&u, p), want, "{} at {dims:?}", p);
                    assert_eq!(c.shorten(&u).unwrap().cardinality(), want);
                }
            }
        }
    }
}

/// Monotone decrease and convexity of the entropy-based curves.
#[test]
fn entropy_curves_are_monotone() {
    for (n, m) in [(2usize, 4usize), (4, 4), (1, 3)] {
        let e = Entropy::new(n, m, 2).unwrap();
        let top = e.epsilon() / n as f64;
        let mut prev = (f64::INFINITY, f64::INFINITY);
        let mut hs = Vec::new();
        for k in 1..=50 {
            let eta = top * k as f64 / 50.0;
            let up = e.sphere_packing(eta, n, EntropyMethod::Ternary).unwrap();
            let low = e.sphere_covering(eta, n, EntropyMethod::Ternary).unwrap();
            assert!(up <= prev.0 + 1e-12 && low <= prev.1 + 1e-12);
            prev = (up, low);
            hs.push(1.0 - low);
        }
        // H is concave in ρ, so 1 - H(ηn) is convex along the grid.
        for w in hs.windows(3) {
            assert!(w[0] + w[2] - 2.0 * w[1] <= 1e-9);
        }
    }
}
