use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigonal::braid::{
    artin_apply, artin_equal_direct, artin_images, braid_equal, braid_from_pair, braid_to_sl2, burau, infinity_braid, u, v, BraidWord,
    FreeWord,
};
use trigonal::exact::{big, lattice_sum, laurent_gcd, quotient_of, smith_normal_form, IntMat, Lattice2, LaurentPoly};
use trigonal::invariants::{burau_minus_one_quotient, maximal_uniform_quotient, MonodromyData};
use trigonal::modular::{classify, congruence_member, image_lattice, matrix_to_word, word_to_matrix, Letter, ModularMatrix, ModularWord};
use trigonal::presentation::{abelianization, van_kampen, Flavor};

fn config(seed: u64) -> Config {
    Config { cases: 1000, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn braid(max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 0..max).prop_map(|l| BraidWord::new(&l))
}

fn free_word(max: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2, 3, -3]), 0..max).prop_map(|l| FreeWord::new(&l))
}

fn modular_word(max: usize) -> impl Strategy<Value = ModularWord> {
    (any::<bool>(), prop::collection::vec(prop::sample::select(vec![Letter::X, Letter::X2, Letter::Y]), 0..max))
        .prop_map(|(neg, l)| ModularWord::normalize(if neg { -1 } else { 1 }, &l))
}

fn sl2(max: usize) -> impl Strategy<Value = ModularMatrix> {
    modular_word(max).prop_map(|w| word_to_matrix(&w))
}

fn s(x: &str) -> BraidWord {
    BraidWord::parse(x).unwrap()
}

fn burau_at_minus_one(b: &BraidWord) -> ModularMatrix {
    let m = burau(b);
    ModularMatrix::new(m[0][0].eval_unit(-1), m[0][1].eval_unit(-1), m[1][0].eval_unit(-1), m[1][1].eval_unit(-1)).unwrap()
}

proptest! {
    #![proptest_config(config(0x7219))]
    #[test]
    fn braid_relation_in_all_models(b in braid(12)) {
        let l = s("s1.s2.s1").concat(&b);
        let r = s("s2.s1.s2").concat(&b);
        prop_assert!(artin_equal_direct(&l, &r));
        prop_assert_eq!(braid_to_sl2(&l), braid_to_sl2(&r));
        prop_assert_eq!(burau(&l), burau(&r));
    }
}

proptest! {
    #![proptest_config(config(0x7220))]
    #[test]
    fn u_cubed_is_v_squared_and_central(b in braid(12)) {
        prop_assert!(artin_equal_direct(&u().pow(3), &v().pow(2)));
        prop_assert!(artin_equal_direct(&b.concat(&u().pow(3)), &u().pow(3).concat(&b)));
        prop_assert!(braid_to_sl2(&u()).eq_psl(&ModularMatrix::x().inverse()));
        prop_assert!(braid_to_sl2(&v()).eq_psl(&ModularMatrix::y()));
    }
}

proptest! {
    #![proptest_config(config(0x7221))]
    #[test]
    fn artin_is_an_action(a in braid(8), b in braid(8), w in free_word(8)) {
        prop_assert_eq!(artin_apply(&a.concat(&b), &w), artin_apply(&a, &artin_apply(&b, &w)));
        prop_assert_eq!(artin_apply(&b.inverse(), &artin_apply(&b, &w)), w.clone());
        prop_assert_eq!(artin_apply(&b, &FreeWord::rho()), FreeWord::rho());
    }
}

proptest! {
    #![proptest_config(config(0x7222))]
    #[test]
    fn images_form_a_geometric_basis(b in braid(10)) {
        let imgs = artin_images(&b);
        let prod = imgs.iter().fold(FreeWord::identity(), |acc, w| acc.concat(w));
        prop_assert_eq!(prod, FreeWord::rho());
        for w in &imgs {
            // w = c a_i c^-1 with a freely reduced c
            let l = w.letters();
            prop_assert_eq!(l.len() % 2, 1);
            let k = l.len() / 2;
            prop_assert!(l[k] > 0);
            for i in 0..k {
                prop_assert_eq!(l[i], -l[l.len() - 1 - i]);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(0x7223))]
    #[test]
    fn normal_form_equality_matches_direct(a in braid(10), c in braid(6), flip in any::<bool>()) {
        // b is equal to a when flip is set, otherwise usually different
        let b = if flip { c.concat(&s("s1.s2.s1.s2^-1.s1^-1.s2^-1")).concat(&c.inverse()).concat(&a) } else { c.concat(&a) };
        prop_assert_eq!(braid_equal(&a, &b), artin_equal_direct(&a, &b));
    }
}

proptest! {
    #![proptest_config(config(0x7224))]
    #[test]
    fn infinity_braid_is_central_sign(d in 0u64..25) {
        let g = braid_to_sl2(&infinity_braid(d));
        let want = if d % 2 == 0 { ModularMatrix::identity() } else { ModularMatrix::minus_identity() };
        prop_assert_eq!(g, want);
        prop_assert_eq!(infinity_braid(d).degree(), 6 * d as i64);
    }
}

proptest! {
    #![proptest_config(config(0x7225))]
    #[test]
    fn burau_at_minus_one_is_conjugate_to_sl2(b in braid(14)) {
        let t = ModularMatrix::t();
        prop_assert_eq!(&(&t * &burau_at_minus_one(&b)) * &t.inverse(), braid_to_sl2(&b));
    }
}

proptest! {
    #![proptest_config(config(0x7226))]
    #[test]
    fn generator_sums_suffice(bs in prop::collection::vec(braid(8), 1..5), seed in any::<u64>()) {
        let gs: Vec<ModularMatrix> = bs.iter().map(braid_to_sl2).collect();
        let base = lattice_sum(&gs.iter().map(image_lattice).collect::<Vec<_>>());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut all: Vec<Lattice2> = gs.iter().map(image_lattice).collect();
        for _ in 0..50 {
            let k = rng.gen_range(1..5);
            let mut p = ModularMatrix::identity();
            for _ in 0..k {
                let g = &gs[rng.gen_range(0..gs.len())];
                p = if rng.gen_bool(0.5) { &p * g } else { &p * &g.inverse() };
            }
            all.push(image_lattice(&p));
        }
        prop_assert_eq!(quotient_of(&lattice_sum(&all)), quotient_of(&base));
    }
}

proptest! {
    #![proptest_config(config(0x7227))]
    #[test]
    fn two_quotient_computations_agree(bs in prop::collection::vec(braid(8), 0..5)) {
        let md = MonodromyData::new(bs, 0);
        prop_assert_eq!(burau_minus_one_quotient(&md), maximal_uniform_quotient(&md));
    }
}

fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMat {
    let mut m = IntMat::identity(n);
    for _ in 0..(3 * n) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            // row negation
            for c in 0..n {
                let v = -m.get(i, c).clone();
                m.set(i, c, v);
            }
        } else {
            let k = big(rng.gen_range(-3..=3));
            for c in 0..n {
                let v = m.get(i, c) + &k * m.get(j, c);
                m.set(i, c, v);
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(config(0x7228))]
    #[test]
    fn smith_form_unimodular_invariance(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-9i64..10, 16), seed in any::<u64>()) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect()).collect();
        let a = IntMat::from_rows(&data);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q) = (unimodular(&mut rng, rows), unimodular(&mut rng, cols));
        prop_assert_eq!(smith_normal_form(&p.mul(&a).mul(&q)), smith_normal_form(&a));
    }
}

proptest! {
    #![proptest_config(config(0x7229))]
    #[test]
    fn lattice_sum_ignores_order(gs in prop::collection::vec(sl2(8), 1..5)) {
        let ls: Vec<Lattice2> = gs.iter().map(image_lattice).collect();
        let mut rev = ls.clone();
        rev.reverse();
        prop_assert_eq!(quotient_of(&lattice_sum(&ls)), quotient_of(&lattice_sum(&rev)));
    }
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..3, prop::collection::vec(-4i64..5, 1..5)).prop_map(|(lo, c)| LaurentPoly::from_coeffs(lo, &c))
}

proptest! {
    #![proptest_config(config(0x722a))]
    #[test]
    fn laurent_gcd_divides_and_ignores_units(p in poly(), q in poly(), r in poly(), k in -4i64..5) {
        prop_assume!(!p.is_zero() && !q.is_zero() && !r.is_zero());
        let (a, b) = (&p * &r, &q * &r);
        let g = laurent_gcd(&[a.clone(), b.clone()]);
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(r.primitive().divides(&g));
        let unit = LaurentPoly::monomial(big(-1), k);
        prop_assert_eq!(laurent_gcd(&[&a * &unit, b.clone()]), g);
    }
}

proptest! {
    #![proptest_config(config(0x722b))]
    #[test]
    fn classification_is_conjugation_invariant(g in sl2(10), h in sl2(10)) {
        prop_assert_eq!(classify(&(&(&h * &g) * &h.inverse())), classify(&g));
    }
}

proptest! {
    #![proptest_config(config(0x722c))]
    #[test]
    fn quotient_order_is_det(g in sl2(12)) {
        let det = g.det_minus_id();
        if det != BigInt::from(0) {
            prop_assert_eq!(quotient_of(&image_lattice(&g)).order(), Some(BigInt::from(det.magnitude().clone())));
        }
    }
}

proptest! {
    #![proptest_config(config(0x722d))]
    #[test]
    fn congruence_members_form_a_subgroup(
        (m, n) in prop::sample::select(vec![(1u64, 5u64), (2, 4), (3, 6), (4, 4), (1, 9), (2, 8)]),
        picks in prop::collection::vec((0usize..3, any::<bool>()), 1..8),
        picks2 in prop::collection::vec((0usize..3, any::<bool>()), 1..8),
    ) {
        let (mi, ni) = (m as i64, n as i64);
        let gens = [
            ModularMatrix::t().pow(mi),
            ModularMatrix::from_i64(1, 0, ni, 1).unwrap(),
            ModularMatrix::from_i64(1 - ni, ni, -ni, 1 + ni).unwrap(),
        ];
        let word = |ps: &[(usize, bool)]| ps.iter().fold(ModularMatrix::identity(), |acc, &(i, inv)| {
            if inv { &acc * &gens[i].inverse() } else { &acc * &gens[i] }
        });
        let (g, h) = (word(&picks), word(&picks2));
        prop_assert!(congruence_member(&g, m, n).unwrap());
        prop_assert!(congruence_member(&(&g * &h), m, n).unwrap());
        prop_assert!(congruence_member(&g.inverse(), m, n).unwrap());
        prop_assert!(!congruence_member(&(&g * &ModularMatrix::x()), m, n).unwrap());
    }
}

proptest! {
    #![proptest_config(config(0x722e))]
    #[test]
    fn words_and_matrices_roundtrip(w in modular_word(20)) {
        prop_assert!(w.is_normal());
        let g = word_to_matrix(&w);
        prop_assert_eq!(&matrix_to_word(&g), &w);
        prop_assert_eq!(word_to_matrix(&matrix_to_word(&g)), g);
    }
}

proptest! {
    #![proptest_config(config(0x722f))]
    #[test]
    fn pair_search_reproduces_images(mu in braid(5)) {
        let (x, y) = (artin_apply(&mu, &FreeWord::gen(1)), artin_apply(&mu, &FreeWord::gen(2)));
        let found = braid_from_pair(&x, &y, 5).unwrap();
        prop_assert_eq!(artin_apply(&found, &FreeWord::gen(1)), x);
        prop_assert_eq!(artin_apply(&found, &FreeWord::gen(2)), y);
        prop_assert!(found.len() <= mu.len());
    }
}

/// Hurwitz move at position i: (b_i, b_{i+1}) -> (b_i b_{i+1} b_i^-1, b_i).
fn hurwitz(bs: &[BraidWord], i: usize) -> Vec<BraidWord> {
    let mut out = bs.to_vec();
    out[i] = bs[i + 1].conjugate(&bs[i]);
    out[i + 1] = bs[i].clone();
    out
}

proptest! {
    #![proptest_config(config(0x7230))]
    #[test]
    fn abelianization_is_hurwitz_invariant(bs in prop::collection::vec(braid(6), 2..5), i in 0usize..4) {
        let i = i % (bs.len() - 1);
        let md = MonodromyData::new(bs.clone(), 1);
        let moved = MonodromyData::new(hurwitz(&bs, i), 1);
        let a = abelianization(&van_kampen(&md, Flavor::Affine, false));
        prop_assert_eq!(&abelianization(&van_kampen(&moved, Flavor::Affine, false)), &a);
        prop_assert_eq!(&abelianization(&van_kampen(&md, Flavor::Affine, true)), &a);
        prop_assert_eq!(maximal_uniform_quotient(&moved), maximal_uniform_quotient(&md));
    }
}
