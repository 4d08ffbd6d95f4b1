mod common;

use maxplus::constructions::tilde_family;
use maxplus::jsr::{
    certify_jsr_negative, jsr_exact_finite, jsr_upper_bound, normalize, normalized_closure, urk_exact_finite,
    urk_upper_bound, ClosureGraph,
};
use maxplus::oracle::{brute_closure, brute_jsr_trunc, brute_urk_set};
use maxplus::{Int, MatrixFamily, Rational, TropicalMatrix};
use rand::Rng;

fn fam(ms: &[&[&[i64]]]) -> MatrixFamily {
    MatrixFamily::new(ms.iter().map(|m| TropicalMatrix::from_ints(m).unwrap()).collect()).unwrap()
}

#[test]
fn bounds_agree_with_unpruned_enumeration() {
    let mut rng = common::rng(21);
    for _ in 0..150 {
        let f = common::family(&mut rng, 3, 3, 2, 0.3);
        let l = rng.gen_range(1..=5);
        let brute = brute_jsr_trunc(&f, l).unwrap();
        assert_eq!(jsr_upper_bound(&f, l).unwrap(), brute.upper, "{f:?}");

        let first_negative = brute.per_length.iter().position(|m| m.rho.is_negative());
        let cert = certify_jsr_negative(&f, l).unwrap();
        assert_eq!(cert.as_ref().map(|c| c.word.len()), first_negative.map(|i| i + 1));
        if let Some(c) = cert {
            let rho = maxplus::spectral::spectral_radius(&f.product(&c.word).unwrap()).unwrap();
            assert_eq!(rho.div_len(c.word.len()), c.value);
        }
        assert_eq!(urk_upper_bound(&f, l).unwrap(), brute_urk_set(&f, l).unwrap());
    }
}

#[test]
fn exact_value_is_bracketed_by_truncations() {
    let mut rng = common::rng(22);
    for _ in 0..100 {
        let f = common::finite_family(&mut rng, 3, 2, 1);
        let exact = jsr_exact_finite(&f).unwrap();
        let l = 8;
        let upper = brute_jsr_trunc(&f, l).unwrap().upper;
        assert!(exact <= upper);
        let d = f.dim() as i64;
        let gap = upper.finite_difference(&exact).unwrap();
        assert!(gap * num_rational::BigRational::from_integer(l.into()) <= num_rational::BigRational::from_integer((2 * (d + 1)).into()));
    }
}

#[test]
fn alternating_pair() {
    let f = fam(&[&[&[0, -1], &[-1, -1]], &[&[-1, -1], &[-1, 0]]]);
    let exact = jsr_exact_finite(&f).unwrap();
    let t = brute_jsr_trunc(&f, 12).unwrap();
    assert!(exact <= t.upper);
    let gap = t.upper.finite_difference(&exact).unwrap();
    assert!(gap <= num_rational::BigRational::new(1.into(), 12.into()));
    assert_eq!(exact, Rational::ratio(-1, 2));
}

#[test]
fn closure_matches_products() {
    let f = fam(&[&[&[0, -1], &[-1, 0]], &[&[-1, 0], &[0, -1]]]);
    let c = normalized_closure(&f, 1000).unwrap();
    assert!(c.len() <= 125);
    let brute = brute_closure(&f, 10).unwrap();
    assert_eq!(brute.len(), c.len());
    assert!(c.elements.iter().all(|m| brute.contains(m)));

    let mut rng = common::rng(23);
    for _ in 0..100 {
        let f = common::finite_family(&mut rng, 3, 2, 1);
        let c = normalized_closure(&f, 100_000).unwrap();
        let depth = c.witnesses.iter().map(Vec::len).max().unwrap();
        if f.len().pow(depth as u32 + 1) > 50_000 {
            continue;
        }
        let brute = brute_closure(&f, depth + 1).unwrap();
        assert_eq!(brute.len(), c.len());
        for (m, w) in c.elements.iter().zip(&c.witnesses) {
            assert!(brute.contains(m));
            assert_eq!(normalize(&f.product(w).unwrap()).1, *m);
        }
        assert_eq!(urk_exact_finite(&f).unwrap(), brute_urk_set(&f, depth).unwrap());
    }
}

#[test]
fn orbit_vectors_stay_within_twice_the_entry_bound() {
    let mut rng = common::rng(24);
    for _ in 0..200 {
        let f = common::finite_family(&mut rng, 4, 3, 3);
        let b = f.entry_bound().unwrap();
        let two_b = &b + &b;
        let g = ClosureGraph::build(&f, 1_000_000).unwrap();
        for s in &g.states {
            assert_eq!(s[0], Int::ZERO);
            assert!(s.iter().all(|x| x.abs() <= two_b));
        }
    }
}

#[test]
fn normalized_products_stay_within_four_times_the_entry_bound() {
    let mut rng = common::rng(25);
    for _ in 0..2000 {
        let f = common::finite_family(&mut rng, 4, 3, 3);
        let b = f.entry_bound().unwrap();
        let four_b = &(&b + &b) + &(&b + &b);
        let len = rng.gen_range(1..=10);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..f.len())).collect();
        let p = f.product(&word).unwrap();
        let (_, n) = normalize(&p);
        assert!(n.entries().iter().all(|v| v.as_finite().unwrap().abs() <= four_b));
        let two_b = &b + &b;
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                for k in 0..p.rows() {
                    let x = p.get(i, j).as_finite().unwrap();
                    let y = p.get(k, j).as_finite().unwrap();
                    assert!((x - y).abs() <= two_b);
                    let y = p.get(i, k).as_finite().unwrap();
                    assert!((x - y).abs() <= two_b);
                }
            }
        }
    }
}

#[test]
fn twice_the_entry_bound_is_not_enough() {
    let f = fam(&[&[&[1, -1], &[-1, -1]]]);
    let (_, n) = normalize(&f.product(&[0, 0]).unwrap());
    assert_eq!(n, TropicalMatrix::from_ints(&[&[0, -2], &[-2, -4]]).unwrap());
}

#[test]
fn tilde_of_a_negative_family_has_rank_one() {
    let f = fam(&[&[&[-1]], &[&[-1]]]);
    assert_eq!(urk_exact_finite(&tilde_family(&f).unwrap()).unwrap(), 1);
    let g = fam(&[&[&[0, -1], &[-1, -1]]]);
    assert_eq!(urk_exact_finite(&tilde_family(&g).unwrap()).unwrap(), 2);
}
