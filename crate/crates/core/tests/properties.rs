mod common;

use common::*;
use defring::bm::reduce_mod_l_rep;
use defring::hilbert::hilbert_function;
use defring::{buchberger, Ideal, Monomial, MonomialOrder, Poly, Scalar, F3, Z3};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn z3() -> impl Strategy<Value = Z3> {
    (-40i64..=40, prop::sample::select(vec![1i64, 2, 4, 5, 7, 10])).prop_map(|(n, d)| Z3::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn dvr_ring_axioms(a in z3(), b in z3(), c in z3()) {
        prop_assert_eq!(a.clone() + (b.clone() + c.clone()), (a.clone() + b.clone()) + c.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() - a.clone(), Z3::zero());
        prop_assert_eq!(a.clone() * Z3::one(), a.clone());
    }

    #[test]
    fn valuation_laws(a in z3(), b in z3()) {
        match (a.valuation(), b.valuation()) {
            (Some(va), Some(vb)) => {
                prop_assert_eq!((a.clone() * b.clone()).valuation(), Some(va + vb));
                if let Some(vs) = (a.clone() + b.clone()).valuation() {
                    prop_assert!(vs >= va.min(vb));
                }
                let u = a.unit_part().unwrap();
                prop_assert!(u.is_unit());
                prop_assert_eq!(u * Z3::lambda_pow(va), a.clone());
                match a.try_div(&b) {
                    Some(q) => {
                        prop_assert!(vb <= va);
                        prop_assert_eq!(q * b.clone(), a.clone());
                    }
                    None => prop_assert!(vb > va),
                }
            }
            (None, _) => prop_assert!(a.unit_part().is_err()),
            _ => {}
        }
    }

    #[test]
    fn remainders_mod_lambda_powers(a in z3(), k in 1u32..4) {
        let r = a.rem_lambda_pow(k);
        let diff = a.clone() - r.clone();
        prop_assert!(diff.is_zero() || diff.valuation().unwrap() >= k);
        prop_assert_eq!(r.rem_lambda_pow(k), r.clone());
        prop_assert_eq!(a.residue(), r.residue());
    }

    #[test]
    fn scalar_text_round_trip(a in z3()) {
        prop_assert_eq!(a.to_string().parse::<Z3>().unwrap(), a);
    }

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = ctx("x,y,z", MonomialOrder::Grevlex);
        let (f, g, h) = (random_poly(&mut r, &ctx, 4, 3), random_poly(&mut r, &ctx, 4, 3), random_poly(&mut r, &ctx, 4, 3));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g.mul(&h)), f.mul(&g).mul(&h));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.pow(2), f.mul(&f));
    }

    #[test]
    fn polynomial_text_round_trip(seed in any::<u64>(), lex in any::<bool>()) {
        let mut r = rng(seed);
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
        let ctx = ctx("F,A',B,C", order);
        let f = random_poly(&mut r, &ctx, 5, 4);
        prop_assert_eq!(Poly::<Z3>::parse(&f.to_string(), &ctx).unwrap(), f);
    }

    #[test]
    fn normal_form_is_idempotent_and_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = ctx("x,y", MonomialOrder::Lex);
        let ideal = random_ideal(&mut r, &ctx, 2);
        let basis = ideal.basis();
        let f = random_poly(&mut r, &ctx, 4, 3);
        let nf = basis.normal_form(&f);
        prop_assert_eq!(basis.normal_form(&nf), nf.clone());
        prop_assert!(ideal.member(&f.sub(&nf)));
        let points: [[i64; 2]; 4] = [[0, 0], [1, 2], [-2, 5], [3, -1]];
        for g in basis.generators() {
            for p in &points {
                prop_assert!(passes_point_test(g, ideal.generators(), p), "{} at {:?}", g, p);
            }
        }
    }

    #[test]
    fn shuffled_generators_give_the_same_basis(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = ctx("x,y", MonomialOrder::Grevlex);
        let mut gens: Vec<Poly<Z3>> = (0..3).map(|_| random_poly(&mut r, &ctx, 3, 2)).collect();
        let reference = buchberger(&ctx, &gens);
        let h = random_poly(&mut r, &ctx, 2, 1);
        gens.push(gens[0].mul(&h).add(&gens[1].scale(&small_scalar(&mut r))));
        gens.shuffle(&mut r);
        let shuffled = buchberger(&ctx, &gens);
        prop_assert_eq!(shuffled.generators(), reference.generators());
    }

    #[test]
    fn hilbert_function_of_monomial_ideals(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = (seed % 5 + 1) as usize;
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let ctx = defring::VarContext::new(&names, MonomialOrder::Grevlex).unwrap();
        let gens = random_monomial_gens(&mut r, n);
        let polys = gens.iter().map(|e| Poly::term(&ctx, Monomial::from_exponents(e), F3::one())).collect();
        let ideal = Ideal::new(&ctx, polys).unwrap();
        for d in 0..6 {
            prop_assert_eq!(hilbert_function(&ideal, d).unwrap(), brute_force_standard_count(&gens, n, d as u32));
        }
    }

    #[test]
    fn reductions_preserve_dimension(seed in any::<u64>()) {
        let (rep, q, l) = random_rep(&mut rng(seed));
        let parts = reduce_mod_l_rep(&rep, q, l).unwrap();
        let total: u64 = parts.iter().map(|(r, m)| r.dimension * u64::from(*m)).sum();
        prop_assert_eq!(total, rep.dimension);
        prop_assert!(parts.iter().all(|(r, _)| r.modular));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn saturation_is_idempotent_and_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = ctx("x,y", MonomialOrder::Lex);
        let i = random_ideal(&mut r, &ctx, 2);
        let extra = random_poly(&mut r, &ctx, 2, 2);
        let j = i.add(&Ideal::new(&ctx, vec![extra]).unwrap()).unwrap();
        let si = i.saturate_by_l().unwrap();
        prop_assert!(si.contains_ideal(&i));
        prop_assert!(si.saturate_by_l().unwrap().equal(&si));
        prop_assert!(j.saturate_by_l().unwrap().contains_ideal(&si));
        let x = Poly::var(&ctx, 0);
        let sx = i.saturate_by(&x).unwrap();
        prop_assert!(sx.contains_ideal(&i));
        prop_assert!(sx.saturate_by(&x).unwrap().equal(&sx));
    }
}
