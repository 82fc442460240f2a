use super::*;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    rat(n)
}

fn v(ring: RingDescriptor, var: Var) -> QPoly {
    Poly::var(ring, var)
}

fn c(ring: RingDescriptor, k: i64) -> QPoly {
    Poly::from_int(ring, k)
}

#[test]
fn leading_order_examples() {
    let r = RingDescriptor::alpha(1);
    let a = v(r, Var::Main);
    let d = v(r, Var::Delta(1));
    let b = v(r, Var::Beta);
    let f = &(&a + &d) - &c(r, 1);
    assert_eq!(f.leading_order().unwrap(), &a + &d);
    assert_eq!(b.leading_order().unwrap(), b);
    let f2 = (&(&a * &a) - &b).scale(&frac(1, 2)) + (&a + &d) - Poly::from_rational(r, frac(1, 2));
    assert_eq!(f2.leading_order().unwrap(), (&(&a * &a) - &b).scale(&frac(1, 2)));
    assert_eq!(Poly::<Rational>::zero(r).leading_order(), Err(Error::ZeroPolynomial));
}

#[test]
fn coordinate_examples() {
    let r1 = RingDescriptor::alpha(1);
    let alpha = v(r1, Var::Main);
    let w = RingDescriptor::omega(1);
    let expected = &v(w, Var::Main) - &v(w, Var::Delta(1)).scale(&frac(1, 2));
    assert_eq!(alpha.to_omega(), expected);
    let omega = v(w, Var::Main);
    assert_eq!(
        omega.to_alpha(),
        &v(r1, Var::Main) + &v(r1, Var::Delta(1)).scale(&frac(1, 2))
    );
    let r3 = RingDescriptor::alpha(3);
    let mut f = v(r3, Var::Main);
    for i in 1..=3 {
        f = &f + &v(r3, Var::Delta(i)).scale(&frac(1, 2));
    }
    assert_eq!(f.to_omega(), v(RingDescriptor::omega(3), Var::Main));
}

#[test]
fn flip_examples() {
    let r = RingDescriptor::alpha(1);
    let a = v(r, Var::Main);
    let d = v(r, Var::Delta(1));
    assert_eq!(a.flip(&[]).unwrap(), a);
    assert_eq!(d.flip(&[1]).unwrap(), -&d);
    assert_eq!(a.flip(&[1]).unwrap(), &a + &d);
    assert!(a.flip(&[2]).is_err());
}

#[test]
fn pi_examples() {
    let r = RingDescriptor::alpha(3);
    let d2 = v(r, Var::Delta(2));
    let d3 = v(r, Var::Delta(3));
    let r1 = RingDescriptor::alpha(1);
    let d1 = v(r1, Var::Delta(1));
    assert_eq!((&d2 * &d3).pi_reduce().unwrap(), -(&d1 * &d1));
    assert!((&d2 + &d3).pi_reduce().unwrap().is_zero());
    assert_eq!(v(r, Var::Main).pi_reduce().unwrap(), v(r1, Var::Main));
    // ω is fixed as well
    let w3 = v(RingDescriptor::omega(3), Var::Main);
    assert_eq!(w3.pi_reduce().unwrap(), v(RingDescriptor::omega(1), Var::Main));
}

#[test]
fn evaluate_examples() {
    let w = RingDescriptor::omega(1);
    let r1 = &(&v(w, Var::Main) + &v(w, Var::Delta(1)).scale(&frac(1, 2))) - &c(w, 1);
    // (α,β,γ,δ) = (1,2,0,0)
    assert_eq!(r1.evaluate(&q(1), &q(2), &q(0), &[q(0)], None), q(0));
    let rel = &(&(&v(w, Var::Delta(1)) * &v(w, Var::Delta(1))) + &v(w, Var::Beta)) - &c(w, 2);
    assert_eq!(rel.evaluate(&q(5), &q(2), &q(0), &[q(0)], None), q(0));
    let a = v(RingDescriptor::alpha(3), Var::Main);
    assert_eq!(a.evaluate(&q(-3), &q(0), &q(0), &[q(0), q(0), q(0)], None), q(-3));
}

#[test]
fn epsilon_squares_to_one() {
    let r = RingDescriptor::omega(1).with_epsilon();
    let e = v(r, Var::Epsilon);
    assert_eq!(&e * &e, Poly::one(r));
}

#[test]
fn laurent_specialization_and_json() {
    let r = RingDescriptor::omega(1);
    let u_inv = Poly::constant(r, LaurentU::u_pow(-1));
    let f = &Poly::<LaurentU>::var(r, Var::Main) - &u_inv;
    let at2 = f.specialize_u(&q(2)).unwrap();
    assert_eq!(at2, &v(r, Var::Main) - &Poly::from_rational(r, frac(1, 2)));
    assert!(f.specialize_u(&q(0)).is_err());
    let back = LPoly::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
}

#[test]
fn json_round_trip_and_shape() {
    let r = RingDescriptor::alpha(1);
    let a = v(r, Var::Main);
    let f = (&(&a * &a) - &v(r, Var::Beta)).scale(&frac(1, 2));
    let j = f.to_json();
    assert_eq!(j["vars"], serde_json::json!(["alpha", "beta", "gamma", "delta1"]));
    assert_eq!(j["terms"][0]["coeff"], "1/2");
    assert_eq!(j["terms"][0]["exps"], serde_json::json!([2, 0, 0, 0]));
    assert_eq!(QPoly::from_json(&j).unwrap(), f);
}

#[test]
fn display_is_lex_descending() {
    let r = RingDescriptor::omega(1);
    let f = &(&v(r, Var::Beta) + &v(r, Var::Main)) - &c(r, 1);
    assert_eq!(f.to_string(), "omega + beta - 1");
}

#[test]
fn weight_enumeration_counts() {
    let r = RingDescriptor::alpha(1);
    // α, δ weight 1; β weight 2; γ weight 3: weight 3 monomials
    // α³, α²δ, αδ², δ³, αβ, δβ, γ
    assert_eq!(monomials_of_weight(&r, 3, None, None, true).len(), 7);
    assert_eq!(monomials_of_weight(&r, 3, Some(1), None, true).len(), 5);
    assert_eq!(monomials_of_weight(&r, 3, Some(1), Some(1), true).len(), 4);
}

fn arb_poly(n: usize) -> impl Strategy<Value = QPoly> {
    let ring = RingDescriptor::alpha(n);
    prop::collection::vec(
        (0u32..3, 0u32..2, 0u32..2, prop::collection::vec(0u32..3, n), -5i64..6, 1i64..4),
        0..5,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            ring,
            terms
                .into_iter()
                .map(|(a, b, c, d, p, qq)| (Monomial::from_parts(a, b, c, &d, 0), frac(p, qq))),
        )
    })
}

proptest! {
    #[test]
    fn degree_is_additive(f in arb_poly(3), g in arb_poly(3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
    }

    #[test]
    fn homogeneous_components_sum_back(f in arb_poly(3)) {
        let mut acc = Poly::zero(*f.ring());
        for d in 0..=f.degree().unwrap_or(0) {
            acc = acc + f.homogeneous_component(d);
        }
        prop_assert_eq!(acc, f);
    }

    #[test]
    fn coordinate_round_trip(f in arb_poly(3)) {
        prop_assert_eq!(f.to_omega().to_alpha(), f.clone());
        prop_assert_eq!(f.to_omega().degree(), f.degree());
    }

    #[test]
    fn flips_compose(f in arb_poly(3), g in arb_poly(3), i in 0usize..8, j in 0usize..8) {
        let s = |mask: usize| -> Vec<usize> { (1..=3).filter(|k| mask & (1 << (k - 1)) != 0).collect() };
        let fi = f.flip(&s(i)).unwrap();
        prop_assert_eq!(fi.flip(&s(i)).unwrap(), f.clone());
        prop_assert_eq!(fi.flip(&s(j)).unwrap(), f.flip(&s(i ^ j)).unwrap());
        prop_assert_eq!((&f * &g).flip(&s(i)).unwrap(), &fi * &g.flip(&s(i)).unwrap());
        prop_assert_eq!(fi.degree(), f.degree());
    }

    #[test]
    fn pi_is_a_homomorphism(f in arb_poly(3), g in arb_poly(3)) {
        prop_assert_eq!((&f + &g).pi_reduce().unwrap(), f.pi_reduce().unwrap() + g.pi_reduce().unwrap());
        prop_assert_eq!((&f * &g).pi_reduce().unwrap(), f.pi_reduce().unwrap() * g.pi_reduce().unwrap());
    }

    #[test]
    fn json_round_trips(f in arb_poly(3)) {
        prop_assert_eq!(QPoly::from_json(&f.to_json()).unwrap(), f);
    }
}

#[test]
fn flip_group_has_order_two_to_the_n() {
    // distinct images of a generic element under all τ_I
    for n in [1usize, 3] {
        let r = RingDescriptor::omega(n);
        let mut probe = v(r, Var::Main);
        for i in 1..=n {
            probe = &probe + &v(r, Var::Delta(i)).scale(&q(1 << i));
        }
        let images: std::collections::HashSet<String> = subsets(n)
            .iter()
            .map(|s| probe.flip(s).unwrap().to_string())
            .collect();
        assert_eq!(images.len(), 1 << n);
    }
}
