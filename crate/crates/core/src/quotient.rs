//! Canonical representatives modulo δ_i² = c − β (optionally γ^G = 0 and
//! β = 0), and the isotypic decomposition under even flips.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::poly::{
    complement, even_subsets, frac, monomials_of_weight, subsets, Coeff, Coord, LaurentU,
    Monomial, Poly, Rational, RingDescriptor,
};

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSpec<C: Coeff> {
    /// γ^G = 0 when present.
    pub gamma_truncation: Option<u32>,
    /// δ_i² = c − β.
    pub delta_square: C,
    pub beta_zero: bool,
}

impl<C: Coeff> QuotientSpec<C> {
    pub fn new(gamma_truncation: Option<u32>, delta_square: C, beta_zero: bool) -> Result<Self> {
        if gamma_truncation == Some(0) {
            return Err(invalid("gamma truncation must be at least 1"));
        }
        Ok(QuotientSpec {
            gamma_truncation,
            delta_square,
            beta_zero,
        })
    }

    /// Q[ω,β,δ]/(δ_i² + β), γ = 0.
    pub fn rbar() -> Self {
        QuotientSpec {
            gamma_truncation: Some(1),
            delta_square: C::zero(),
            beta_zero: false,
        }
    }

    /// Q[ω,β,γ,δ]/(γ^{g+1}, δ_i² + β − 2).
    pub fn r_gn(g: u32) -> Self {
        QuotientSpec {
            gamma_truncation: Some(g + 1),
            delta_square: C::from_int(2),
            beta_zero: false,
        }
    }

    /// Q[ω,β,γ,δ]/(δ² + β − 2) with no γ relation.
    pub fn r1() -> Self {
        QuotientSpec {
            gamma_truncation: None,
            delta_square: C::from_int(2),
            beta_zero: false,
        }
    }

    /// Associated graded of a spec: the constant c drops out.
    pub fn graded(&self) -> Self {
        QuotientSpec {
            gamma_truncation: self.gamma_truncation,
            delta_square: C::zero(),
            beta_zero: self.beta_zero,
        }
    }

    /// Q[ω,δ]/(δ_i²): R̄_n modulo β.
    pub fn mod_beta() -> Self {
        QuotientSpec {
            gamma_truncation: Some(1),
            delta_square: C::zero(),
            beta_zero: true,
        }
    }

    pub fn is_graded(&self) -> bool {
        self.delta_square.is_zero()
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self == other
    }

    /// Canonical monomials of the given weight (degree/2), highest first.
    pub fn monomials_of_weight(&self, ring: &RingDescriptor, weight: u32) -> Vec<Monomial> {
        let ring = ring.with_coord(Coord::Omega);
        monomials_of_weight(&ring, weight, Some(1), self.gamma_truncation, !self.beta_zero)
    }
}

impl QuotientSpec<LaurentU> {
    /// δ_i² = u² + u^{−2} − β, no γ relation.
    pub fn local() -> Self {
        QuotientSpec {
            gamma_truncation: None,
            delta_square: LaurentU::u_pow(2).add(&LaurentU::u_pow(-2)),
            beta_zero: false,
        }
    }

    pub fn local_gn(g: u32) -> Self {
        QuotientSpec {
            gamma_truncation: Some(g + 1),
            ..Self::local()
        }
    }

    pub fn specialize(&self, u: &Rational) -> Result<QuotientSpec<Rational>> {
        Ok(QuotientSpec {
            gamma_truncation: self.gamma_truncation,
            delta_square: self.delta_square.evaluate(u)?,
            beta_zero: self.beta_zero,
        })
    }
}

/// The unique δ-square-free, γ-truncated representative, in ω-coordinates.
pub fn canonical_rep<C: Coeff>(f: &Poly<C>, spec: &QuotientSpec<C>) -> Poly<C> {
    let f = f.to_omega();
    let ring = *f.ring();
    let mut out = Poly::zero(ring);
    // (c − β)^K expansions, cached by K
    let mut expansions: HashMap<u32, Vec<(u32, C)>> = HashMap::new();
    for (m, coeff) in f.terms() {
        if let Some(g) = spec.gamma_truncation {
            if m.c() >= g {
                continue;
            }
        }
        if spec.beta_zero && m.b() > 0 {
            continue;
        }
        let mut k_total = 0;
        let mut d = Vec::with_capacity(ring.n);
        for &e in m.deltas() {
            k_total += e / 2;
            d.push(e % 2);
        }
        if k_total == 0 {
            out.add_term(m.clone(), coeff.clone());
            continue;
        }
        let exp = expansions
            .entry(k_total)
            .or_insert_with(|| expand_c_minus_beta(&spec.delta_square, k_total, spec.beta_zero));
        for (j, c) in exp.iter() {
            let mono = Monomial::from_parts(m.a(), m.b() + j, m.c(), &d, m.e());
            out.add_term(mono, coeff.mul(c));
        }
    }
    out
}

/// Σ_j C(K,j) c^{K−j} (−1)^j β^j, as (j, coefficient) pairs.
fn expand_c_minus_beta<C: Coeff>(c: &C, k: u32, beta_zero: bool) -> Vec<(u32, C)> {
    let mut out = Vec::new();
    let mut binom = BigInt::one();
    for j in 0..=k {
        if beta_zero && j > 0 {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let coeff = c
            .pow(k - j)
            .scale(&Rational::from_integer(binom.clone() * sign));
        if !coeff.is_zero() {
            out.push((j, coeff));
        }
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    out
}

/// Isotypic labels: subsets I with |I| ≤ m.
pub fn iso_labels(n: usize) -> Vec<Vec<usize>> {
    let m = (n - 1) / 2;
    subsets(n).into_iter().filter(|s| s.len() <= m).collect()
}

fn check_label(i: &[usize], n: usize) -> Result<()> {
    let m = (n.max(1) - 1) / 2;
    if i.len() > m {
        return Err(invalid(format!("|I| = {} exceeds m = {m}", i.len())));
    }
    if i.iter().any(|&x| x == 0 || x > n) {
        return Err(invalid("label index out of range"));
    }
    Ok(())
}

/// Component of the canonical representative whose δ-support is I or I^c.
pub fn iso_project<C: Coeff>(f: &Poly<C>, i: &[usize], spec: &QuotientSpec<C>) -> Result<Poly<C>> {
    let n = f.ring().n;
    check_label(i, n)?;
    let mut i_sorted = i.to_vec();
    i_sorted.sort_unstable();
    let ic = complement(&i_sorted, n);
    let rep = canonical_rep(f, spec);
    Ok(Poly::from_terms(
        *rep.ring(),
        rep.terms()
            .filter(|(m, _)| {
                let s = m.delta_support();
                s == i_sorted || s == ic
            })
            .map(|(m, c)| (m.clone(), c.clone())),
    ))
}

/// 2^{−(n−1)} Σ_{|J| even} (−1)^{|I∩J|} τ_J, applied to the canonical rep.
pub fn even_average<C: Coeff>(f: &Poly<C>, i: &[usize], spec: &QuotientSpec<C>) -> Result<Poly<C>> {
    let n = f.ring().n;
    check_label(i, n)?;
    let rep = canonical_rep(f, spec);
    let mut acc = Poly::zero(*rep.ring());
    for j in even_subsets(n) {
        let overlap = j.iter().filter(|x| i.contains(x)).count();
        let img = rep.flip(&j)?;
        acc = if overlap % 2 == 0 { acc.add(&img) } else { acc.sub(&img) };
    }
    let norm = frac(1, 1i64 << (n - 1));
    Ok(canonical_rep(&acc.scale(&norm), spec))
}

/// Canonical representative after π: from n+2 δ's to n.
pub fn pi_on_quotient<C: Coeff>(
    f: &Poly<C>,
    from: &QuotientSpec<C>,
    to: &QuotientSpec<C>,
) -> Result<Poly<C>> {
    if !from.compatible(to) {
        return Err(Error::RingMismatch("quotient specs differ".into()));
    }
    let rep = canonical_rep(f, from);
    Ok(canonical_rep(&rep.pi_reduce()?, to))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::poly::{rat, QPoly, Var};
    use proptest::prelude::*;

    fn w(n: usize) -> RingDescriptor {
        RingDescriptor::omega(n)
    }

    fn var(n: usize, v: Var) -> QPoly {
        QPoly::var(w(n), v)
    }

    #[test]
    fn canonical_examples() {
        let d1 = var(1, Var::Delta(1));
        let spec = QuotientSpec::<Rational>::r_gn(1);
        assert_eq!(
            canonical_rep(&d1.mul(&d1), &spec),
            QPoly::from_int(w(1), 2).sub(&var(1, Var::Beta))
        );
        let g2 = var(1, Var::Gamma).pow(2);
        assert!(canonical_rep(&g2, &spec).is_zero());
        let f = var(3, Var::Main)
            .mul(&var(3, Var::Delta(1)).pow(2))
            .mul(&var(3, Var::Delta(2)));
        let expected = var(3, Var::Beta)
            .mul(&var(3, Var::Main))
            .mul(&var(3, Var::Delta(2)))
            .neg();
        assert_eq!(canonical_rep(&f, &QuotientSpec::rbar()), expected);
    }

    #[test]
    fn projection_examples() {
        let spec = QuotientSpec::<Rational>::rbar();
        let f = var(3, Var::Main).mul(&var(3, Var::Delta(1))).add(&var(3, Var::Delta(2)));
        let p1 = iso_project(&f, &[1], &spec).unwrap();
        assert_eq!(p1, var(3, Var::Main).mul(&var(3, Var::Delta(1))));
        assert_eq!(even_average(&f, &[1], &spec).unwrap(), p1);
        let full = var(3, Var::Delta(1)).mul(&var(3, Var::Delta(2))).mul(&var(3, Var::Delta(3)));
        assert_eq!(iso_project(&full, &[], &spec).unwrap(), full);
        assert_eq!(even_average(&full, &[], &spec).unwrap(), full);
        assert!(iso_project(&f, &[1, 2], &spec).is_err());
        // equivariance: p_{1}(τ_{12} f) = τ_{12}(p_{1} f)
        let lhs = iso_project(&f.flip(&[1, 2]).unwrap(), &[1], &spec).unwrap();
        assert_eq!(lhs, p1.flip(&[1, 2]).unwrap());
    }

    #[test]
    fn projection_of_symmetric_xi() {
        // ω − (δ1+δ2+δ3)/2 averaged with I = ∅ keeps the δ-free part
        let spec = QuotientSpec::<Rational>::rbar();
        let xi1 = QPoly::var(RingDescriptor::alpha(3), Var::Main);
        assert_eq!(even_average(&xi1, &[], &spec).unwrap(), var(3, Var::Main));
    }

    #[test]
    fn pi_examples() {
        let spec = QuotientSpec::<Rational>::r_gn(2);
        let f = var(3, Var::Delta(2)).mul(&var(3, Var::Delta(3)));
        let expected = QPoly::from_int(w(1), 2).sub(&var(1, Var::Beta)).neg();
        assert_eq!(pi_on_quotient(&f, &spec, &spec).unwrap(), expected);
        assert_eq!(pi_on_quotient(&var(3, Var::Main), &spec, &spec).unwrap(), var(1, Var::Main));
        assert!(pi_on_quotient(&f, &spec, &QuotientSpec::rbar()).is_err());
    }

    #[test]
    fn pi_is_injective_on_isotypic_pieces() {
        // n+2 = 3, I ∈ {∅, {1}}, degrees up to 12, R_{g,3} with g = 2
        let spec = QuotientSpec::<Rational>::r_gn(2);
        for label in iso_labels(3) {
            let mut basis = Vec::new();
            for wt in 0..=6 {
                for m in spec.monomials_of_weight(&w(3), wt) {
                    let s = m.delta_support();
                    let ic = complement(&label, 3);
                    if s == label || s == ic {
                        basis.push(QPoly::term(w(3), m, rat(1)));
                    }
                }
            }
            let images: Vec<QPoly> = basis
                .iter()
                .map(|b| pi_on_quotient(b, &spec, &spec).unwrap())
                .collect();
            let mut cols: Vec<Monomial> = images.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
            cols.sort();
            cols.dedup();
            let rows: Vec<Vec<Rational>> = images
                .iter()
                .map(|p| cols.iter().map(|m| p.coeff(m)).collect())
                .collect();
            assert_eq!(Matrix::from_rows(rows).rank(), basis.len(), "label {label:?}");
        }
    }

    /// Reduction one square at a time, as an independent oracle.
    fn slow_reduce(f: &QPoly, spec: &QuotientSpec<Rational>) -> QPoly {
        let mut cur = f.to_omega();
        let ring = *cur.ring();
        loop {
            let target = cur.terms().find_map(|(m, _)| {
                (1..=ring.n).find(|&i| m.d(i) >= 2).map(|i| (m.clone(), i))
            });
            let Some((m, i)) = target else { break };
            let c = cur.coeff(&m);
            let mut rest = m.clone();
            rest.set(Var::Delta(i), m.d(i) - 2);
            let repl = QPoly::from_rational(ring, spec.delta_square.clone())
                .sub(&QPoly::var(ring, Var::Beta))
                .mul_monomial(&rest)
                .scale(&c);
            cur = cur.sub(&QPoly::term(ring, m, c)).add(&repl);
        }
        QPoly::from_terms(
            ring,
            cur.terms()
                .filter(|(m, _)| spec.gamma_truncation.is_none_or(|g| m.c() < g))
                .filter(|(m, _)| !spec.beta_zero || m.b() == 0)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(
            (0u32..3, 0u32..2, 0u32..3, prop::collection::vec(0u32..4, 3), -4i64..5),
            0..6,
        )
        .prop_map(|terms| {
            QPoly::from_terms(
                RingDescriptor::alpha(3),
                terms
                    .into_iter()
                    .map(|(a, b, c, d, k)| (Monomial::from_parts(a, b, c, &d, 0), rat(k))),
            )
        })
    }

    fn specs() -> Vec<QuotientSpec<Rational>> {
        vec![
            QuotientSpec::rbar(),
            QuotientSpec::r_gn(1),
            QuotientSpec::r1(),
            QuotientSpec::mod_beta(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn canonical_rep_matches_slow_reduction(f in arb_poly()) {
            for spec in specs() {
                let fast = canonical_rep(&f, &spec);
                prop_assert_eq!(&fast, &slow_reduce(&f, &spec));
                prop_assert_eq!(canonical_rep(&fast, &spec), fast.clone());
                prop_assert!(fast.degree() <= f.degree());
            }
        }

        #[test]
        fn canonical_rep_is_multiplicative(f in arb_poly(), g in arb_poly()) {
            let spec = QuotientSpec::<Rational>::r_gn(2);
            let lhs = canonical_rep(&f.mul(&g), &spec);
            let rhs = canonical_rep(&canonical_rep(&f, &spec).mul(&canonical_rep(&g, &spec)), &spec);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn projector_algebra(f in arb_poly()) {
            let spec = QuotientSpec::<Rational>::r_gn(1);
            let rep = canonical_rep(&f, &spec);
            let mut total = QPoly::zero(*rep.ring());
            for i in iso_labels(3) {
                let p = iso_project(&f, &i, &spec).unwrap();
                prop_assert_eq!(&even_average(&f, &i, &spec).unwrap(), &p);
                prop_assert_eq!(&iso_project(&p, &i, &spec).unwrap(), &p);
                for j in iso_labels(3) {
                    if j != i {
                        prop_assert!(iso_project(&p, &j, &spec).unwrap().is_zero());
                    }
                }
                for flip in even_subsets(3) {
                    let overlap = flip.iter().filter(|x| i.contains(x)).count();
                    let img = p.flip(&flip).unwrap();
                    let expected = if overlap % 2 == 0 { p.clone() } else { p.neg() };
                    prop_assert_eq!(img, expected);
                }
                total = total.add(&p);
            }
            prop_assert_eq!(total, rep);
        }
    }
}
