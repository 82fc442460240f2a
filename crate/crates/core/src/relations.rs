//! The polynomial families: ξ_{k,n}, δ^{{s}}, ρ (projection and series),
//! w_0/w_1/W, r_g (plain and with Laurent coefficients) and the generator
//! sets I_{g,n}^d, K′_{g,n}, J_{g,1}^±.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::poly::{
    complement, even_subsets, frac, rat, Coeff, LaurentU, Monomial, Poly, PolyJson, QPoly,
    Rational, RingDescriptor, Var,
};
use crate::quotient::{canonical_rep, QuotientSpec};
use crate::series::{omega_beta_ring, SeriesT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
    pub fn factor(&self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(invalid(format!("unknown sign `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
    fn bit(&self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(invalid(format!("unknown parity `{s}`"))),
        }
    }
}

/// A labelled list of ideal generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet<C: Coeff> {
    pub label: String,
    pub g: u32,
    pub n: usize,
    pub sign: Option<Sign>,
    pub local: bool,
    pub ambient: RingDescriptor,
    pub quotient_context: Option<QuotientSpec<C>>,
    pub gens: Vec<(String, Poly<C>)>,
}

impl<C: Coeff> GeneratorSet<C> {
    pub fn new(label: impl Into<String>, g: u32, n: usize, ambient: RingDescriptor) -> Self {
        GeneratorSet {
            label: label.into(),
            g,
            n,
            sign: None,
            local: false,
            ambient,
            quotient_context: None,
            gens: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, p: Poly<C>) {
        let name = name.into();
        if p.is_zero() {
            return;
        }
        debug_assert!(self.gens.iter().all(|(n, _)| *n != name), "duplicate name {name}");
        self.gens.push((name, p));
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly<C>> {
        self.gens.iter().map(|(_, p)| p)
    }

    pub fn get(&self, name: &str) -> Option<&Poly<C>> {
        self.gens.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn map_polys<D: Coeff>(
        &self,
        f: impl Fn(&Poly<C>) -> Result<Poly<D>>,
        quotient_context: Option<QuotientSpec<D>>,
    ) -> Result<GeneratorSet<D>> {
        Ok(GeneratorSet {
            label: self.label.clone(),
            g: self.g,
            n: self.n,
            sign: self.sign,
            local: self.local,
            ambient: self.ambient,
            quotient_context,
            gens: self
                .gens
                .iter()
                .map(|(name, p)| Ok((name.clone(), f(p)?)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "g": self.g,
            "n": self.n,
            "sign": self.sign.map(|s| s.as_str()),
            "local": self.local,
            "gens": self.gens.iter().map(|(name, p)| json!({"name": name, "poly": p.to_json()})).collect::<Vec<_>>(),
        })
    }
}

fn ring_err(msg: &str) -> Error {
    invalid(msg.to_string())
}

/// ξ_{0..=kmax, n} in Q[α,β,γ] (δ-free ring), by the three-term recursion
/// (k+1)ξ_{k+1} = αξ_k + (m−k)βξ_{k−1} − (γ/2)ξ_{k−2}.
pub fn xi_table(kmax: usize, n: i64) -> Result<Vec<QPoly>> {
    if n % 2 == 0 {
        return Err(invalid(format!("n must be odd, got {n}")));
    }
    let m = (n - 1) / 2;
    let ring = RingDescriptor::alpha(0);
    let alpha = QPoly::var(ring, Var::Main);
    let beta = QPoly::var(ring, Var::Beta);
    let gamma_half = QPoly::var(ring, Var::Gamma).scale(&frac(1, 2));
    let mut table = vec![QPoly::one(ring)];
    for k in 0..kmax {
        let mut next = alpha.mul(&table[k]);
        if k >= 1 {
            next = next.add(&beta.mul(&table[k - 1]).scale(&rat(m - k as i64)));
        }
        if k >= 2 {
            next = next.sub(&gamma_half.mul(&table[k - 2]));
        }
        table.push(next.scale(&frac(1, k as i64 + 1)));
    }
    Ok(table)
}

pub fn xi(k: i64, n: i64) -> Result<QPoly> {
    if k < 0 {
        return Err(invalid("xi needs k >= 0"));
    }
    Ok(xi_table(k as usize, n)?.pop().unwrap())
}

/// ξ_{k,n} placed in the ring with `ring_n` δ variables (α-coordinates);
/// negative k gives zero.
pub fn xi_in(k: i64, n: i64, ring_n: usize) -> Result<QPoly> {
    if k < 0 {
        return Ok(QPoly::zero(RingDescriptor::alpha(ring_n)));
    }
    xi(k, n)?.embed(ring_n)
}

/// Elementary symmetric polynomial e_s(δ_1..δ_n).
pub fn delta_sym(n: usize, s: usize) -> Result<QPoly> {
    if s > n {
        return Err(invalid(format!("s = {s} exceeds n = {n}")));
    }
    let ring = RingDescriptor::omega(n);
    let mut out = QPoly::zero(ring);
    for subset in crate::poly::subsets(n) {
        if subset.len() == s {
            let mut d = vec![0u32; n];
            for i in subset {
                d[i - 1] = 1;
            }
            out.add_term(Monomial::from_parts(0, 0, 0, &d, 0), rat(1));
        }
    }
    Ok(out)
}

/// ρ_{k,n,s} for s = 0..=n, from ξ̄_{k,n} = 2^{−m−1} Σ_s ρ_{k,n,s} δ^{{s}}.
pub fn rho_proj_all(k: i64, n: usize) -> Result<Vec<QPoly>> {
    if n.is_multiple_of(2) {
        return Err(invalid("n must be odd and positive"));
    }
    let m = (n - 1) / 2;
    let xbar = canonical_rep(&xi_in(k, n as i64, n)?, &QuotientSpec::rbar());
    let target = omega_beta_ring();
    let norm = rat(1i64 << (m + 1));
    let mut rhos = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let pattern: Vec<u32> = (0..n).map(|i| u32::from(i < s)).collect();
        let rho = QPoly::from_terms(
            target,
            xbar.terms()
                .filter(|(mono, _)| mono.deltas() == pattern.as_slice())
                .map(|(mono, c)| {
                    (Monomial::from_parts(mono.a(), mono.b(), 0, &[], 0), c * &norm)
                }),
        );
        rhos.push(rho);
    }
    // reassemble and compare
    let ring = *xbar.ring();
    let mut rebuilt = QPoly::zero(ring);
    for (s, rho) in rhos.iter().enumerate() {
        let lifted = QPoly::from_terms(
            ring,
            rho.terms().map(|(mono, c)| {
                (Monomial::from_parts(mono.a(), mono.b(), 0, &vec![0; n], 0), c.clone())
            }),
        );
        rebuilt = rebuilt.add(&lifted.mul(&delta_sym(n, s)?));
    }
    rebuilt = rebuilt.scale(&frac(1, 1i64 << (m + 1)));
    if rebuilt != xbar {
        return Err(Error::Residual(format!("xi_bar_{{{k},{n}}} is not symmetric")));
    }
    Ok(rhos)
}

pub fn rho_proj(k: i64, n: usize, s: usize) -> Result<QPoly> {
    if s > n {
        return Err(invalid(format!("s = {s} exceeds n = {n}")));
    }
    Ok(rho_proj_all(k, n)?.swap_remove(s))
}

/// t^k coefficient of
/// (1+βt²)^{−3/4} ((1−ts)/(1+ts))^{ω/(2s)} (√(1−ts)+√(1+ts)) (1+√(1+βt²))^{(r−1)/2}
/// with s² = −β.
pub fn rho_series(k: usize, r: i64) -> Result<QPoly> {
    if r % 2 == 0 {
        return Err(invalid("r must be odd"));
    }
    let ring = omega_beta_ring();
    let order = k;
    let one = SeriesT::one(ring, order);
    let beta = QPoly::var(ring, Var::Beta);
    let one_poly = QPoly::one(ring);
    let beta_t2 = SeriesT::monomial(ring, order, 2, beta.clone(), false);
    let ts = SeriesT::monomial(ring, order, 1, one_poly.clone(), true);

    let first = one.add(&beta_t2).pow_binomial(&frac(-3, 4))?;

    let log_ratio = one.sub(&ts).log()?.sub(&one.add(&ts).log()?);
    let half_omega = QPoly::var(ring, Var::Main).scale(&frac(1, 2));
    let second = log_ratio.div_s()?.mul_poly(&half_omega).exp()?;

    let third = one
        .sub(&ts)
        .pow_binomial(&frac(1, 2))?
        .add(&one.add(&ts).pow_binomial(&frac(1, 2))?);

    let sqrt = one.add(&beta_t2).pow_binomial(&frac(1, 2))?;
    let halved = one.add(&sqrt).scale(&frac(1, 2));
    let e = (r - 1) / 2;
    let fourth = halved
        .pow_binomial(&rat(e))?
        .scale(&crate::poly::pow_rational(&rat(2), e));

    let product = first.mul(&second).mul(&third).mul(&fourth);
    product.even_coeff(k)
}

/// (−1)^k 2^{(r+1)/2}/k! · ω^k
pub fn rho_beta_zero_closed_form(k: usize, r: i64) -> QPoly {
    let mut c = crate::poly::pow_rational(&rat(2), (r + 1) / 2);
    for i in 1..=k {
        c /= rat(i as i64);
    }
    if k % 2 == 1 {
        c = -c;
    }
    QPoly::term(omega_beta_ring(), Monomial::from_parts(k as u32, 0, 0, &[], 0), c)
}

/// How the series-defined ρ relates to the projection-defined one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoConvention {
    /// rho_series = rho_proj
    Direct,
    /// rho_series = rho_proj after ω ↦ −ω
    OmegaNegated,
}

impl RhoConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            RhoConvention::Direct => "direct",
            RhoConvention::OmegaNegated => "omega_negated",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "direct" => Some(RhoConvention::Direct),
            "omega_negated" => Some(RhoConvention::OmegaNegated),
            _ => None,
        }
    }

    /// Maps a series-side polynomial to the projection side.
    pub fn apply(&self, p: &QPoly) -> QPoly {
        match self {
            RhoConvention::Direct => p.clone(),
            RhoConvention::OmegaNegated => negate_omega(p),
        }
    }
}

impl fmt::Display for RhoConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn negate_omega(p: &QPoly) -> QPoly {
    QPoly::from_terms(
        *p.ring(),
        p.terms().map(|(m, c)| (m.clone(), if m.a() % 2 == 1 { -c } else { c.clone() })),
    )
}

/// Compares both routes for k ≤ kmax and r in `rs`; exactly one branch must
/// hold uniformly.
pub fn pin_rho_convention(kmax: usize, rs: &[i64]) -> Result<RhoConvention> {
    let mut direct = true;
    let mut negated = true;
    for &r in rs {
        let rhos: Vec<QPoly> = (0..=kmax)
            .map(|k| rho_proj(k as i64, r as usize, 0))
            .collect::<Result<_>>()?;
        for (k, proj) in rhos.iter().enumerate() {
            let ser = rho_series(k, r)?;
            direct &= ser == *proj;
            negated &= negate_omega(&ser) == *proj;
        }
    }
    match (direct, negated) {
        (true, false) => Ok(RhoConvention::Direct),
        (false, true) => Ok(RhoConvention::OmegaNegated),
        (true, true) => Err(Error::Verification("both conventions hold; range too small to decide".into())),
        (false, false) => Err(Error::Verification("mixed outcome: neither convention holds uniformly".into())),
    }
}

/// η ⊂ {1..n} with |η| odd exactly when m is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaChoice {
    pub eta: Vec<usize>,
    pub n: usize,
}

impl EtaChoice {
    pub fn new(eta: Vec<usize>, n: usize) -> Result<Self> {
        let m = (n - 1) / 2;
        if eta.iter().any(|&i| i == 0 || i > n) {
            return Err(invalid("eta index out of range"));
        }
        if (eta.len() % 2 == 1) != m.is_multiple_of(2) {
            return Err(invalid("invalid eta parity: |eta| must be odd exactly when m is even"));
        }
        Ok(EtaChoice { eta, n })
    }
}

/// τ_η ξ_{g+m,n}, in ω-coordinates.
pub fn w0(g: u32, eta: &EtaChoice) -> Result<QPoly> {
    let n = eta.n;
    let m = (n as i64 - 1) / 2;
    Ok(xi_in(g as i64 + m, n as i64, n)?.flip(&eta.eta)?.to_omega())
}

/// τ_{η^c} ξ_{g+m−1,n−2}, in ω-coordinates.
pub fn w1(g: u32, eta: &EtaChoice) -> Result<QPoly> {
    let n = eta.n;
    let m = (n as i64 - 1) / 2;
    let comp = complement(&eta.eta, n);
    Ok(xi_in(g as i64 + m - 1, n as i64 - 2, n)?.flip(&comp)?.to_omega())
}

/// w0 + (−1)^g ε̂ w1 with ε̂ = (−1)^m ε; lower-order terms omitted.
pub fn w_skeleton(g: u32, eta: &EtaChoice) -> Result<QPoly> {
    let a = w0(g, eta)?.with_epsilon();
    let b = w1(g, eta)?.with_epsilon();
    let ring = *a.ring();
    let m = (eta.n - 1) / 2;
    let sign = if (g as usize + m).is_multiple_of(2) { 1 } else { -1 };
    let eps = QPoly::var(ring, Var::Epsilon).scale(&rat(sign));
    Ok(a.add(&eps.mul(&b)))
}

/// Substitutes ε̂ = ±1 into an ε-dependent polynomial.
pub fn specialize_eps_hat(p: &QPoly, eps_hat: i64) -> QPoly {
    let n = p.ring().n;
    let m = (n as i64 - 1) / 2;
    let eps = if m % 2 == 0 { eps_hat } else { -eps_hat };
    let ring = RingDescriptor {
        has_epsilon: false,
        ..*p.ring()
    };
    QPoly::from_terms(
        ring,
        p.terms().map(|(mono, c)| {
            let mut plain = mono.clone();
            plain.set(Var::Epsilon, 0);
            (plain, if mono.e() == 1 { c * rat(eps) } else { c.clone() })
        }),
    )
}

pub(crate) fn flip_label(j: &[usize]) -> String {
    let inner: Vec<String> = j.iter().map(|x| x.to_string()).collect();
    format!("tau{{{}}}", inner.join(","))
}

/// Generators of I_{g,n}^d: δ_i² + β, γ^{g+1} and the even flips of
/// ξ_{g+m,n}, ξ_{g+m+1,n}, ξ_{g+m+2,n}; when d + m is even the ξ's are first
/// moved by τ_{1}.
pub fn igen(g: u32, n: usize, parity: Parity) -> Result<GeneratorSet<Rational>> {
    if n.is_multiple_of(2) {
        return Err(ring_err("n must be odd"));
    }
    let m = (n as i64 - 1) / 2;
    let ring = RingDescriptor::omega(n);
    let mut set = GeneratorSet::new(format!("I_{{{g},{n}}}^{}", parity.as_str()), g, n, ring);
    for i in 1..=n {
        let d = QPoly::var(ring, Var::Delta(i));
        set.push(format!("delta{i}^2+beta"), d.mul(&d).add(&QPoly::var(ring, Var::Beta)));
    }
    set.push(format!("gamma^{}", g + 1), QPoly::var(ring, Var::Gamma).pow(g + 1));
    let odd_shift = (parity.bit() + m) % 2 == 0;
    for k in [g as i64 + m, g as i64 + m + 1, g as i64 + m + 2] {
        let mut x = xi_in(k, n as i64, n)?.to_omega();
        if odd_shift {
            x = x.flip(&[1])?;
        }
        for j in even_subsets(n) {
            set.push(format!("{} xi_{{{k},{n}}}", flip_label(&j)), x.flip(&j)?);
        }
    }
    set.quotient_context = Some(QuotientSpec::new(Some(g + 1), Rational::zero(), false)?);
    Ok(set)
}

/// Even flips of ξ̄_{g+m,n} and ξ̄_{g+m+1,n} in R̄_n.
pub fn kprime_gen(g: u32, n: usize) -> Result<GeneratorSet<Rational>> {
    if n.is_multiple_of(2) {
        return Err(ring_err("n must be odd"));
    }
    let m = (n as i64 - 1) / 2;
    let ring = RingDescriptor::omega(n);
    let spec = QuotientSpec::rbar();
    let mut set = GeneratorSet::new(format!("K'_{{{g},{n}}}"), g, n, ring);
    for k in [g as i64 + m, g as i64 + m + 1] {
        let x = canonical_rep(&xi_in(k, n as i64, n)?, &spec);
        for j in even_subsets(n) {
            set.push(format!("{} xibar_{{{k},{n}}}", flip_label(&j)), x.flip(&j)?);
        }
    }
    set.quotient_context = Some(spec);
    Ok(set)
}

/// r_0..=r_gmax with u^{−1} supplied as a coefficient (1 for the plain case).
fn r_table<C: Coeff>(gmax: u32, u_inv: &C) -> Vec<Poly<C>> {
    let ring = RingDescriptor::omega(1);
    let c = |k: &C| Poly::constant(ring, k.clone());
    let omega = Poly::<C>::var(ring, Var::Main);
    let delta = Poly::<C>::var(ring, Var::Delta(1));
    let beta = Poly::<C>::var(ring, Var::Beta);
    let gamma = Poly::<C>::var(ring, Var::Gamma);
    let half = frac(1, 2);
    let plus = omega.add(&delta.scale(&half));
    let minus = omega.sub(&delta.scale(&half));
    let u_inv2 = u_inv.mul(u_inv);

    let mut r = vec![Poly::one(ring)];
    if gmax >= 1 {
        r.push(plus.sub(&c(u_inv)));
    }
    if gmax >= 2 {
        let r2 = plus
            .mul(&plus)
            .sub(&beta)
            .scale(&half)
            .add(&minus.scale_coeff(u_inv))
            .sub(&c(&u_inv2.scale(&half)));
        r.push(r2);
    }
    for g in 3..=gmax {
        let sign = if g % 2 == 0 { 1 } else { -1 };
        let gi = g as i64;
        let a = plus.add(&c(&u_inv.scale(&rat(sign * (2 * gi - 1)))));
        let b = beta
            .add(&delta.scale_coeff(&u_inv.scale(&rat(2 * sign))))
            .sub(&c(&u_inv2.scale(&rat(2))))
            .scale(&rat(1 - gi));
        let g_idx = g as usize;
        let next = a
            .mul(&r[g_idx - 1])
            .add(&b.mul(&r[g_idx - 2]))
            .sub(&gamma.scale(&half).mul(&r[g_idx - 3]))
            .scale(&frac(1, gi));
        r.push(next);
    }
    r
}

pub fn r_poly(g: u32) -> QPoly {
    r_table(g, &rat(1)).pop().unwrap()
}

pub fn r_poly_local(g: u32) -> Poly<LaurentU> {
    r_table(g, &LaurentU::u_pow(-1)).pop().unwrap()
}

pub fn r_polys(gmax: u32) -> Vec<QPoly> {
    r_table(gmax, &rat(1))
}

pub fn r_polys_local(gmax: u32) -> Vec<Poly<LaurentU>> {
    r_table(gmax, &LaurentU::u_pow(-1))
}

/// The recursion coefficients A_k, B_k with
/// k r_k = A_k r_{k−1} + B_k r_{k−2} − (γ/2) r_{k−3}.
pub fn r_recursion_coeffs<C: Coeff>(k: u32, u_inv: &C) -> (Poly<C>, Poly<C>) {
    let ring = RingDescriptor::omega(1);
    let c = |x: &C| Poly::constant(ring, x.clone());
    let half = frac(1, 2);
    let plus = Poly::<C>::var(ring, Var::Main).add(&Poly::var(ring, Var::Delta(1)).scale(&half));
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let ki = k as i64;
    let a = plus.add(&c(&u_inv.scale(&rat(sign * (2 * ki - 1)))));
    let b = Poly::<C>::var(ring, Var::Beta)
        .add(&Poly::var(ring, Var::Delta(1)).scale_coeff(&u_inv.scale(&rat(2 * sign))))
        .sub(&c(&u_inv.mul(u_inv).scale(&rat(2))))
        .scale(&rat(1 - ki));
    (a, b)
}

fn jgen_generic<C: Coeff>(g: u32, sign: Sign, rs: &[Poly<C>], relation: Poly<C>, local: bool) -> GeneratorSet<C> {
    let ring = RingDescriptor::omega(1);
    let mut set = GeneratorSet::new(
        format!("J_{{{g},1}}^{}{}", if sign == Sign::Plus { "+" } else { "-" }, if local { "(u)" } else { "" }),
        g,
        1,
        ring,
    );
    set.sign = Some(sign);
    set.local = local;
    let apply = |p: &Poly<C>| if sign == Sign::Plus { p.clone() } else { p.phi() };
    for k in g..=g + 2 {
        set.gens.push((format!("r_{k}"), apply(&rs[k as usize])));
    }
    set.gens.push(("delta^2+beta-c".into(), apply(&relation)));
    set
}

/// (r_g, r_{g+1}, r_{g+2}, δ²+β−2), or its φ-image for the minus sign.
pub fn jgen_n1(g: u32, sign: Sign) -> GeneratorSet<Rational> {
    let ring = RingDescriptor::omega(1);
    let d = QPoly::var(ring, Var::Delta(1));
    let rel = d.mul(&d).add(&QPoly::var(ring, Var::Beta)).sub(&QPoly::from_int(ring, 2));
    let mut set = jgen_generic(g, sign, &r_polys(g + 2), rel, false);
    set.quotient_context = Some(QuotientSpec::r1());
    set
}

/// Local-coefficient version with relation δ²+β−u²−u^{−2}.
pub fn jgen_n1_local(g: u32, sign: Sign) -> GeneratorSet<LaurentU> {
    let ring = RingDescriptor::omega(1);
    let d = Poly::<LaurentU>::var(ring, Var::Delta(1));
    let c = LaurentU::u_pow(2).add(&LaurentU::u_pow(-2));
    let rel = d
        .mul(&d)
        .add(&Poly::var(ring, Var::Beta))
        .sub(&Poly::constant(ring, c));
    let mut set = jgen_generic(g, sign, &r_polys_local(g + 2), rel, true);
    set.quotient_context = Some(QuotientSpec::local());
    set
}

/// J_{g,n,k} = J_{g−k,n}; only n = 1 is available.
pub fn ideal_component(g: u32, n: usize, k: u32, sign: Sign) -> Result<GeneratorSet<Rational>> {
    if k > g {
        return Err(invalid(format!("k = {k} exceeds g = {g}")));
    }
    if n != 1 {
        return Err(invalid("ideal_component is available for n = 1 only"));
    }
    Ok(jgen_n1(g - k, sign))
}
