//! Sparse graded polynomials in α (or ω), β, γ, δ_1..δ_n and ε.
//!
//! Degrees: α, ω, δ_i and ε have degree 2, β degree 4, γ degree 6. The
//! relation ε² = 1 is applied on multiplication.

mod coeff;
mod json;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

pub use coeff::{
    bit_size, frac, parse_rational, pow_rational, rat, rational_to_string, Coeff, CoeffKind,
    LaurentU, Rational,
};
pub use json::PolyJson;
pub use ops::{complement, even_subsets, subsets};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Alpha,
    Omega,
}

/// Shape of the ambient ring: number of δ variables, which first variable
/// is in use and whether ε is adjoined. `n = 0` is the δ-free ring Q[α,β,γ].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub n: usize,
    pub coord: Coord,
    pub has_epsilon: bool,
}

impl RingDescriptor {
    pub fn new(n: usize, coord: Coord) -> Result<Self> {
        if n.is_multiple_of(2) && n != 0 {
            return Err(invalid(format!("n must be odd, got {n}")));
        }
        Ok(RingDescriptor {
            n,
            coord,
            has_epsilon: false,
        })
    }

    pub fn alpha(n: usize) -> Self {
        Self::new(n, Coord::Alpha).expect("odd n")
    }

    pub fn omega(n: usize) -> Self {
        Self::new(n, Coord::Omega).expect("odd n")
    }

    pub fn with_epsilon(mut self) -> Self {
        self.has_epsilon = true;
        self
    }

    pub fn with_coord(mut self, coord: Coord) -> Self {
        self.coord = coord;
        self
    }

    /// (n-1)/2.
    pub fn m(&self) -> i64 {
        (self.n as i64 - 1) / 2
    }

    /// Number of stored exponents: main, δ_1..δ_n, β, γ, ε.
    pub fn nvars(&self) -> usize {
        self.n + 4
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut v = vec![match self.coord {
            Coord::Alpha => "alpha".to_string(),
            Coord::Omega => "omega".to_string(),
        }];
        v.push("beta".into());
        v.push("gamma".into());
        for i in 1..=self.n {
            v.push(format!("delta{i}"));
        }
        if self.has_epsilon {
            v.push("epsilon".into());
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Main,
    Beta,
    Gamma,
    /// 1-based index.
    Delta(usize),
    Epsilon,
}

/// Exponent vector laid out as [main, δ_1..δ_n, β, γ, ε]; the derived order
/// is therefore lexicographic on (ω, δ_1, …, δ_n, β, γ, ε).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n + 4],
        }
    }

    pub fn from_parts(a: u32, b: u32, c: u32, d: &[u32], e: u32) -> Self {
        let mut exps = Vec::with_capacity(d.len() + 4);
        exps.push(a);
        exps.extend_from_slice(d);
        exps.push(b);
        exps.push(c);
        exps.push(e % 2);
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len() - 4
    }
    pub fn a(&self) -> u32 {
        self.exps[0]
    }
    pub fn b(&self) -> u32 {
        self.exps[self.n() + 1]
    }
    pub fn c(&self) -> u32 {
        self.exps[self.n() + 2]
    }
    pub fn e(&self) -> u32 {
        self.exps[self.n() + 3]
    }
    /// Exponent of δ_i, 1-based.
    pub fn d(&self, i: usize) -> u32 {
        self.exps[i]
    }
    pub fn deltas(&self) -> &[u32] {
        &self.exps[1..=self.n()]
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps[self.slot(v)]
    }

    pub fn set(&mut self, v: Var, value: u32) {
        let s = self.slot(v);
        self.exps[s] = if v == Var::Epsilon { value % 2 } else { value };
    }

    fn slot(&self, v: Var) -> usize {
        match v {
            Var::Main => 0,
            Var::Delta(i) => {
                assert!(i >= 1 && i <= self.n(), "delta index out of range");
                i
            }
            Var::Beta => self.n() + 1,
            Var::Gamma => self.n() + 2,
            Var::Epsilon => self.n() + 3,
        }
    }

    pub fn degree(&self) -> u32 {
        2 * self.weight()
    }

    /// Half the degree.
    pub fn weight(&self) -> u32 {
        self.a() + 2 * self.b() + 3 * self.c() + self.deltas().iter().sum::<u32>() + self.e()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(x, y)| x + y)
            .collect();
        let last = exps.len() - 1;
        exps[last] %= 2;
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(x, y)| x <= y)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Same ordering as JSON "vars": main, β, γ, δ_1..δ_n, then ε if present.
    pub fn json_exps(&self, has_epsilon: bool) -> Vec<u32> {
        let n = self.n();
        let mut v = vec![self.a(), self.b(), self.c()];
        v.extend_from_slice(self.deltas());
        if has_epsilon {
            v.push(self.exps[n + 3]);
        }
        v
    }

    /// The set of δ indices (1-based) with odd exponent.
    pub fn delta_support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.d(i) % 2 == 1).collect()
    }
}

/// All monomials of the given weight (half-degree) with exponents obeying
/// the optional caps. Used for graded linear algebra.
pub fn monomials_of_weight(
    ring: &RingDescriptor,
    weight: u32,
    delta_cap: Option<u32>,
    gamma_cap: Option<u32>,
    beta_allowed: bool,
) -> Vec<Monomial> {
    let n = ring.n;
    let mut out = Vec::new();
    let max_c = gamma_cap.map(|g| g.saturating_sub(1)).unwrap_or(u32::MAX);
    let mut c = 0;
    while 3 * c <= weight && c <= max_c {
        let mut b = 0;
        while 3 * c + 2 * b <= weight {
            if b > 0 && !beta_allowed {
                break;
            }
            let rest = weight - 3 * c - 2 * b;
            // distribute `rest` between main and the δ's
            let mut ds = vec![0u32; n];
            distribute(rest, 0, &mut ds, delta_cap, &mut |ds, used| {
                out.push(Monomial::from_parts(rest - used, b, c, ds, 0));
            });
            b += 1;
        }
        c += 1;
    }
    out.sort();
    out.reverse();
    out
}

fn distribute(
    budget: u32,
    idx: usize,
    ds: &mut Vec<u32>,
    cap: Option<u32>,
    emit: &mut dyn FnMut(&[u32], u32),
) {
    if idx == ds.len() {
        let used = ds.iter().sum();
        emit(ds, used);
        return;
    }
    let used_so_far: u32 = ds[..idx].iter().sum();
    let room = budget - used_so_far;
    let top = cap.map(|c| c.min(room)).unwrap_or(room);
    for v in 0..=top {
        ds[idx] = v;
        distribute(budget, idx + 1, ds, cap, emit);
    }
    ds[idx] = 0;
}

#[derive(Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    ring: RingDescriptor,
    terms: BTreeMap<Monomial, C>,
}

pub type QPoly = Poly<Rational>;
pub type LPoly = Poly<LaurentU>;

impl<C: Coeff> Poly<C> {
    pub fn zero(ring: RingDescriptor) -> Self {
        Poly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: RingDescriptor, c: C) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.n), c);
        p
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn from_int(ring: RingDescriptor, k: i64) -> Self {
        Self::constant(ring, C::from_int(k))
    }

    pub fn from_rational(ring: RingDescriptor, r: Rational) -> Self {
        Self::constant(ring, C::from_rational(r))
    }

    pub fn var(ring: RingDescriptor, v: Var) -> Self {
        if let Var::Delta(i) = v {
            assert!(i >= 1 && i <= ring.n, "delta index out of range");
        }
        if v == Var::Epsilon {
            assert!(ring.has_epsilon, "ring has no epsilon");
        }
        let mut m = Monomial::one(ring.n);
        m.set(v, 1);
        Self::term(ring, m, C::one())
    }

    pub fn term(ring: RingDescriptor, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: RingDescriptor, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn coeff_kind(&self) -> CoeffKind {
        C::KIND
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.n(), self.ring.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(
            self.ring, other.ring,
            "polynomials from different rings combined"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = Self::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))),
        )
    }

    pub fn scale_coeff(&self, k: &C) -> Self {
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), c.mul(k))),
        )
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Self::from_terms(
            self.ring,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn leading_order(&self) -> Result<Self> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_component(d))
    }

    /// Lexicographically largest monomial.
    pub fn highest_monomial(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Poly<D>> {
        let mut out = Poly::zero(self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Same polynomial viewed in a ring with a different coordinate tag or
    /// epsilon flag; exponents are kept as-is.
    pub(crate) fn retag(&self, ring: RingDescriptor) -> Self {
        assert_eq!(ring.n, self.ring.n);
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            if !ring.has_epsilon {
                assert_eq!(m.e(), 0, "dropping epsilon from a term that uses it");
            }
            m.set(Var::Epsilon, m.e());
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn with_epsilon(&self) -> Self {
        self.retag(self.ring.with_epsilon())
    }

    /// Ring homomorphism sending each variable to the given image; `images`
    /// is indexed like the internal exponent layout.
    pub fn substitute(&self, target: RingDescriptor, images: &[Poly<C>]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Poly<C>>> = images
            .iter()
            .map(|img| vec![Poly::one(target), img.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for (slot, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[slot].len() <= e as usize {
                    let next = powers[slot].last().unwrap().mul(&images[slot]);
                    powers[slot].push(next);
                }
                acc = acc.mul(&powers[slot][e as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Value of `Var` as a polynomial in this ring.
    pub fn var_of(&self, v: Var) -> Self {
        Self::var(self.ring, v)
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = display_names(&self.ring);
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = format_monomial(m, &names);
            let coeff = c.to_string();
            let is_laurent = C::KIND == CoeffKind::LaurentU;
            let (neg, mag) = if !is_laurent && coeff.starts_with('-') {
                (true, coeff[1..].to_string())
            } else {
                (false, coeff)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = if is_laurent && mag.contains(' ') {
                format!("({mag})")
            } else {
                mag
            };
            match (mono.is_empty(), mag.as_str()) {
                (true, _) => write!(f, "{mag}")?,
                (false, "1") => write!(f, "{mono}")?,
                (false, _) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn display_names(ring: &RingDescriptor) -> Vec<String> {
    let mut names = vec![match ring.coord {
        Coord::Alpha => "alpha".to_string(),
        Coord::Omega => "omega".to_string(),
    }];
    for i in 1..=ring.n {
        names.push(if ring.n == 1 {
            "delta".into()
        } else {
            format!("delta{i}")
        });
    }
    names.push("beta".into());
    names.push("gamma".into());
    names.push("epsilon".into());
    names
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, name)| {
            if *e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<C: Coeff> std::ops::$tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                Poly::$inner(self, rhs)
            }
        }
        impl<C: Coeff> std::ops::$tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                Poly::$inner(&self, &rhs)
            }
        }
        impl<C: Coeff> std::ops::$tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                Poly::$inner(&self, rhs)
            }
        }
        impl<C: Coeff> std::ops::$tr<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                Poly::$inner(self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);

impl<C: Coeff> std::ops::Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(&self)
    }
}

impl<C: Coeff> std::ops::Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests;
