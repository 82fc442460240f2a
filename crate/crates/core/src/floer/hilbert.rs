//! Graded dimensions of homogeneous ideals, compared with closed formulas.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Result};
use crate::linalg::SparseEchelon;
use crate::poly::{monomials_of_weight, Monomial, QPoly, Rational, RingDescriptor};
use crate::quotient::{canonical_rep, QuotientSpec};
use crate::relations::{igen, kprime_gen, Parity};
use crate::series::{expand_rational_fn, poincare_gn, poincare_k, poincare_total};

/// Dimensions in one degree: the ambient space and the ideal inside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub degree: u32,
    pub ambient: usize,
    pub ideal: usize,
}

impl GradedDims {
    pub fn quotient(&self) -> usize {
        self.ambient - self.ideal
    }
}

/// Monomials of one weight in the ambient ring, optionally reduced by a
/// graded quotient context.
pub fn ambient_monomials(
    ring: &RingDescriptor,
    context: Option<&QuotientSpec<Rational>>,
    weight: u32,
) -> Vec<Monomial> {
    match context {
        Some(spec) => spec.monomials_of_weight(ring, weight),
        None => monomials_of_weight(ring, weight, None, None, true),
    }
}

/// Per-degree dims of the ideal generated by homogeneous `gens`, degrees
/// 0..=max_degree. With a context, everything happens in that graded
/// quotient; generators must already lie in the ω-coordinate ring.
fn prepare_gens(
    gens: &[QPoly],
    context: Option<&QuotientSpec<Rational>>,
) -> Result<(RingDescriptor, Vec<(u32, QPoly)>)> {
    let Some(first) = gens.first() else {
        return Err(invalid("no generators"));
    };
    if let Some(spec) = context {
        if !spec.is_graded() {
            return Err(invalid("graded dims need a graded quotient context"));
        }
    }
    let ring = *first.to_omega().ring();
    let mut reduced = Vec::new();
    for g in gens {
        let g = g.to_omega();
        if g.ring().n != ring.n {
            return Err(invalid("generators live in different rings"));
        }
        let g = reduce_in(&g, context);
        if g.is_zero() {
            continue;
        }
        if !g.is_homogeneous() {
            return Err(invalid("inhomogeneous generator in graded mode"));
        }
        let w = g.degree().unwrap() / 2;
        reduced.push((w, g));
    }
    Ok((ring, reduced))
}

fn reduce_in(f: &QPoly, context: Option<&QuotientSpec<Rational>>) -> QPoly {
    match context {
        Some(spec) => canonical_rep(f, spec),
        None => f.clone(),
    }
}

struct WeightEchelon {
    index: HashMap<Monomial, usize>,
    ech: SparseEchelon,
}

fn weight_echelon(
    ring: &RingDescriptor,
    reduced: &[(u32, QPoly)],
    context: Option<&QuotientSpec<Rational>>,
    w: u32,
) -> WeightEchelon {
    let cols = ambient_monomials(ring, context, w);
    let index: HashMap<Monomial, usize> = cols.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = SparseEchelon::new(index.len());
    'gens: for (wg, g) in reduced {
        if *wg > w {
            continue;
        }
        for mult in ambient_monomials(ring, context, w - wg) {
            if ech.is_full() {
                break 'gens;
            }
            let prod = reduce_in(&g.mul_monomial(&mult), context);
            let entries: Vec<(usize, Rational)> = prod
                .terms()
                .map(|(m, c)| (index[m], c.clone()))
                .collect();
            ech.insert_sparse(&entries);
        }
    }
    WeightEchelon { index, ech }
}

pub fn graded_dims(
    gens: &[QPoly],
    context: Option<&QuotientSpec<Rational>>,
    max_degree: u32,
) -> Result<Vec<GradedDims>> {
    let (ring, reduced) = prepare_gens(gens, context)?;
    let mut out = Vec::with_capacity(max_degree as usize + 1);
    for d in 0..=max_degree {
        if d % 2 == 1 {
            out.push(GradedDims { degree: d, ambient: 0, ideal: 0 });
            continue;
        }
        let we = weight_echelon(&ring, &reduced, context, d / 2);
        out.push(GradedDims { degree: d, ambient: we.index.len(), ideal: we.ech.rank() });
    }
    Ok(out)
}

/// Whether the homogeneous f lies in the graded ideal generated by `gens`.
pub fn graded_membership(
    f: &QPoly,
    gens: &[QPoly],
    context: Option<&QuotientSpec<Rational>>,
) -> Result<bool> {
    let (ring, reduced) = prepare_gens(gens, context)?;
    let f = reduce_in(&f.to_omega(), context);
    if f.is_zero() {
        return Ok(true);
    }
    if f.ring().n != ring.n {
        return Err(invalid("polynomial and generators live in different rings"));
    }
    if !f.is_homogeneous() {
        return Err(invalid("membership test needs a homogeneous polynomial"));
    }
    let we = weight_echelon(&ring, &reduced, context, f.degree().unwrap() / 2);
    let mut dense = vec![Rational::zero(); we.index.len()];
    for (m, c) in f.terms() {
        dense[we.index[m]] += c;
    }
    we.ech.reduce_dense(&mut dense);
    Ok(dense.iter().all(Zero::is_zero))
}

pub fn graded_ideal_dims(
    gens: &[QPoly],
    context: Option<&QuotientSpec<Rational>>,
    max_degree: u32,
) -> Result<Vec<usize>> {
    Ok(graded_dims(gens, context, max_degree)?.iter().map(|d| d.ideal).collect())
}

/// Graded quotient dims of ℚ[α,β,γ,δ]/I_{g,n}^d, computed in the ring
/// where δ_i² = −β and γ^{g+1} = 0 (both relations lie in the ideal).
/// A basis of the degree-d piece of the graded ideal, as polynomials.
pub fn ideal_piece(
    gens: &[QPoly],
    context: Option<&QuotientSpec<Rational>>,
    degree: u32,
) -> Result<Vec<QPoly>> {
    let (ring, reduced) = prepare_gens(gens, context)?;
    if degree % 2 == 1 {
        return Ok(Vec::new());
    }
    let we = weight_echelon(&ring, &reduced, context, degree / 2);
    let mut cols: Vec<Option<Monomial>> = vec![None; we.index.len()];
    for (m, &i) in &we.index {
        cols[i] = Some(m.clone());
    }
    let mut out = Vec::new();
    for p in we.ech.pivots().collect::<Vec<_>>() {
        let row = we.ech.pivot_row(p).expect("pivot has a row");
        out.push(QPoly::from_terms(
            ring,
            row.iter().map(|(c, x)| (cols[*c].clone().expect("column"), x.clone())),
        ));
    }
    Ok(out)
}

/// Rank of the linear span of the given polynomials.
pub fn span_rank(polys: &[QPoly]) -> usize {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let mut ech = SparseEchelon::new(index.len());
    for p in polys {
        let entries: Vec<(usize, Rational)> = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
        ech.insert_sparse(&entries);
    }
    ech.rank()
}

/// K′^{<i>}_{g,n} ∩ β^i R̄^I: its dimension, and whether it contains the
/// vectors ρ_{g+m−i−|I|, n−2i−2|I|+2j} δ^I β^i for j ≤ min(i, g).
pub fn kprime_fine_structure(g: u32, n: usize, i: u32, label: &[usize]) -> Result<(usize, bool)> {
    let m = (n as u32 - 1) / 2;
    if g + i + label.len() as u32 > m {
        return Err(invalid("need g + i + |I| <= m"));
    }
    let set = kprime_gen(g, n)?;
    let spec = QuotientSpec::rbar();
    let gens: Vec<QPoly> = set.polys().cloned().collect();
    let weight = g + m + i;
    let piece = ideal_piece(&gens, Some(&spec), 2 * weight)?;
    let ring = RingDescriptor::omega(n);
    let mut sorted = label.to_vec();
    sorted.sort_unstable();
    let comp = crate::poly::complement(&sorted, n);
    let slab: Vec<QPoly> = spec
        .monomials_of_weight(&ring, weight)
        .into_iter()
        .filter(|mo| mo.b() >= i && (mo.delta_support() == sorted || mo.delta_support() == comp))
        .map(|mo| QPoly::term(ring, mo, Rational::from_integer(1.into())))
        .collect();
    let both: Vec<QPoly> = piece.iter().chain(slab.iter()).cloned().collect();
    let dim = piece.len() + slab.len() - span_rank(&both);

    let mut delta_i = vec![0u32; n];
    for &x in &sorted {
        delta_i[x - 1] = 1;
    }
    let shift = Monomial::from_parts(0, i, 0, &delta_i, 0);
    let k = (g + m) as i64 - i as i64 - label.len() as i64;
    let mut contains = true;
    for j in 0..=i.min(g) {
        let r = n as i64 - 2 * i as i64 - 2 * label.len() as i64 + 2 * j as i64;
        let rho = crate::relations::rho_proj(k, r as usize, 0)?;
        let v = QPoly::from_terms(
            ring,
            rho.terms().map(|(mo, c)| {
                (Monomial::from_parts(mo.a(), mo.b(), 0, &vec![0; n], 0).mul(&shift), c.clone())
            }),
        );
        let v = canonical_rep(&v, &spec);
        let in_piece = {
            let mut p = piece.clone();
            p.push(v.clone());
            span_rank(&p) == piece.len()
        };
        let in_slab = {
            let mut p = slab.clone();
            p.push(v);
            span_rank(&p) == slab.len()
        };
        contains &= in_piece && in_slab;
    }
    Ok((dim, contains))
}

pub fn igen_quotient_dims(g: u32, n: usize, max_degree: u32) -> Result<Vec<usize>> {
    let set = igen(g, n, Parity::Odd)?;
    let spec = QuotientSpec::new(Some(g + 1), Rational::zero(), false)?;
    let gens: Vec<QPoly> = set.polys().cloned().collect();
    Ok(graded_dims(&gens, Some(&spec), max_degree)?.iter().map(|d| d.quotient()).collect())
}

/// Graded dims of K′_{g,n} inside R̄_n.
pub fn kprime_dims(g: u32, n: usize, max_degree: u32) -> Result<Vec<usize>> {
    let set = kprime_gen(g, n)?;
    let gens: Vec<QPoly> = set.polys().cloned().collect();
    graded_ideal_dims(&gens, Some(&QuotientSpec::rbar()), max_degree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertSource {
    Ptgn,
    Total,
    K,
}

impl HilbertSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            HilbertSource::Ptgn => "ptgn",
            HilbertSource::Total => "total",
            HilbertSource::K => "k",
        }
    }
}

impl std::str::FromStr for HilbertSource {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ptgn" => Ok(HilbertSource::Ptgn),
            "total" => Ok(HilbertSource::Total),
            "k" => Ok(HilbertSource::K),
            _ => Err(invalid(format!("unknown source `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertReport {
    pub g: u32,
    pub n: usize,
    pub source: HilbertSource,
    pub computed: Vec<u64>,
    pub formula: Vec<u64>,
}

impl HilbertReport {
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..self.computed.len()).find(|&d| self.computed[d] != self.formula[d])
    }

    pub fn matches(&self) -> bool {
        self.first_mismatch().is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g,
            "n": self.n,
            "source": self.source.as_str(),
            "degrees": self.computed.iter().zip(&self.formula).enumerate()
                .map(|(d, (c, f))| json!({"d": d, "computed": c, "formula": f}))
                .collect::<Vec<_>>(),
            "match": self.matches(),
            "first_mismatch": self.first_mismatch(),
        })
    }
}

fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| crate::error::Error::Series(format!("negative or huge dimension {v}")))
}

fn formula_coeffs(source: HilbertSource, g: u32, n: usize, max_degree: u32) -> Result<Vec<u64>> {
    let rf = match source {
        HilbertSource::Ptgn => poincare_gn(g, n as u32),
        HilbertSource::Total => poincare_total(g, n as u32),
        HilbertSource::K => poincare_k(g, n as u32),
    };
    expand_rational_fn(&rf, max_degree as usize).iter().map(to_u64).collect()
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// C(2g,k) − C(2g,k−2), the multiplicity of the k-th primitive piece.
pub fn primitive_multiplicity(g: u32, k: u32) -> i64 {
    binom(2 * g as i64, k as i64) - binom(2 * g as i64, k as i64 - 2)
}

/// Computed side of the total series: Σ_k mult_k · t^{3k} · P_t(g−k,n) with
/// each P_t taken from the computed igen quotient.
fn computed_total(g: u32, n: usize, max_degree: u32) -> Result<Vec<u64>> {
    let mut acc = vec![0i64; max_degree as usize + 1];
    for k in 0..=g {
        let mult = primitive_multiplicity(g, k);
        if mult == 0 || 3 * k > max_degree {
            continue;
        }
        let dims = igen_quotient_dims(g - k, n, max_degree - 3 * k)?;
        for (d, v) in dims.iter().enumerate() {
            acc[d + 3 * k as usize] += mult * *v as i64;
        }
    }
    acc.into_iter()
        .map(|v| u64::try_from(v).map_err(|_| crate::error::Error::Series("negative total".into())))
        .collect()
}

pub fn hilbert_compare(g: u32, n: usize, source: HilbertSource, max_degree: u32) -> Result<HilbertReport> {
    if n.is_multiple_of(2) {
        return Err(invalid("n must be odd"));
    }
    let computed: Vec<u64> = match source {
        HilbertSource::Ptgn => igen_quotient_dims(g, n, max_degree)?.into_iter().map(|v| v as u64).collect(),
        HilbertSource::K => kprime_dims(g, n, max_degree)?.into_iter().map(|v| v as u64).collect(),
        HilbertSource::Total => computed_total(g, n, max_degree)?,
    };
    Ok(HilbertReport {
        g,
        n,
        source,
        computed,
        formula: formula_coeffs(source, g, n, max_degree)?,
    })
}

/// Both sides of Σ_k [C(2g,k) − C(2g,k−2)] P_t(g−k,n) t^{3k} = total, from
/// the closed formulas.
pub fn decomposition_identity_check(g: u32, n: usize, max_degree: u32) -> Result<bool> {
    let order = max_degree as usize;
    let mut lhs = vec![BigInt::zero(); order + 1];
    for k in 0..=g {
        let mult = primitive_multiplicity(g, k);
        let shift = 3 * k as usize;
        if mult == 0 || shift > order {
            continue;
        }
        let p = expand_rational_fn(&poincare_gn(g - k, n as u32), order - shift);
        for (d, v) in p.iter().enumerate() {
            lhs[d + shift] += v * mult;
        }
    }
    let rhs = expand_rational_fn(&poincare_total(g, n as u32), order);
    Ok(lhs == rhs)
}

/// Top degree with a nonzero coefficient in the P_t(g,n) expansion.
pub fn ptgn_top_degree(g: u32, n: usize) -> Result<Option<u32>> {
    let bound = 6 * g as usize + 2 * n + 16;
    let coeffs = expand_rational_fn(&poincare_gn(g, n as u32), bound);
    Ok(coeffs.iter().rposition(|c| !c.is_zero()).map(|d| d as u32))
}

pub fn ptgn_coeffs(g: u32, n: usize, max_degree: u32) -> Result<Vec<u64>> {
    formula_coeffs(HilbertSource::Ptgn, g, n, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    #[test]
    fn kprime_fine_structure_small() {
        for n in [3usize, 5] {
            let m = (n as u32 - 1) / 2;
            for g in 0..=m {
                for i in 0..=m - g {
                    for label in crate::quotient::iso_labels(n) {
                        if g + i + label.len() as u32 > m {
                            continue;
                        }
                        let (dim, contains) = kprime_fine_structure(g, n, i, &label).unwrap();
                        assert_eq!(dim as u32, i.min(g) + 1, "g={g} n={n} i={i} I={label:?}");
                        assert!(contains, "g={g} n={n} i={i} I={label:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_alone_in_polynomial_ring() {
        let ring = RingDescriptor::alpha(1);
        let gens = vec![QPoly::var(ring, Var::Gamma)];
        let dims = graded_ideal_dims(&gens, None, 6).unwrap();
        assert_eq!(dims[6], 1);
        assert_eq!(dims[4], 0);
    }

    #[test]
    fn igen_examples() {
        assert_eq!(&igen_quotient_dims(1, 1, 8).unwrap(), &[1, 0, 1, 0, 0, 0, 0, 0, 0]);
        let k = kprime_dims(0, 3, 10).unwrap();
        for i in 0..4 {
            assert_eq!(k[2 * (1 + i)], 4 * (i + 1));
        }
    }

    #[test]
    fn reports_match_formulas() {
        for (g, n, src) in [
            (1, 1, HilbertSource::Ptgn),
            (0, 3, HilbertSource::Total),
            (0, 3, HilbertSource::K),
            (2, 1, HilbertSource::Ptgn),
            (1, 1, HilbertSource::Total),
            (1, 1, HilbertSource::K),
        ] {
            let r = hilbert_compare(g, n, src, 14).unwrap();
            assert!(r.matches(), "{g} {n} {src:?}: {:?} vs {:?}", r.computed, r.formula);
        }
        assert_eq!(hilbert_compare(0, 3, HilbertSource::Total, 6).unwrap().computed, vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn decomposition_identity_small() {
        for g in 0..=2 {
            for n in [1, 3] {
                assert!(decomposition_identity_check(g, n, 40).unwrap());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = hilbert_compare(1, 1, HilbertSource::Ptgn, 4).unwrap();
        let j = r.to_json();
        assert_eq!(j["match"], true);
        assert_eq!(j["degrees"][2]["computed"], 1);
        assert_eq!(j["degrees"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn top_degree_of_ptg1() {
        for g in 1..=4u32 {
            assert_eq!(ptgn_top_degree(g, 1).unwrap(), Some(6 * g - 4));
        }
        assert_eq!(ptgn_top_degree(0, 1).unwrap(), None);
    }

    #[test]
    fn inhomogeneous_generator_is_rejected() {
        let ring = RingDescriptor::omega(1);
        let f = QPoly::var(ring, Var::Main) - QPoly::one(ring);
        assert!(graded_dims(&[f], None, 4).is_err());
    }
}
