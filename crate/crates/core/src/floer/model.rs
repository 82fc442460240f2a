//! Finite-dimensional models of ℚ[ω,β,γ,δ]/J for inhomogeneous J.
//!
//! Rows m·j (j a generator, m a canonical monomial) are reduced into
//! canonical form and echelonized with columns ordered by degree, then
//! lexicographically, both descending. The non-pivot columns give a
//! candidate monomial basis B. The candidate is accepted only when
//!
//! * the three top weight levels below the cutoff carry no basis element,
//!   so every product x·b with b ∈ B is still inside the truncated system;
//! * B is closed under division by variables;
//! * the multiplication matrices commute, satisfy the relations of the
//!   ambient quotient, and kill every generator.
//!
//! Under those conditions B spans ℚ[...]/J and the matrices define a cyclic
//! module of dimension |B| annihilated by J, so |B| is the exact dimension.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseEchelon};
use crate::poly::{Monomial, QPoly, Rational, RingDescriptor, Var};
use crate::quotient::{canonical_rep, QuotientSpec};
use crate::relations::GeneratorSet;

/// Variables with a multiplication operator, in slot order.
pub fn model_vars(n: usize) -> Vec<Var> {
    let mut v = vec![Var::Main];
    v.extend((1..=n).map(Var::Delta));
    v.push(Var::Beta);
    v.push(Var::Gamma);
    v
}

fn var_weight(v: Var) -> u32 {
    match v {
        Var::Beta => 2,
        Var::Gamma => 3,
        _ => 1,
    }
}

#[derive(Clone, Debug)]
pub struct QuotientModel {
    pub label: String,
    pub ring: RingDescriptor,
    pub spec: QuotientSpec<Rational>,
    pub gens: Vec<(String, QPoly)>,
    /// Ascending by (degree, lex).
    pub basis: Vec<Monomial>,
    /// Weight at which the truncated system was certified.
    pub cutoff_weight: u32,
    index: HashMap<Monomial, usize>,
    ops: Vec<Matrix>,
}

/// Options for [`QuotientModel::build`].
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Expected per-degree dims of the associated graded quotient.
    pub expected_graded: Option<Vec<u64>>,
    /// First cutoff weight to try.
    pub start_weight: Option<u32>,
    /// Extra weights to try before giving up.
    pub max_extra: u32,
}

impl QuotientModel {
    pub fn build(
        label: impl Into<String>,
        gens: Vec<(String, QPoly)>,
        spec: QuotientSpec<Rational>,
        opts: &BuildOptions,
    ) -> Result<Self> {
        let label = label.into();
        let Some((_, first)) = gens.first() else {
            return Err(Error::InvalidArgument("no generators".into()));
        };
        let ring = first.ring().with_coord(crate::poly::Coord::Omega);
        let ring = RingDescriptor { has_epsilon: false, ..ring };
        let mut reduced = Vec::new();
        for (name, g) in &gens {
            if g.ring().n != ring.n || g.ring().has_epsilon {
                return Err(Error::RingMismatch(format!("generator {name} is in another ring")));
            }
            reduced.push((name.clone(), canonical_rep(g, &spec)));
        }
        let vars: Vec<Var> = model_vars(ring.n)
            .into_iter()
            .filter(|v| !(matches!(v, Var::Gamma) && spec.gamma_truncation == Some(1)))
            .filter(|v| !(matches!(v, Var::Beta) && spec.beta_zero))
            .collect();
        let step = vars.iter().map(|v| var_weight(*v)).max().unwrap_or(1);
        let top_gen = reduced
            .iter()
            .filter_map(|(_, g)| g.degree())
            .max()
            .unwrap_or(0)
            / 2;
        let expected_top = opts
            .expected_graded
            .as_ref()
            .and_then(|e| e.iter().rposition(|&x| x != 0))
            .map(|d| (d as u32).div_ceil(2))
            .unwrap_or(0);
        let start = opts
            .start_weight
            .unwrap_or_else(|| expected_top.max(top_gen) + step);
        let mut last_err = None;
        for w in start..=start + opts.max_extra.max(6) {
            match Self::try_build(&label, &reduced, &spec, ring, &vars, step, w) {
                Ok(model) => {
                    if let Some(expected) = &opts.expected_graded {
                        let counts = model.graded_counts();
                        let len = counts.len().max(expected.len());
                        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
                        let counts64: Vec<u64> = counts.iter().map(|&c| c as u64).collect();
                        if (0..len).any(|i| get(&counts64, i) != get(expected, i)) {
                            return Err(Error::NotADeformation(format!(
                                "graded basis counts {counts64:?} differ from {expected:?}"
                            )));
                        }
                    }
                    return Ok(model);
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| Error::Verification("model certification failed".into())))
    }

    fn try_build(
        label: &str,
        gens: &[(String, QPoly)],
        spec: &QuotientSpec<Rational>,
        ring: RingDescriptor,
        vars: &[Var],
        step: u32,
        cutoff: u32,
    ) -> Result<Self> {
        // columns: weight descending, lex descending
        let mut cols: Vec<Monomial> = Vec::new();
        for w in (0..=cutoff).rev() {
            cols.extend(spec.monomials_of_weight(&ring, w));
        }
        let col_index: HashMap<Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut ech = SparseEchelon::new(cols.len());
        let to_entries = |p: &QPoly| -> Vec<(usize, Rational)> {
            p.terms().map(|(m, c)| (col_index[m], c.clone())).collect()
        };
        'outer: for (_, g) in gens {
            let Some(deg) = g.degree() else { continue };
            let wg = deg / 2;
            if wg > cutoff {
                continue;
            }
            for w in 0..=cutoff - wg {
                for m in spec.monomials_of_weight(&ring, w) {
                    if ech.is_full() {
                        break 'outer;
                    }
                    let prod = canonical_rep(&g.mul_monomial(&m), spec);
                    ech.insert_sparse(&to_entries(&prod));
                }
            }
        }

        let mut basis: Vec<Monomial> = cols
            .iter()
            .enumerate()
            .filter(|(i, _)| !ech.has_pivot(*i))
            .map(|(_, m)| m.clone())
            .collect();
        basis.reverse();
        if let Some(top) = basis.last() {
            if top.weight() + step > cutoff {
                return Err(Error::Verification(format!(
                    "basis reaches weight {} with cutoff {cutoff}",
                    top.weight()
                )));
            }
        }
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

        // order ideal
        for b in &basis {
            for v in vars {
                if b.exp(*v) > 0 {
                    let mut q = b.clone();
                    q.set(*v, b.exp(*v) - 1);
                    if !index.contains_key(&q) {
                        return Err(Error::Verification(format!("basis not closed under division at {q:?}")));
                    }
                }
            }
        }

        let dim = basis.len();
        let all_vars = model_vars(ring.n);
        let mut ops = Vec::with_capacity(all_vars.len());
        for v in &all_vars {
            let mut mat = Matrix::zeros(dim, dim);
            if vars.contains(v) {
                let x = QPoly::var(ring, *v);
                for (j, b) in basis.iter().enumerate() {
                    let prod = canonical_rep(&x.mul_monomial(b), spec);
                    let mut dense = vec![Rational::zero(); cols.len()];
                    for (m, c) in prod.terms() {
                        dense[col_index[m]] += c;
                    }
                    ech.reduce_dense(&mut dense);
                    for (ci, val) in dense.into_iter().enumerate() {
                        if !val.is_zero() {
                            mat.set(index[&cols[ci]], j, val);
                        }
                    }
                }
            }
            ops.push(mat);
        }

        let model = QuotientModel {
            label: label.to_string(),
            ring,
            spec: spec.clone(),
            gens: gens.to_vec(),
            basis,
            cutoff_weight: cutoff,
            index,
            ops,
        };
        model.certify()?;
        Ok(model)
    }

    fn certify(&self) -> Result<()> {
        let dim = self.dim();
        if dim == 0 {
            return Ok(());
        }
        for i in 0..self.ops.len() {
            for j in i + 1..self.ops.len() {
                if !self.ops[i].commutes_with(&self.ops[j]) {
                    return Err(Error::Verification("multiplication operators do not commute".into()));
                }
            }
        }
        let id = Matrix::identity(dim);
        let beta = self.op(Var::Beta);
        let c_id = id.scale(&self.spec.delta_square);
        for i in 1..=self.ring.n {
            let d = self.op(Var::Delta(i));
            if d.mul(d) != c_id.sub(beta) {
                return Err(Error::Verification(format!("delta{i}^2 relation fails")));
            }
        }
        if let Some(g) = self.spec.gamma_truncation {
            if !self.op(Var::Gamma).pow(g as usize).is_zero() {
                return Err(Error::Verification("gamma truncation fails".into()));
            }
        }
        if self.spec.beta_zero && !beta.is_zero() {
            return Err(Error::Verification("beta is not zero".into()));
        }
        for (name, g) in &self.gens {
            if self.normal_form(g)?.iter().any(|x| !x.is_zero()) {
                return Err(Error::Verification(format!("generator {name} does not vanish")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn op(&self, v: Var) -> &Matrix {
        let slot = match v {
            Var::Main => 0,
            Var::Delta(i) => i,
            Var::Beta => self.ring.n + 1,
            Var::Gamma => self.ring.n + 2,
            Var::Epsilon => panic!("no epsilon operator"),
        };
        &self.ops[slot]
    }

    /// Multiplication by α = ω − (δ_1+…+δ_n)/2.
    pub fn alpha_op(&self) -> Matrix {
        let mut sum = Matrix::zeros(self.dim(), self.dim());
        for i in 1..=self.ring.n {
            sum = sum.add(self.op(Var::Delta(i)));
        }
        self.op(Var::Main).sub(&sum.scale(&crate::poly::frac(1, 2)))
    }

    /// Basis counts per degree (index = degree).
    pub fn graded_counts(&self) -> Vec<usize> {
        let top = self.basis.last().map(|m| m.degree()).unwrap_or(0) as usize;
        let mut counts = vec![0; top + 1];
        for b in &self.basis {
            counts[b.degree() as usize] += 1;
        }
        if self.basis.is_empty() {
            counts.clear();
        }
        counts
    }

    /// Coordinates of f over the basis.
    pub fn normal_form(&self, f: &QPoly) -> Result<Vec<Rational>> {
        let f = f.to_omega();
        if f.ring().n != self.ring.n {
            return Err(Error::RingMismatch("polynomial and model have different n".into()));
        }
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        if dim == 0 {
            return Ok(out);
        }
        let rep = canonical_rep(&f, &self.spec);
        let one = Monomial::one(self.ring.n);
        let mut memo: HashMap<Monomial, Vec<Rational>> = HashMap::new();
        let mut unit = vec![Rational::zero(); dim];
        unit[self.index[&one]] = Rational::one();
        memo.insert(one, unit);
        let vars = model_vars(self.ring.n);
        for (m, c) in rep.terms() {
            let v = self.monomial_vector(m, &vars, &mut memo);
            for (o, x) in out.iter_mut().zip(v.iter()) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }

    fn monomial_vector(
        &self,
        m: &Monomial,
        vars: &[Var],
        memo: &mut HashMap<Monomial, Vec<Rational>>,
    ) -> Vec<Rational> {
        if let Some(v) = memo.get(m) {
            return v.clone();
        }
        if let Some(&i) = self.index.get(m) {
            let mut v = vec![Rational::zero(); self.dim()];
            v[i] = Rational::one();
            memo.insert(m.clone(), v.clone());
            return v;
        }
        let var = *vars.iter().find(|v| m.exp(**v) > 0).expect("non-unit monomial");
        let mut q = m.clone();
        q.set(var, m.exp(var) - 1);
        let inner = self.monomial_vector(&q, vars, memo);
        let v = self.op(var).mul_vec(&inner);
        memo.insert(m.clone(), v.clone());
        v
    }

    pub fn membership(&self, f: &QPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.iter().all(Zero::is_zero))
    }

    /// Canonical polynomial with the given coordinates.
    pub fn element(&self, coords: &[Rational]) -> QPoly {
        QPoly::from_terms(
            self.ring,
            self.basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    /// Matrix of multiplication by f.
    pub fn mult_matrix(&self, f: &QPoly) -> Result<Matrix> {
        let mut cols = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let prod = f.to_omega().mul_monomial(b);
            cols.push(self.normal_form(&prod)?);
        }
        Ok(Matrix::from_columns(self.dim(), &cols))
    }
}

/// Graded quotient dims of `gens` until three consecutive even degrees vanish.
pub fn graded_quotient_profile(
    gens: &[QPoly],
    context: &QuotientSpec<Rational>,
    limit: u32,
) -> Result<Vec<u64>> {
    let mut out: Vec<u64> = Vec::new();
    let mut zeros = 0;
    let mut d = 0;
    while zeros < 3 {
        if d > limit {
            return Err(Error::Verification(format!(
                "graded quotient still nonzero at degree {limit}"
            )));
        }
        let dims = super::hilbert::graded_dims(gens, Some(context), d)?;
        let q = dims[d as usize].quotient() as u64;
        out.push(q);
        out.push(0);
        zeros = if q == 0 { zeros + 1 } else { 0 };
        d += 2;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// Builds the model of J, using the graded ideal I of leading terms for
/// the containment check and the expected graded basis counts.
///
/// The ambient ring is J's context with I's γ-truncation added, so callers
/// should know γ^G ∈ J independently (see the γ-power witness).
pub fn build_quotient_model(
    j: &GeneratorSet<Rational>,
    i: &GeneratorSet<Rational>,
) -> Result<QuotientModel> {
    let ictx = i
        .quotient_context
        .clone()
        .ok_or_else(|| Error::InvalidArgument("leading ideal needs a quotient context".into()))?;
    let jctx = j.quotient_context.clone().unwrap_or_else(QuotientSpec::r1);
    let igens: Vec<QPoly> = i.polys().cloned().collect();
    for (name, f) in &j.gens {
        let lead = f.leading_order()?;
        if !super::hilbert::graded_membership(&lead, &igens, Some(&ictx))? {
            return Err(Error::NotADeformation(format!(
                "leading term of {name} is not in I"
            )));
        }
    }
    let profile = graded_quotient_profile(&igens, &ictx, 200)?;
    let spec = QuotientSpec::new(ictx.gamma_truncation, jctx.delta_square.clone(), jctx.beta_zero)?;
    let opts = BuildOptions { expected_graded: Some(profile), ..Default::default() };
    QuotientModel::build(j.label.clone(), j.gens.clone(), spec, &opts)
}
